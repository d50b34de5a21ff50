use serde::{Deserialize, Serialize};

use super::files::{ResultEntry, SuiteViolation};
use crate::cover::functional_representation;
use crate::deciders::decide;
use crate::error::{Error, Result};
use crate::geometry::{Limits, QVector};
use crate::order::{PreRieszModel, Property};
use crate::zoo::{make_example10, ZooSpec};

/// Implications between the structural properties that hold in every
/// pre-Riesz space.
pub const IMPLICATIONS: [(Property, Property); 5] = [
    (Property::Pervasive, Property::WeaklyPervasive),
    (Property::Pervasive, Property::Fordable),
    (Property::Rdp, Property::WeaklyPervasive),
    (Property::Rdp, Property::PropertyP),
    (Property::PropertyP, Property::WeaklyPervasive),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub model: String,
    pub rays: Vec<QVector>,
    pub results: Vec<ResultEntry>,
}

impl SuiteRow {
    pub fn verdict(&self, p: Property) -> Option<bool> {
        self.results
            .iter()
            .find(|r| r.property == p)
            .map(|r| r.verdict)
    }
}

/// A model separating two properties whose equivalence is not known.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenCandidate {
    pub model: String,
    /// `fordable_not_weakly_pervasive` or `weakly_pervasive_not_P`.
    pub kind: String,
    pub rays: Vec<QVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelError {
    pub model: String,
    pub capacity: bool,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SuiteOutcome {
    pub models: usize,
    pub violations: Vec<SuiteViolation>,
    pub candidates: Vec<OpenCandidate>,
    pub errors: Vec<ModelError>,
}

/// Violated implications among `results`; pairs with a missing side are
/// skipped.
pub fn check_implications(model: &str, results: &[ResultEntry]) -> Vec<SuiteViolation> {
    let find = |p: Property| results.iter().find(|r| r.property == p);
    IMPLICATIONS
        .iter()
        .filter_map(|&(a, b)| {
            let (pa, pb) = (find(a)?, find(b)?);
            (pa.verdict && !pb.verdict).then(|| SuiteViolation {
                model: model.to_string(),
                premise: pa.clone(),
                conclusion: pb.clone(),
            })
        })
        .collect()
}

/// Runs the five structural deciders on one model.
pub fn suite_row(model: &PreRieszModel, limits: &Limits) -> Result<SuiteRow> {
    let rep = functional_representation(model, limits)?;
    let results = Property::STRUCTURAL
        .iter()
        .map(|&p| decide(&rep, p, limits).map(|r| ResultEntry::from_report(r, false)))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteRow {
        model: model.name().to_string(),
        rays: model.cone().rays().to_vec(),
        results,
    })
}

/// Folds per-model rows into violations, open-question candidates and
/// errors.
pub fn summarize(rows: impl IntoIterator<Item = (String, Result<SuiteRow>)>) -> SuiteOutcome {
    let mut out = SuiteOutcome::default();
    for (name, row) in rows {
        out.models += 1;
        let row = match row {
            Ok(r) => r,
            Err(e) => {
                out.errors.push(ModelError {
                    model: name,
                    capacity: e.is_capacity(),
                    message: e.to_string(),
                });
                continue;
            }
        };
        out.violations
            .extend(check_implications(&row.model, &row.results));
        let v = |p| row.verdict(p) == Some(true);
        let mut flag = |kind: &str| {
            out.candidates.push(OpenCandidate {
                model: row.model.clone(),
                kind: kind.to_string(),
                rays: row.rays.clone(),
            })
        };
        if v(Property::Fordable) && !v(Property::WeaklyPervasive) {
            flag("fordable_not_weakly_pervasive");
        }
        if v(Property::WeaklyPervasive) && !v(Property::PropertyP) {
            flag("weakly_pervasive_not_P");
        }
    }
    out
}

pub fn run_implication_suite(models: &[PreRieszModel], limits: &Limits) -> Result<SuiteOutcome> {
    if models.is_empty() {
        return Err(Error::Argument(
            "the implication suite needs at least one model".into(),
        ));
    }
    Ok(summarize(
        models
            .iter()
            .map(|m| (m.name().to_string(), suite_row(m, limits))),
    ))
}

/// Seeded random model specs with `2 ≤ n ≤ max_dim` and
/// `n ≤ rays ≤ max_rays`, coefficients in `[−3, 3]`.
pub fn random_specs(seed: u64, count: usize, max_dim: usize, max_rays: usize) -> Vec<ZooSpec> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=max_dim.max(2));
            let rays = rng.gen_range(n..=max_rays.max(n));
            ZooSpec::Random {
                seed: rng.gen(),
                n,
                rays,
                bound: 3,
            }
        })
        .collect()
}

/// Verdicts of a truncated example10 model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    pub verdicts: Vec<(Property, bool)>,
    pub error: Option<String>,
}

/// Records structural verdicts of the example10 truncations for
/// `2 ≤ n ≤ max_n`, `1 ≤ m ≤ max_m`. Nothing is asserted about them.
pub fn example10_sweep(max_n: usize, max_m: usize, limits: &Limits) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    for n in 2..=max_n {
        for m in 1..=max_m {
            let row = make_example10(n, m).and_then(|model| suite_row(&model, limits));
            rows.push(match row {
                Ok(r) => SweepRow {
                    n,
                    m,
                    verdicts: r.results.iter().map(|e| (e.property, e.verdict)).collect(),
                    error: None,
                },
                Err(e) => SweepRow {
                    n,
                    m,
                    verdicts: Vec::new(),
                    error: Some(e.to_string()),
                },
            });
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo::make_classic;

    #[test]
    fn classic_rows() {
        let limits = Limits::default();
        let out =
            run_implication_suite(&[make_classic("simplicial", 3).unwrap()], &limits).unwrap();
        assert!(out.violations.is_empty() && out.errors.is_empty());
        let row = suite_row(&make_classic("simplicial", 3).unwrap(), &limits).unwrap();
        assert!(row.results.iter().all(|r| r.verdict));

        let four = make_classic("four_ray", 3).unwrap();
        let row = suite_row(&four, &limits).unwrap();
        assert!(row.results.iter().all(|r| !r.verdict));
        assert!(run_implication_suite(&[four], &limits)
            .unwrap()
            .violations
            .is_empty());
        assert!(run_implication_suite(&[], &limits).is_err());
    }

    #[test]
    fn flipped_verdict_is_reported() {
        let limits = Limits::default();
        let mut row = suite_row(&make_classic("four_ray", 3).unwrap(), &limits).unwrap();
        row.results[0].verdict = true;
        let v = check_implications("four_ray", &row.results);
        assert_eq!(v.len(), 2);
        assert_eq!(v[0].premise.property, Property::Pervasive);
        assert_eq!(v[1].conclusion.property, Property::Fordable);
    }

    #[test]
    fn sweep_records_rows() {
        let rows = example10_sweep(3, 2, &Limits::default());
        assert_eq!(rows.len(), 4);
        assert!(rows
            .iter()
            .all(|r| r.error.is_none() && r.verdicts.len() == 5));
    }
}
