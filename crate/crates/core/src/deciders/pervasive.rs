//! Pervasiveness and the associated witness checks.
//!
//! The model is pervasive iff every realizable positive support
//! `P = {j : f_j(b) > 0}` has a feasible support system, i.e. contains a
//! ray support. Realizable supports are explored depth first in
//! lexicographic order: a node fixes which of the first rows are positive
//! (`f_j(b) ≥ 1`) and which are not (`f_j(b) ≤ 0`). Branches whose positive
//! rows already contain a ray support are cut, and so are branches whose
//! partial sign system is infeasible. The first failing leaf is therefore
//! the lexicographically smallest failing support.

use super::support::{is_subset, ray_supports, SupportMember};
use super::{scale_under, solve_support, CheckOutcome};
use crate::cover::{positivity_oracle, riesz_element, FunctionalRepresentation, PositivityVerdict};
use crate::error::{check_dim, Error, Result};
use crate::geometry::{lp_solve, Inequality, LpOutcome, Polyhedron, QVector, Rational, Sense};
use crate::order::{
    measured, upper_set, Certificate, CoveredSupport, DecisionReport, Property, Witness,
};

struct Search<'a> {
    rep: &'a FunctionalRepresentation,
    rays: Vec<SupportMember>,
    tested: usize,
    covered: Vec<CoveredSupport>,
}

impl Search<'_> {
    fn covering_ray(&self, positive: &[usize]) -> Option<&QVector> {
        self.rays
            .iter()
            .find(|r| is_subset(&r.support, positive))
            .map(|r| &r.realizers[0])
    }

    /// A point with `f_j(b) ≥ 1` on `positive` and `f_j(b) ≤ 0` on the
    /// other rows below `decided`, minimizing `Σ |f_j(b)|` over those rows.
    fn realize(&mut self, positive: &[usize], decided: usize) -> Result<Option<QVector>> {
        self.tested += 1;
        let f = self.rep.f();
        let mut rows = Vec::new();
        let mut objective = QVector::zeros(f.ncols());
        for j in 0..decided {
            let row = f.row(j);
            if positive.contains(&j) {
                rows.push(Inequality::new(row.clone(), Rational::one()));
                objective = &objective + row;
            } else {
                rows.push(Inequality::new(-row, Rational::zero()));
                objective = &objective - row;
            }
        }
        let region = Polyhedron::new(f.ncols(), rows)?;
        Ok(match lp_solve(&objective, Sense::Min, &region)? {
            LpOutcome::Optimal { primal, .. } => Some(primal),
            LpOutcome::Infeasible { .. } => None,
            LpOutcome::Unbounded { .. } => {
                return Err(Error::Invariant("sign system objective is bounded".into()))
            }
        })
    }

    /// Children of the node `(positive, next)` in lexicographic order;
    /// returns the first failing support with its realizing point.
    fn extend(&mut self, positive: &[usize], next: usize) -> Result<Option<(Vec<usize>, QVector)>> {
        let m = self.rep.m();
        for c in next..m {
            let mut child = positive.to_vec();
            child.push(c);
            if let Some(ray) = self.covering_ray(&child).cloned() {
                self.covered.push(CoveredSupport {
                    support: child,
                    ray,
                });
                continue;
            }
            if self.realize(&child, c + 1)?.is_none() {
                continue;
            }
            if let Some(b) = self.realize(&child, m)? {
                return Ok(Some((child, b)));
            }
            if let Some(found) = self.extend(&child, c + 1)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
}

pub fn decide_pervasive(rep: &FunctionalRepresentation) -> Result<DecisionReport> {
    let (out, stats) = measured(|| pervasive_inner(rep));
    let (verdict, witness, certificate) = out?;
    Ok(DecisionReport {
        property: Property::Pervasive,
        verdict,
        witness,
        certificate,
        stats,
    })
}

fn pervasive_inner(rep: &FunctionalRepresentation) -> Result<(bool, Witness, Certificate)> {
    let rays = ray_supports(rep);
    let model = rep.model();
    let failing = |b: &QVector| {
        let p = rep.apply(b).positive_support();
        !p.is_empty() && !rays.iter().any(|r| is_subset(&r.support, &p))
    };
    let named = model
        .elements()
        .iter()
        .find(|e| failing(&e.coords))
        .map(|e| e.coords.clone());
    let mut search = Search {
        rep,
        rays: rays.clone(),
        tested: 0,
        covered: Vec::new(),
    };
    let found = match named {
        Some(b) => Some((rep.apply(&b).positive_support(), b)),
        None => search.extend(&[], 0)?,
    };
    let Some((support, b)) = found else {
        return Ok((
            true,
            Witness::None,
            Certificate::Covered {
                tested: search.tested,
                covered: search.covered,
            },
        ));
    };
    let farkas = solve_support(rep, &support)?.err().ok_or_else(|| {
        Error::Invariant(format!(
            "support {support:?} contains no ray support yet is feasible"
        ))
    })?;
    Ok((
        false,
        Witness::Element {
            name: model.name_of(&b).map(str::to_string),
            image: rep.apply(&b),
            positive_support: support.clone(),
            b,
        },
        Certificate::SupportSystem { support, farkas },
    ))
}

/// Looks for `x` with `0 < Fx ≤ (Fb)⁺`, or certifies that none exists.
pub fn thm7_witness_check(rep: &FunctionalRepresentation, b: &QVector) -> Result<CheckOutcome> {
    check_dim(rep.dim(), b.dim())?;
    if rep.model().is_positive(&-b) {
        return Err(Error::Precondition(format!("{b} ≤ 0")));
    }
    let fb = rep.apply(b);
    let support = fb.positive_support();
    Ok(match solve_support(rep, &support)? {
        Ok(x) => {
            let bound = fb.sup(&QVector::zeros(fb.dim()));
            CheckOutcome::Witness {
                x: scale_under(rep, &x, &bound),
            }
        }
        Err(farkas) => CheckOutcome::Failure { support, farkas },
    })
}

/// For positive `A, B` with `Aᵘ ⊊ Bᵘ`, looks for `x > 0` with
/// `Aᵘ ⊆ (x + B)ᵘ`, i.e. `Fx ≤ ⋁F(A) − ⋁F(B)`.
pub fn theorem5_check(
    rep: &FunctionalRepresentation,
    a: &[QVector],
    b: &[QVector],
) -> Result<CheckOutcome> {
    let p = positivity_oracle(rep, a, b)?;
    if p.verdict != PositivityVerdict::StrictlyPositive {
        return Err(Error::Precondition(format!(
            "the positivity oracle returned {:?}, not strictly positive",
            p.verdict
        )));
    }
    let g = riesz_element(rep, a, b)?;
    let support = g.support();
    let x = match solve_support(rep, &support)? {
        Ok(x) => scale_under(rep, &x, &g),
        Err(farkas) => return Ok(CheckOutcome::Failure { support, farkas }),
    };
    let shifted: Vec<QVector> = b.iter().map(|y| &x + y).collect();
    let ua = upper_set(rep.model(), a)?;
    let ub = upper_set(rep.model(), &shifted)?;
    if crate::geometry::escape_point(ua.region(), ub.region())?.is_some() {
        return Err(Error::Invariant(format!(
            "Aᵘ is not contained in (x + B)ᵘ for x = {x}"
        )));
    }
    Ok(CheckOutcome::Witness { x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::{functional_representation, normalize_representation};
    use crate::geometry::{qv, sign_cells, Limits, Sign};
    use crate::order::{build_model, ModelSpec, NamedElement};
    use std::collections::BTreeSet;

    fn rep(dim: usize, rays: Vec<QVector>) -> FunctionalRepresentation {
        let m = build_model(&ModelSpec::from_rays(dim, rays)).unwrap();
        functional_representation(&m, &Limits::default()).unwrap()
    }

    fn four_ray() -> FunctionalRepresentation {
        rep(
            3,
            vec![
                qv(&[1, 0, 1]),
                qv(&[-1, 0, 1]),
                qv(&[0, 1, 1]),
                qv(&[0, -1, 1]),
            ],
        )
    }

    /// Brute-force oracle: every strict-or-zero sign cell, support system
    /// feasibility via LP.
    fn oracle(rep: &FunctionalRepresentation) -> bool {
        let positives: BTreeSet<Vec<usize>> = sign_cells(rep.f(), &Limits::default())
            .unwrap()
            .map(|c| {
                c.pattern
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| **s == Sign::Pos)
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        positives
            .iter()
            .filter(|p| !p.is_empty())
            .all(|p| solve_support(rep, p).unwrap().is_ok())
    }

    #[test]
    fn lattice_is_pervasive() {
        for n in 1..=3 {
            let r = rep(n, (0..n).map(|i| QVector::unit(n, i)).collect());
            let d = decide_pervasive(&r).unwrap();
            assert!(d.verdict);
            assert!(oracle(&r));
        }
    }

    #[test]
    fn four_ray_is_not_pervasive() {
        let r = four_ray();
        let d = decide_pervasive(&r).unwrap();
        assert!(!d.verdict);
        assert!(!oracle(&r));
        let Witness::Element {
            b,
            positive_support,
            image,
            ..
        } = &d.witness
        else {
            panic!("{:?}", d.witness);
        };
        assert_eq!(positive_support, &vec![0]);
        assert_eq!(&r.apply(b), image);
        let Certificate::SupportSystem { support, farkas } = &d.certificate else {
            panic!();
        };
        assert!(farkas.refutes(&r.support_system(support)));
    }

    #[test]
    fn named_witness_is_preferred() {
        let mut spec = ModelSpec::from_rays(
            3,
            vec![
                qv(&[1, 0, 1]),
                qv(&[-1, 0, 1]),
                qv(&[0, 1, 1]),
                qv(&[0, -1, 1]),
            ],
        );
        spec.elements = vec![
            NamedElement::new("pos", qv(&[0, 0, 1])),
            NamedElement::new("b", qv(&[1, 1, -1])),
        ];
        let m = build_model(&spec).unwrap();
        let r = functional_representation(&m, &Limits::default()).unwrap();
        let d = decide_pervasive(&r).unwrap();
        let Witness::Element { b, name, image, .. } = &d.witness else {
            panic!();
        };
        assert_eq!(b, &qv(&[1, 1, -1]));
        assert_eq!(name.as_deref(), Some("b"));
        assert_eq!(image, &qv(&[1, -1, -1, -3]));
    }

    #[test]
    fn witness_check_examples() {
        let l = rep(2, vec![qv(&[1, 0]), qv(&[0, 1])]);
        match thm7_witness_check(&l, &qv(&[1, -1])).unwrap() {
            CheckOutcome::Witness { x } => assert_eq!(x, qv(&[1, 0])),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            thm7_witness_check(&l, &qv(&[-1, 0])),
            Err(Error::Precondition(_))
        ));
        let k = four_ray();
        match thm7_witness_check(&k, &qv(&[1, 1, -1])).unwrap() {
            CheckOutcome::Failure { support, farkas } => {
                assert_eq!(support, vec![0]);
                assert!(farkas.refutes(&k.support_system(&support)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn upper_set_check_examples() {
        let l = rep(2, vec![qv(&[1, 0]), qv(&[0, 1])]);
        let out = theorem5_check(&l, &[qv(&[1, 1])], &[qv(&[0, 0])]).unwrap();
        let CheckOutcome::Witness { x } = out else {
            panic!();
        };
        assert!(l.model().is_positive(&x) && !x.is_zero());
        assert!(l.model().is_positive(&(&qv(&[1, 1]) - &x)));
        assert!(matches!(
            theorem5_check(&l, &[qv(&[1, 1])], &[qv(&[1, 1])]),
            Err(Error::Precondition(_))
        ));

        let k = four_ray();
        let z = qv(&[0, 0, 0]);
        let (a, b) = normalize_representation(&k, &[qv(&[1, 1, -1]), z.clone()], &[z]).unwrap();
        assert!(theorem5_check(&k, &a, &b).unwrap().is_failure());
    }
}
