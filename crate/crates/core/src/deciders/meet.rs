//! Weak pervasiveness, property (P) and the pairwise witness check.
//!
//! For positive `b₁, …, b_k` the support of `i(b₁) ∧ ⋯ ∧ i(b_k)` is the
//! intersection of the supports, and each support is a union of ray
//! supports. Distributing intersections over unions, a failing meet exists
//! iff some nonempty intersection of ray supports contains no ray support.
//! For weak pervasiveness only pairwise intersections are needed, for (P)
//! the full intersection closure.

use super::support::{closure, intersect, is_subset, ray_supports, SupportMember};
use super::{scale_under, solve_support, CheckOutcome};
use crate::cover::FunctionalRepresentation;
use crate::error::{check_dim, Error, Result};
use crate::geometry::{escape_point, Limits, QVector};
use crate::order::{
    measured, upper_set, Certificate, CoveredSupport, DecisionReport, Property, Separator,
    Violation, Witness,
};

/// A candidate meet: its support and the positive elements forming it.
struct Candidate {
    support: Vec<usize>,
    elements: Vec<QVector>,
}

fn meet_support(rep: &FunctionalRepresentation, elements: &[QVector]) -> Vec<usize> {
    elements
        .iter()
        .map(|x| rep.apply(x))
        .reduce(|a, b| a.inf(&b))
        .map(|y| y.support())
        .unwrap_or_default()
}

/// Pairs of named strictly positive elements, in listed order.
fn named_pairs(rep: &FunctionalRepresentation) -> Vec<Candidate> {
    let positive: Vec<&QVector> = rep
        .model()
        .elements()
        .iter()
        .map(|e| &e.coords)
        .filter(|x| !x.is_zero() && rep.model().is_positive(x))
        .collect();
    let mut out = Vec::new();
    for (i, a) in positive.iter().enumerate() {
        for b in &positive[i + 1..] {
            let elements = vec![(*a).clone(), (*b).clone()];
            out.push(Candidate {
                support: meet_support(rep, &elements),
                elements,
            });
        }
    }
    out
}

fn decide_meets(
    rep: &FunctionalRepresentation,
    property: Property,
    family: Vec<Candidate>,
) -> Result<DecisionReport> {
    let (out, stats) = measured(|| -> Result<(bool, Witness, Certificate)> {
        let rays = ray_supports(rep);
        let covering = |t: &[usize]| rays.iter().find(|r| is_subset(&r.support, t));
        let named = named_pairs(rep)
            .into_iter()
            .find(|c| !c.support.is_empty() && covering(&c.support).is_none());
        let mut covered = Vec::new();
        let mut failing: Option<Candidate> = None;
        let mut tested = 0;
        for c in family {
            if c.support.is_empty() {
                continue;
            }
            tested += 1;
            match covering(&c.support) {
                Some(r) => covered.push(CoveredSupport {
                    support: c.support.clone(),
                    ray: r.realizers[0].clone(),
                }),
                None => {
                    if failing.as_ref().is_none_or(|f| c.support < f.support) {
                        failing = Some(c);
                    }
                }
            }
        }
        if named.is_some() && failing.is_none() {
            return Err(Error::Invariant(
                "a named pair fails but no ray intersection does".into(),
            ));
        }
        let Some(chosen) = named.or(failing) else {
            return Ok((
                true,
                Witness::None,
                Certificate::Covered { tested, covered },
            ));
        };
        let farkas = solve_support(rep, &chosen.support)?.err().ok_or_else(|| {
            Error::Invariant(format!(
                "support {:?} contains no ray support yet is feasible",
                chosen.support
            ))
        })?;
        let separator = match chosen.elements.as_slice() {
            [b1, b2] => separator(rep, b1, b2)?,
            _ => None,
        };
        let model = rep.model();
        Ok((
            false,
            Witness::Meet {
                names: chosen
                    .elements
                    .iter()
                    .map(|x| model.name_of(x).map(str::to_string))
                    .collect(),
                images: chosen.elements.iter().map(|x| rep.apply(x)).collect(),
                elements: chosen.elements,
                support: chosen.support.clone(),
                separator,
            },
            Certificate::SupportSystem {
                support: chosen.support,
                farkas,
            },
        ))
    });
    let (verdict, witness, certificate) = out?;
    Ok(DecisionReport {
        property,
        verdict,
        witness,
        certificate,
        stats,
    })
}

pub fn decide_weakly_pervasive(rep: &FunctionalRepresentation) -> Result<DecisionReport> {
    let rays = ray_supports(rep);
    let mut family = Vec::new();
    for (i, a) in rays.iter().enumerate() {
        for b in &rays[i + 1..] {
            family.push(Candidate {
                support: intersect(&a.support, &b.support),
                elements: vec![a.realizers[0].clone(), b.realizers[0].clone()],
            });
        }
    }
    decide_meets(rep, Property::WeaklyPervasive, family)
}

pub fn decide_property_p(
    rep: &FunctionalRepresentation,
    limits: &Limits,
) -> Result<DecisionReport> {
    let rays = ray_supports(rep);
    let concat = |a: &SupportMember, b: &SupportMember| {
        let mut out = a.realizers.clone();
        out.extend(
            b.realizers
                .iter()
                .filter(|r| !a.realizers.contains(r))
                .cloned(),
        );
        out
    };
    let members = closure(&rays, intersect, concat, limits)?;
    let family = members
        .into_iter()
        .map(|m| Candidate {
            support: m.support,
            elements: m.realizers,
        })
        .collect();
    decide_meets(rep, Property::PropertyP, family)
}

/// Looks for `x` with `0 < Fx ≤ Fb₁ ∧ Fb₂`; not applicable when the meet
/// is zero, i.e. `b₁ ⊥ b₂`.
pub fn lemma9_witness_check(
    rep: &FunctionalRepresentation,
    b1: &QVector,
    b2: &QVector,
) -> Result<CheckOutcome> {
    for (name, b) in [("b1", b1), ("b2", b2)] {
        check_dim(rep.dim(), b.dim())?;
        if b.is_zero() || !rep.model().is_positive(b) {
            return Err(Error::Precondition(format!(
                "{name} = {b} is not strictly positive"
            )));
        }
    }
    let meet = rep.apply(b1).inf(&rep.apply(b2));
    let support = meet.support();
    if support.is_empty() {
        return Ok(CheckOutcome::NotApplicable);
    }
    Ok(match solve_support(rep, &support)? {
        Ok(x) => CheckOutcome::Witness {
            x: scale_under(rep, &x, &meet),
        },
        Err(farkas) => CheckOutcome::Failure { support, farkas },
    })
}

/// A point of `{b₁−b₂, b₂−b₁}ᵘ` outside `{b₁+b₂, −b₁−b₂}ᵘ` for positive
/// `b₁, b₂`, preferring named elements, together with a coordinate where
/// it fails to dominate `b₁ + b₂` or `−b₁ − b₂`.
fn separator(
    rep: &FunctionalRepresentation,
    b1: &QVector,
    b2: &QVector,
) -> Result<Option<Separator>> {
    let model = rep.model();
    let sum = b1 + b2;
    let diff = b1 - b2;
    let plus = upper_set(model, &[sum.clone(), -&sum])?;
    let minus = upper_set(model, &[diff.clone(), -&diff])?;
    let named = model
        .elements()
        .iter()
        .find(|e| minus.contains(&e.coords) && !plus.contains(&e.coords))
        .map(|e| e.coords.clone());
    let v = match named {
        Some(v) => v,
        None => match escape_point(minus.region(), plus.region())? {
            Some(v) => v,
            None => return Ok(None),
        },
    };
    let violation = violation(rep, &v, &sum)
        .or_else(|| violation(rep, &v, &-&sum))
        .ok_or_else(|| Error::Invariant(format!("{v} dominates both ±(b₁+b₂)")))?;
    Ok(Some(Separator {
        name: model.name_of(&v).map(str::to_string),
        v,
        violation,
    }))
}

/// First functional where `v` lies below `bound`: ambient coordinates for
/// subspace models, cover rows otherwise.
fn violation(rep: &FunctionalRepresentation, v: &QVector, bound: &QVector) -> Option<Violation> {
    let candidates: Vec<(String, QVector)> = match rep.model().provenance() {
        Some(p) => (0..p.ambient)
            .map(|t| (p.labels[t].clone(), p.evaluation_row(t)))
            .collect(),
        None => rep
            .f()
            .rows()
            .iter()
            .enumerate()
            .map(|(j, f)| (format!("f{}", j + 1), f.clone()))
            .collect(),
    };
    candidates.into_iter().find_map(|(label, functional)| {
        let value = functional.dot(v);
        let b = functional.dot(bound);
        (value < b).then_some(Violation {
            label,
            functional,
            value,
            bound: b,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::functional_representation;
    use crate::geometry::qv;
    use crate::order::{build_model, disjoint, ModelSpec};

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

    #[test]
    fn lattices_pass() {
        for n in 1..=3 {
            let r = rep(n, (0..n).map(|i| QVector::unit(n, i)).collect());
            assert!(decide_weakly_pervasive(&r).unwrap().verdict);
            assert!(decide_property_p(&r, &Limits::default()).unwrap().verdict);
        }
    }

    #[test]
    fn four_ray_fails_pairwise() {
        let r = four_ray();
        let d = decide_weakly_pervasive(&r).unwrap();
        assert!(!d.verdict);
        let Witness::Meet {
            elements,
            support,
            separator,
            ..
        } = &d.witness
        else {
            panic!("{:?}", d.witness);
        };
        assert_eq!(elements, &vec![qv(&[1, 0, 1]), qv(&[0, 1, 1])]);
        assert_eq!(r.apply(&elements[0]).support(), vec![0, 1]);
        assert_eq!(r.apply(&elements[1]).support(), vec![0, 2]);
        assert_eq!(support, &vec![0]);
        let sep = separator.as_ref().unwrap();
        assert!(sep.violation.value < sep.violation.bound);
        assert!(
            !disjoint(r.model(), &elements[0], &elements[1])
                .unwrap()
                .disjoint
        );
        let Certificate::SupportSystem { support, farkas } = &d.certificate else {
            panic!();
        };
        assert!(farkas.refutes(&r.support_system(support)));
        assert!(!decide_property_p(&r, &Limits::default()).unwrap().verdict);
    }

    #[test]
    fn meet_check_examples() {
        let l = rep(2, vec![qv(&[1, 0]), qv(&[0, 1])]);
        match lemma9_witness_check(&l, &qv(&[2, 1]), &qv(&[1, 2])).unwrap() {
            CheckOutcome::Witness { x } => {
                assert!(!x.is_zero() && x.is_nonnegative());
                assert!((&qv(&[1, 1]) - &x).is_nonnegative());
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            lemma9_witness_check(&l, &qv(&[1, 0]), &qv(&[0, 1])).unwrap(),
            CheckOutcome::NotApplicable
        );
        assert!(matches!(
            lemma9_witness_check(&l, &qv(&[1, -1]), &qv(&[0, 1])),
            Err(Error::Precondition(m)) if m.contains("b1")
        ));
        let k = four_ray();
        assert!(lemma9_witness_check(&k, &qv(&[1, 0, 1]), &qv(&[0, 1, 1]))
            .unwrap()
            .is_failure());
    }
}
