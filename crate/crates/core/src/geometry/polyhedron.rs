//! Closed polyhedra `{x : ⟨normal, x⟩ ≥ offset}` and inclusion tests.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::lp::{find_point, lp_solve, LpOutcome, Sense};
use super::rational::{QVector, Rational};
use crate::error::{check_dim, Result};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Inequality {
    pub normal: QVector,
    pub offset: Rational,
}

impl Inequality {
    pub fn new(normal: QVector, offset: Rational) -> Self {
        Inequality { normal, offset }
    }

    pub fn holds_at(&self, x: &QVector) -> bool {
        self.normal.dot(x) >= self.offset
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Emptiness {
    Empty { farkas: QVector },
    Nonempty { point: QVector },
}

/// Inequalities are kept sorted and deduplicated, so two polyhedra built
/// from the same constraint set compare equal structurally.
#[derive(Debug, Clone)]
pub struct Polyhedron {
    dim: usize,
    inequalities: Vec<Inequality>,
    emptiness: OnceLock<Emptiness>,
}

impl PartialEq for Polyhedron {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.inequalities == other.inequalities
    }
}

impl Eq for Polyhedron {}

impl Polyhedron {
    pub fn new(dim: usize, mut inequalities: Vec<Inequality>) -> Result<Self> {
        for ineq in &inequalities {
            check_dim(dim, ineq.normal.dim())?;
        }
        inequalities.sort();
        inequalities.dedup();
        Ok(Polyhedron {
            dim,
            inequalities,
            emptiness: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn inequalities(&self) -> &[Inequality] {
        &self.inequalities
    }

    pub fn contains(&self, x: &QVector) -> bool {
        x.dim() == self.dim && self.inequalities.iter().all(|i| i.holds_at(x))
    }

    /// `{x + t : x ∈ self}`.
    pub fn translate(&self, t: &QVector) -> Polyhedron {
        let ineqs = self
            .inequalities
            .iter()
            .map(|i| Inequality::new(i.normal.clone(), &i.offset + &i.normal.dot(t)))
            .collect();
        Polyhedron::new(self.dim, ineqs).expect("translation keeps dimensions")
    }

    /// Emptiness status, computed once and cached together with its
    /// certificate (a point or Farkas multipliers).
    pub fn emptiness(&self) -> &Emptiness {
        self.emptiness.get_or_init(|| match find_point(self) {
            Ok(point) => Emptiness::Nonempty { point },
            Err(farkas) => Emptiness::Empty { farkas },
        })
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.emptiness(), Emptiness::Empty { .. })
    }

    pub fn intersect(&self, other: &Polyhedron) -> Result<Polyhedron> {
        check_dim(self.dim, other.dim)?;
        let mut ineqs = self.inequalities.clone();
        ineqs.extend(other.inequalities.iter().cloned());
        Polyhedron::new(self.dim, ineqs)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Relation {
    Equal,
    /// `P ⊊ Q`; the witness lies in `Q ∖ P`.
    ProperSubset {
        witness: QVector,
    },
    /// `Q ⊊ P`; the witness lies in `P ∖ Q`.
    ProperSuperset {
        witness: QVector,
    },
    Incomparable {
        in_p_not_q: QVector,
        in_q_not_p: QVector,
    },
}

impl Relation {
    pub fn is_subset(&self) -> bool {
        matches!(self, Relation::Equal | Relation::ProperSubset { .. })
    }
}

/// A point of `outer` violating some inequality of `inner`, or `None` when
/// `outer ⊆ inner`. One LP per inequality of `inner`.
pub fn escape_point(outer: &Polyhedron, inner: &Polyhedron) -> Result<Option<QVector>> {
    check_dim(outer.dim(), inner.dim())?;
    if outer.is_empty() {
        return Ok(None);
    }
    for ineq in inner.inequalities() {
        match lp_solve(&ineq.normal, Sense::Min, outer)? {
            LpOutcome::Optimal { primal, value, .. } => {
                if value < ineq.offset {
                    return Ok(Some(primal));
                }
            }
            LpOutcome::Unbounded { primal, ray } => {
                let at = ineq.normal.dot(&primal);
                let slope = ineq.normal.dot(&ray);
                debug_assert!(slope.is_negative());
                let t = if at < ineq.offset {
                    Rational::zero()
                } else {
                    (&at - &ineq.offset + Rational::one()) / (-slope)
                };
                return Ok(Some(&primal + &ray.scale(&t)));
            }
            LpOutcome::Infeasible { .. } => unreachable!("outer is nonempty"),
        }
    }
    Ok(None)
}

pub fn polyhedron_relation(p: &Polyhedron, q: &Polyhedron) -> Result<Relation> {
    check_dim(p.dim(), q.dim())?;
    if p == q {
        return Ok(Relation::Equal);
    }
    let p_not_q = escape_point(p, q)?;
    let q_not_p = escape_point(q, p)?;
    Ok(match (p_not_q, q_not_p) {
        (None, None) => Relation::Equal,
        (None, Some(witness)) => Relation::ProperSubset { witness },
        (Some(witness), None) => Relation::ProperSuperset { witness },
        (Some(in_p_not_q), Some(in_q_not_p)) => Relation::Incomparable {
            in_p_not_q,
            in_q_not_p,
        },
    })
}
