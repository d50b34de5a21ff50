//! Decision procedures with witnesses.
//!
//! Every existential question of the form "is there `x > 0` with
//! `i(x) ≤ y`" for a positive cover element `y` depends only on the support
//! `T` of `y`: a solution of the support system
//! `{Fx ≥ 0, (Fx)_j = 0 ∀ j ∉ T, Σ_{j∈T} (Fx)_j ≥ 1}` scales below `y`
//! because `y` is strictly positive on `T`, and conversely. The support
//! system for `T` is feasible exactly when `T` contains the support of some
//! extreme ray, which turns the quantifiers over the space into finite
//! searches.

mod fordable;
mod meet;
mod pervasive;
mod support;

pub use fordable::{decide_directed, decide_fordable, decide_pointed};
pub use meet::{decide_property_p, decide_weakly_pervasive, lemma9_witness_check};
pub use pervasive::{decide_pervasive, theorem5_check, thm7_witness_check};
pub use support::{support_family, SupportFamily, SupportMember};

use serde::{Deserialize, Serialize};

use crate::cover::FunctionalRepresentation;
use crate::error::{Error, Result};
use crate::geometry::{
    lp_solve, FarkasCertificate, Limits, LpOutcome, Polyhedron, QVector, Rational, Sense,
};
use crate::order::{decide_rdp, DecisionReport, Property};

/// Result of a witness check that either produces an element or certifies
/// that none exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckOutcome {
    Witness {
        x: QVector,
    },
    Failure {
        support: Vec<usize>,
        farkas: FarkasCertificate,
    },
    NotApplicable,
}

impl CheckOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, CheckOutcome::Witness { .. })
    }

    pub fn is_failure(&self) -> bool {
        matches!(self, CheckOutcome::Failure { .. })
    }
}

/// Solves the support system for `support`, minimizing `Σ_{j∈T} (Fx)_j`.
pub(crate) fn solve_support(
    rep: &FunctionalRepresentation,
    support: &[usize],
) -> Result<std::result::Result<QVector, FarkasCertificate>> {
    let rows = rep.support_system(support);
    let total = rows.last().expect("total row").normal.clone();
    let region = Polyhedron::new(rep.dim(), rows)?;
    Ok(match lp_solve(&total, Sense::Min, &region)? {
        LpOutcome::Optimal { primal, .. } => Ok(primal),
        LpOutcome::Infeasible { farkas } => {
            Err(FarkasCertificate::from_multipliers(&region, &farkas))
        }
        LpOutcome::Unbounded { .. } => {
            return Err(Error::Invariant(
                "support system objective is bounded".into(),
            ))
        }
    })
}

/// Largest multiple `λx` with `F(λx) ≤ bound` on the support of `Fx`.
pub(crate) fn scale_under(rep: &FunctionalRepresentation, x: &QVector, bound: &QVector) -> QVector {
    let fx = rep.apply(x);
    let lambda = fx
        .iter()
        .zip(bound.iter())
        .filter(|(v, _)| v.is_positive())
        .map(|(v, b)| b / v)
        .reduce(Rational::min)
        .expect("x is nonzero in the cover");
    x.scale(&lambda)
}

/// Runs the decider for `property`.
pub fn decide(
    rep: &FunctionalRepresentation,
    property: Property,
    limits: &Limits,
) -> Result<DecisionReport> {
    match property {
        Property::Pointed => decide_pointed(rep),
        Property::Directed => decide_directed(rep),
        Property::Rdp => decide_rdp(rep.model()),
        Property::Pervasive => decide_pervasive(rep),
        Property::WeaklyPervasive => decide_weakly_pervasive(rep),
        Property::Fordable => decide_fordable(rep),
        Property::PropertyP => decide_property_p(rep, limits),
    }
}
