//! The ordered space `(ℝⁿ, K)`: models, upper-bound sets, comparison,
//! disjointness and the Riesz decomposition property.

mod model;
mod rdp;
mod report;
mod upper;

pub use model::{
    build_model, ConeSource, ModelSpec, NamedElement, PreRieszModel, SubspaceProvenance,
};
pub use rdp::{decide_rdp, interpolation_system};
pub(crate) use report::measured;
pub use report::{
    Certificate, CoveredSupport, DecisionReport, Property, Separator, Stats, Violation, Witness,
};
pub use upper::{compare, disjoint, upper_set, Comparison, Disjointness, UpperSet};
