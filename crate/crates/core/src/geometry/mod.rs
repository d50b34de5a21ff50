//! Exact rational polyhedral kernel: LP with certificates, cone duality,
//! extreme rays, polyhedron comparison and sign-cell enumeration.

pub mod cells;
pub mod certificate;
pub mod cone;
pub mod linalg;
pub mod lp;
pub mod polyhedron;
pub mod rational;

pub use cells::{sign_cells, Sign, SignCell, SignCells};
pub use certificate::{FarkasCertificate, FarkasTerm};
pub use cone::{dual_cone, extreme_rays, Cone, Limits};
pub use lp::{check_farkas, find_point, lp_count, lp_solve, LpOutcome, LpStatus, Sense};
pub use polyhedron::{
    escape_point, polyhedron_relation, Emptiness, Inequality, Polyhedron, Relation,
};
pub use rational::{q, qv, QMatrix, QVector, Rational};
