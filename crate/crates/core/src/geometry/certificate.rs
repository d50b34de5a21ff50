//! Self-contained infeasibility certificates.
//!
//! Raw Farkas vectors index the sorted rows of a [`Polyhedron`]. For reports
//! each used row is stored next to its multiplier, so a checker only needs
//! to confirm that the rows belong to the claimed system.

use serde::{Deserialize, Serialize};

use super::polyhedron::{Inequality, Polyhedron};
use super::rational::{QVector, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FarkasTerm {
    pub normal: QVector,
    pub offset: Rational,
    pub multiplier: Rational,
}

/// Multipliers `yᵢ > 0` on inequalities `⟨aᵢ, x⟩ ≥ bᵢ` with `Σ yᵢaᵢ = 0`
/// and `Σ yᵢbᵢ > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FarkasCertificate {
    pub terms: Vec<FarkasTerm>,
}

impl FarkasCertificate {
    /// Pairs the nonzero entries of `y` with the rows of `region`.
    pub fn from_multipliers(region: &Polyhedron, y: &QVector) -> Self {
        let terms = region
            .inequalities()
            .iter()
            .zip(y.iter())
            .filter(|(_, c)| !c.is_zero())
            .map(|(ineq, c)| FarkasTerm {
                normal: ineq.normal.clone(),
                offset: ineq.offset.clone(),
                multiplier: c.clone(),
            })
            .collect();
        FarkasCertificate { terms }
    }

    /// The arithmetic part of the check.
    pub fn is_contradiction(&self) -> bool {
        let Some(first) = self.terms.first() else {
            return false;
        };
        let mut combo = QVector::zeros(first.normal.dim());
        let mut rhs = Rational::zero();
        for t in &self.terms {
            if !t.multiplier.is_positive() || t.normal.dim() != combo.dim() {
                return false;
            }
            combo = &combo + &t.normal.scale(&t.multiplier);
            rhs += &t.offset * &t.multiplier;
        }
        combo.is_zero() && rhs.is_positive()
    }

    /// Contradiction whose rows all occur in `system`.
    pub fn refutes(&self, system: &[Inequality]) -> bool {
        self.is_contradiction()
            && self.terms.iter().all(|t| {
                system
                    .iter()
                    .any(|i| i.normal == t.normal && i.offset == t.offset)
            })
    }
}
