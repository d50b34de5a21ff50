//! Sign patterns of a linear map over `ℝⁿ`.
//!
//! Cells are found by recursive branching on the sign of each row with an
//! LP feasibility check at every node. Strict signs use the homogeneous
//! normalization `±⟨f, b⟩ ≥ 1`, which is exact because every partial system
//! is invariant under positive scaling.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::cone::Limits;
use super::lp::find_point;
use super::polyhedron::{Inequality, Polyhedron};
use super::rational::{QMatrix, QVector, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Pos,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "-")]
    Neg,
}

impl Sign {
    pub fn of(v: &Rational) -> Sign {
        match v.signum() {
            1 => Sign::Pos,
            -1 => Sign::Neg,
            _ => Sign::Zero,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Zero => "0",
            Sign::Neg => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignCell {
    pub pattern: Vec<Sign>,
    /// A point `b` with `sign(F b) = pattern`.
    pub witness: QVector,
}

/// Constraints forcing `sign(⟨rowᵢ, b⟩) = signs[i]` for the decided prefix.
pub(crate) fn sign_constraints(rows: &[QVector], signs: &[Sign]) -> Vec<Inequality> {
    let mut out = Vec::with_capacity(signs.len() + 1);
    for (f, s) in rows.iter().zip(signs) {
        match s {
            Sign::Pos => out.push(Inequality::new(f.clone(), Rational::one())),
            Sign::Neg => out.push(Inequality::new(-f, Rational::one())),
            Sign::Zero => {
                out.push(Inequality::new(f.clone(), Rational::zero()));
                out.push(Inequality::new(-f, Rational::zero()));
            }
        }
    }
    out
}

/// Depth-first stream of realizable sign patterns, emitted in the fixed
/// order `+ < 0 < -` per row.
pub struct SignCells {
    f: QMatrix,
    stack: Vec<Vec<Sign>>,
}

impl Iterator for SignCells {
    type Item = SignCell;

    fn next(&mut self) -> Option<SignCell> {
        let n = self.f.ncols();
        while let Some(prefix) = self.stack.pop() {
            let region = Polyhedron::new(n, sign_constraints(self.f.rows(), &prefix))
                .expect("rows have the matrix width");
            let Ok(point) = find_point(&region) else {
                continue;
            };
            if prefix.len() == self.f.nrows() {
                return Some(SignCell {
                    pattern: prefix,
                    witness: point,
                });
            }
            for s in [Sign::Neg, Sign::Zero, Sign::Pos] {
                let mut child = prefix.clone();
                child.push(s);
                self.stack.push(child);
            }
        }
        None
    }
}

pub fn sign_cells(f: &QMatrix, limits: &Limits) -> Result<SignCells> {
    if f.nrows() > limits.max_functionals {
        return Err(Error::Capacity {
            what: "functionals",
            found: f.nrows(),
            limit: limits.max_functionals,
        });
    }
    Ok(SignCells {
        f: f.clone(),
        stack: vec![Vec::new()],
    })
}
