//! Verdicts with witnesses and certificates.
//!
//! Support sets are 0-based indices into the rows of the functional matrix.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::{FarkasCertificate, QVector, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Property {
    #[serde(rename = "pointed")]
    Pointed,
    #[serde(rename = "directed")]
    Directed,
    #[serde(rename = "rdp")]
    Rdp,
    #[serde(rename = "pervasive")]
    Pervasive,
    #[serde(rename = "weakly_pervasive")]
    WeaklyPervasive,
    #[serde(rename = "fordable")]
    Fordable,
    #[serde(rename = "property_P")]
    PropertyP,
}

impl Property {
    pub const ALL: [Property; 7] = [
        Property::Pointed,
        Property::Directed,
        Property::Rdp,
        Property::Pervasive,
        Property::WeaklyPervasive,
        Property::Fordable,
        Property::PropertyP,
    ];

    /// The five properties related by the implication suite.
    pub const STRUCTURAL: [Property; 5] = [
        Property::Pervasive,
        Property::WeaklyPervasive,
        Property::Fordable,
        Property::Rdp,
        Property::PropertyP,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Pointed => "pointed",
            Property::Directed => "directed",
            Property::Rdp => "rdp",
            Property::Pervasive => "pervasive",
            Property::WeaklyPervasive => "weakly_pervasive",
            Property::Fordable => "fordable",
            Property::PropertyP => "property_P",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Property::ALL
            .into_iter()
            .find(|p| p.as_str() == s || (s == "P" && *p == Property::PropertyP))
            .ok_or_else(|| Error::Argument(format!("unknown property `{s}`")))
    }
}

/// A linear functional separating a point from an upper set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// A cover row `f3` or an ambient coordinate label.
    pub label: String,
    pub functional: QVector,
    pub value: Rational,
    pub bound: Rational,
}

/// Evidence that `b₁, b₂` are not disjoint: `v` dominates `±(b₁ − b₂)` but
/// not `b₁ + b₂`, so the two upper sets of the disjointness identity differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separator {
    pub v: QVector,
    pub name: Option<String>,
    pub violation: Violation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    None,
    /// An element `b` whose positive part dominates no strictly positive
    /// element of the space.
    Element {
        b: QVector,
        name: Option<String>,
        image: QVector,
        positive_support: Vec<usize>,
    },
    /// Positive elements whose meet in the cover dominates no strictly
    /// positive element of the space.
    Meet {
        elements: Vec<QVector>,
        names: Vec<Option<String>>,
        images: Vec<QVector>,
        support: Vec<usize>,
        separator: Option<Separator>,
    },
    /// `x₁, x₂ ≤ x₃, x₄` with nothing in between.
    Quadruple {
        x1: QVector,
        x2: QVector,
        x3: QVector,
        x4: QVector,
    },
    /// A cover coordinate that is the support of no element.
    Coordinate {
        index: usize,
        functional: QVector,
        ambient: Vec<String>,
    },
}

/// A tested support that already contains the support of a ray.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveredSupport {
    pub support: Vec<usize>,
    pub ray: QVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `⟨g, r⟩ > 0` for every ray `r`.
    InteriorFunctional {
        functional: QVector,
        rays: Vec<QVector>,
    },
    /// Rays spanning the whole space.
    SpanningRays { rays: Vec<QVector> },
    /// Exactly `n` linearly independent extreme rays.
    Simplicial { rays: Vec<QVector> },
    /// More than `n` rays but the quadruple search found nothing.
    SimplicialityOnly { ray_count: usize },
    /// Multipliers refuting the interpolation system of a quadruple.
    Interpolation { farkas: FarkasCertificate },
    /// The support system `{Fx ≥ 0, (Fx)_j = 0 off T, Σ_T (Fx)_j ≥ 1}` is
    /// infeasible.
    SupportSystem {
        support: Vec<usize>,
        farkas: FarkasCertificate,
    },
    /// Every tested support (or the branch below it) contains a ray support.
    Covered {
        tested: usize,
        covered: Vec<CoveredSupport>,
    },
    /// Elements `s_j` with `supp(F s_j) = {j}`.
    Singletons { realizers: Vec<QVector> },
    /// Kernel of the rows other than `coordinate`, on which that row vanishes.
    Kernel {
        coordinate: usize,
        basis: Vec<QVector>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Stats {
    pub lp_count: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecisionReport {
    pub property: Property,
    pub verdict: bool,
    pub witness: Witness,
    pub certificate: Certificate,
    pub stats: Stats,
}

/// Runs `f` and records the LPs it solved on this thread and its wall time.
pub(crate) fn measured<T>(f: impl FnOnce() -> T) -> (T, Stats) {
    let lps = crate::geometry::lp_count();
    let start = std::time::Instant::now();
    let out = f();
    let stats = Stats {
        lp_count: crate::geometry::lp_count() - lps,
        elapsed: start.elapsed(),
    };
    (out, stats)
}
