//! The canonical vector lattice cover.
//!
//! The rows `f₁, …, f_m` of `F` are the extreme rays of the dual cone and
//! `i(x) = Fx` embeds the model into `ℝᵐ` with the coordinatewise order.
//! Bipositivity is the statement `K = {x : Fx ≥ 0}`.
//!
//! Order density is checked through the gap functions
//! `γ_j(y) = min{(Fd)_j − y_j : Fd ≥ y}`. Each `γ_j` is nonnegative,
//! positively homogeneous and subadditive (the sum of feasible points for
//! `y` and `y'` is feasible for `y + y'`), so it vanishes on all of `ℝᵐ`
//! iff it vanishes on `±e_k` for every `k`. That gives `2m²` LPs.

use crate::error::{check_dim, Error, Result};
use crate::geometry::{
    lp_solve, polyhedron_relation, Cone, Inequality, Limits, LpOutcome, Polyhedron, QMatrix,
    QVector, Rational, Relation, Sense,
};
use crate::order::{upper_set, PreRieszModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalRepresentation {
    model: PreRieszModel,
    f: QMatrix,
}

pub fn functional_representation(
    model: &PreRieszModel,
    limits: &Limits,
) -> Result<FunctionalRepresentation> {
    let f = model.cone().normal_matrix();
    if f.nrows() > limits.max_functionals {
        return Err(Error::Capacity {
            what: "functionals",
            found: f.nrows(),
            limit: limits.max_functionals,
        });
    }
    Ok(FunctionalRepresentation {
        model: model.clone(),
        f,
    })
}

impl FunctionalRepresentation {
    /// A representation with an arbitrary matrix, for testing cover checks
    /// against non-canonical embeddings.
    pub fn from_parts(model: &PreRieszModel, f: QMatrix) -> Result<Self> {
        check_dim(model.dim(), f.ncols())?;
        Ok(FunctionalRepresentation {
            model: model.clone(),
            f,
        })
    }

    pub fn model(&self) -> &PreRieszModel {
        &self.model
    }

    pub fn f(&self) -> &QMatrix {
        &self.f
    }

    pub fn m(&self) -> usize {
        self.f.nrows()
    }

    pub fn dim(&self) -> usize {
        self.f.ncols()
    }

    pub fn apply(&self, x: &QVector) -> QVector {
        self.f.mul_vec(x)
    }

    /// Ambient labels of row `j` for subspace models, else `f{j+1}`.
    pub fn row_label(&self, j: usize) -> String {
        let ambient = self.model.ambient_labels_for(self.f.row(j));
        if ambient.is_empty() {
            format!("f{}", j + 1)
        } else {
            ambient.join(",")
        }
    }

    /// `{x : Fx ≥ 0, (Fx)_j = 0 ∀ j ∉ T, Σ_{j∈T} (Fx)_j ≥ 1}`.
    pub fn support_system(&self, support: &[usize]) -> Vec<Inequality> {
        let mut rows = Vec::with_capacity(self.m() * 2 + 1);
        let mut total = QVector::zeros(self.dim());
        for (j, f) in self.f.rows().iter().enumerate() {
            rows.push(Inequality::new(f.clone(), Rational::zero()));
            if support.contains(&j) {
                total = &total + f;
            } else {
                rows.push(Inequality::new(-f, Rational::zero()));
            }
        }
        rows.push(Inequality::new(total, Rational::one()));
        rows
    }
}

/// A failed order-density test: `min{(Fd)_j : Fd ≥ ±e_k}` differs from
/// the `j`-th coordinate of `±e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DensityGap {
    pub j: usize,
    pub k: usize,
    pub negative: bool,
    pub minimum: Rational,
    pub expected: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCheck {
    pub bipositive: bool,
    pub majorizing: bool,
    pub order_dense: bool,
    /// `d` with `Fd ≥ 1`.
    pub majorant: Option<QVector>,
    pub gap: Option<DensityGap>,
}

impl CoverCheck {
    pub fn passed(&self) -> bool {
        self.bipositive && self.majorizing && self.order_dense
    }

    pub fn into_result(self) -> Result<Self> {
        if self.passed() {
            return Ok(self);
        }
        let mut msg = format!(
            "bipositive={}, majorizing={}, order_dense={}",
            self.bipositive, self.majorizing, self.order_dense
        );
        if let Some(g) = &self.gap {
            let sign = if g.negative { "-" } else { "" };
            msg.push_str(&format!(
                "; min (Fd)_{} over Fd >= {sign}e_{} is {}, expected {}",
                g.j + 1,
                g.k + 1,
                g.minimum,
                g.expected
            ));
        }
        Err(Error::Cover(msg))
    }
}

pub fn verify_cover(rep: &FunctionalRepresentation) -> Result<CoverCheck> {
    let n = rep.dim();
    let m = rep.m();
    let bipositive = Cone::from_inequalities(n, rep.f.rows())
        .map(|k| &k == rep.model.cone())
        .unwrap_or(false);

    let above = |y: &QVector| {
        Polyhedron::new(
            n,
            rep.f
                .rows()
                .iter()
                .zip(y.iter())
                .map(|(f, v)| Inequality::new(f.clone(), v.clone()))
                .collect(),
        )
    };
    let ones: QVector = (0..m).map(|_| Rational::one()).collect();
    let majorant = match above(&ones)?.emptiness() {
        crate::geometry::Emptiness::Nonempty { point } => Some(point.clone()),
        crate::geometry::Emptiness::Empty { .. } => None,
    };
    let majorizing = majorant.is_some();

    let mut gap = None;
    if majorizing {
        'outer: for k in 0..m {
            for negative in [false, true] {
                let mut y = QVector::unit(m, k);
                if negative {
                    y = -&y;
                }
                let region = above(&y)?;
                for j in 0..m {
                    let minimum = match lp_solve(rep.f.row(j), Sense::Min, &region)? {
                        LpOutcome::Optimal { value, .. } => value,
                        other => {
                            return Err(Error::Invariant(format!(
                                "order-density LP is {:?}",
                                other.status()
                            )))
                        }
                    };
                    if minimum != y[j] {
                        gap = Some(DensityGap {
                            j,
                            k,
                            negative,
                            minimum,
                            expected: y[j].clone(),
                        });
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(CoverCheck {
        bipositive,
        majorizing,
        order_dense: majorizing && gap.is_none(),
        majorant,
        gap,
    })
}

fn nonempty(name: &str, set: &[QVector]) -> Result<()> {
    if set.is_empty() {
        Err(Error::Argument(format!("{name} must be nonempty")))
    } else {
        Ok(())
    }
}

fn join_image(rep: &FunctionalRepresentation, set: &[QVector]) -> Result<QVector> {
    let mut out: Option<QVector> = None;
    for x in set {
        check_dim(rep.dim(), x.dim())?;
        let fx = rep.apply(x);
        out = Some(match out {
            None => fx,
            Some(acc) => acc.sup(&fx),
        });
    }
    Ok(out.expect("set is nonempty"))
}

/// `⋁ F(A) − ⋁ F(B)`.
pub fn riesz_element(
    rep: &FunctionalRepresentation,
    a: &[QVector],
    b: &[QVector],
) -> Result<QVector> {
    nonempty("A", a)?;
    nonempty("B", b)?;
    Ok(&join_image(rep, a)? - &join_image(rep, b)?)
}

/// Rewrites `(Ã, B̃)` as `(x + Ã, x + B̃)` with `x ≥ −c` for every
/// `c ∈ Ã ∪ B̃`, so both sets become positive; the cover element is
/// unchanged because `⋁F(x + S) = Fx + ⋁F(S)`. The `x` chosen minimizes
/// `Σ_j (Fx)_j`.
///
/// The reflected form `(x − B̃, x − Ã)` only preserves the cover element
/// for singletons, since `Fx − ⋁F(B̃) = ⋀F(x − B̃)`.
pub fn normalize_representation(
    rep: &FunctionalRepresentation,
    a: &[QVector],
    b: &[QVector],
) -> Result<(Vec<QVector>, Vec<QVector>)> {
    nonempty("A", a)?;
    nonempty("B", b)?;
    let n = rep.dim();
    let mut rows = Vec::new();
    for c in a.iter().chain(b) {
        check_dim(n, c.dim())?;
        for f in rep.f.rows() {
            rows.push(Inequality::new(f.clone(), -f.dot(c)));
        }
    }
    let total = rep
        .f
        .tr_mul_vec(&(0..rep.m()).map(|_| Rational::one()).collect());
    let x = match lp_solve(&total, Sense::Min, &Polyhedron::new(n, rows)?)? {
        LpOutcome::Optimal { primal, .. } => primal,
        other => {
            return Err(Error::Invariant(format!(
                "normalization LP is {:?}",
                other.status()
            )))
        }
    };
    Ok((
        a.iter().map(|y| &x + y).collect(),
        b.iter().map(|y| &x + y).collect(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PositivityVerdict {
    Zero,
    StrictlyPositive,
    Nonnegative,
    NotNonnegative,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Positivity {
    pub verdict: PositivityVerdict,
    pub cover_vector: QVector,
    /// Relation of `Aᵘ` to `Bᵘ`.
    pub relation: Relation,
}

/// Sign of `⋁F(A) − ⋁F(B)` for positive `A, B`, computed in the cover and
/// from the inclusion of upper sets; the two must agree.
pub fn positivity_oracle(
    rep: &FunctionalRepresentation,
    a: &[QVector],
    b: &[QVector],
) -> Result<Positivity> {
    for (name, set) in [("A", a), ("B", b)] {
        if let Some(x) = set.iter().find(|x| !rep.model.is_positive(x)) {
            return Err(Error::Precondition(format!(
                "{name} contains {x}, which is not positive"
            )));
        }
    }
    let y = riesz_element(rep, a, b)?;
    let cover = if y.is_zero() {
        PositivityVerdict::Zero
    } else if y.is_nonnegative() {
        PositivityVerdict::StrictlyPositive
    } else {
        PositivityVerdict::NotNonnegative
    };
    let ua = upper_set(&rep.model, a)?;
    let ub = upper_set(&rep.model, b)?;
    let relation = polyhedron_relation(ua.region(), ub.region())?;
    let intrinsic = match relation {
        Relation::Equal => PositivityVerdict::Zero,
        Relation::ProperSubset { .. } => PositivityVerdict::StrictlyPositive,
        _ => PositivityVerdict::NotNonnegative,
    };
    if cover != intrinsic {
        return Err(Error::Invariant(format!(
            "cover vector {y} gives {cover:?} but upper sets give {intrinsic:?}"
        )));
    }
    Ok(Positivity {
        verdict: cover,
        cover_vector: y,
        relation,
    })
}

/// `s_j = max{(Fx)_j : 0 ≤ Fx ≤ y}`; equals `y` for every `y > 0` exactly
/// when the model is pervasive.
pub fn sup_over_interval(rep: &FunctionalRepresentation, y: &QVector) -> Result<QVector> {
    check_dim(rep.m(), y.dim())?;
    if y.is_zero() || !y.is_nonnegative() {
        return Err(Error::Argument(format!("{y} is not strictly positive")));
    }
    let mut rows = Vec::with_capacity(2 * rep.m());
    for (f, v) in rep.f.rows().iter().zip(y.iter()) {
        rows.push(Inequality::new(f.clone(), Rational::zero()));
        rows.push(Inequality::new(-f, -v));
    }
    let region = Polyhedron::new(rep.dim(), rows)?;
    rep.f
        .rows()
        .iter()
        .map(|f| match lp_solve(f, Sense::Max, &region)? {
            LpOutcome::Optimal { value, .. } => Ok(value),
            other => Err(Error::Invariant(format!(
                "interval LP is {:?}",
                other.status()
            ))),
        })
        .collect()
}
