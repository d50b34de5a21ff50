//! Exact two-phase simplex over the rationals.
//!
//! Problems have the form `min/max ⟨c, x⟩ s.t. ⟨aᵢ, x⟩ ≥ bᵢ` with `x` free.
//! Every outcome carries a certificate that can be checked with plain
//! rational arithmetic:
//!
//! * optimal: `y ≥ 0` with `Aᵀy = σc` and `⟨b, y⟩ = σ·value`, where `σ = 1`
//!   for minimization and `σ = -1` for maximization;
//! * infeasible: Farkas multipliers `y ≥ 0` with `Aᵀy = 0` and `⟨b, y⟩ > 0`;
//! * unbounded: a feasible point and a ray `d` with `Ad ≥ 0` improving the
//!   objective.
//!
//! Pivoting follows Bland's rule, so results are deterministic.

use std::cell::Cell;

use super::polyhedron::Polyhedron;
use super::rational::{QVector, Rational};
use crate::error::{check_dim, Result};

thread_local! {
    static LP_COUNT: Cell<u64> = const { Cell::new(0) };
}

/// Number of LPs solved on the current thread so far.
pub fn lp_count() -> u64 {
    LP_COUNT.with(Cell::get)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal {
        primal: QVector,
        value: Rational,
        dual: QVector,
    },
    Infeasible {
        farkas: QVector,
    },
    Unbounded {
        primal: QVector,
        ray: QVector,
    },
}

impl LpOutcome {
    pub fn status(&self) -> LpStatus {
        match self {
            LpOutcome::Optimal { .. } => LpStatus::Optimal,
            LpOutcome::Infeasible { .. } => LpStatus::Infeasible,
            LpOutcome::Unbounded { .. } => LpStatus::Unbounded,
        }
    }

    pub fn primal(&self) -> Option<&QVector> {
        match self {
            LpOutcome::Optimal { primal, .. } | LpOutcome::Unbounded { primal, .. } => Some(primal),
            LpOutcome::Infeasible { .. } => None,
        }
    }

    pub fn farkas(&self) -> Option<&QVector> {
        match self {
            LpOutcome::Infeasible { farkas } => Some(farkas),
            _ => None,
        }
    }
}

pub fn lp_solve(objective: &QVector, sense: Sense, region: &Polyhedron) -> Result<LpOutcome> {
    check_dim(region.dim(), objective.dim())?;
    LP_COUNT.with(|c| c.set(c.get() + 1));
    let min_obj = match sense {
        Sense::Min => objective.clone(),
        Sense::Max => -objective,
    };
    let mut tab = Tableau::new(region);
    if let Some(farkas) = tab.phase_one() {
        return Ok(LpOutcome::Infeasible { farkas });
    }
    let out = tab.phase_two(&min_obj);
    Ok(match out {
        PhaseTwo::Optimal { primal, dual } => {
            let value = objective.dot(&primal);
            LpOutcome::Optimal {
                primal,
                value,
                dual,
            }
        }
        PhaseTwo::Unbounded { primal, ray } => LpOutcome::Unbounded { primal, ray },
    })
}

/// Feasibility query: a point of the region or Farkas multipliers.
pub fn find_point(region: &Polyhedron) -> std::result::Result<QVector, QVector> {
    match lp_solve(&QVector::zeros(region.dim()), Sense::Min, region)
        .expect("objective dimension matches by construction")
    {
        LpOutcome::Optimal { primal, .. } => Ok(primal),
        LpOutcome::Infeasible { farkas } => Err(farkas),
        LpOutcome::Unbounded { .. } => unreachable!("zero objective cannot be unbounded"),
    }
}

/// `y ≥ 0`, `Aᵀy = 0`, `⟨b, y⟩ > 0`.
pub fn check_farkas(region: &Polyhedron, y: &QVector) -> bool {
    let ineqs = region.inequalities();
    if y.dim() != ineqs.len() || y.iter().any(Rational::is_negative) {
        return false;
    }
    let mut combo = QVector::zeros(region.dim());
    let mut rhs = Rational::zero();
    for (ineq, coef) in ineqs.iter().zip(y.iter()) {
        if coef.is_zero() {
            continue;
        }
        combo = &combo + &ineq.normal.scale(coef);
        rhs += &ineq.offset * coef;
    }
    combo.is_zero() && rhs.is_positive()
}

/// Checks an outcome against its own certificate.
pub fn check_outcome(
    objective: &QVector,
    sense: Sense,
    region: &Polyhedron,
    outcome: &LpOutcome,
) -> bool {
    let sigma = match sense {
        Sense::Min => Rational::one(),
        Sense::Max => -Rational::one(),
    };
    match outcome {
        LpOutcome::Infeasible { farkas } => check_farkas(region, farkas),
        LpOutcome::Optimal {
            primal,
            value,
            dual,
        } => {
            let ineqs = region.inequalities();
            if !region.contains(primal) || dual.dim() != ineqs.len() {
                return false;
            }
            if dual.iter().any(Rational::is_negative) {
                return false;
            }
            let mut aty = QVector::zeros(region.dim());
            let mut bty = Rational::zero();
            for (ineq, coef) in ineqs.iter().zip(dual.iter()) {
                aty = &aty + &ineq.normal.scale(coef);
                bty += &ineq.offset * coef;
            }
            aty == objective.scale(&sigma)
                && bty == value * &sigma
                && objective.dot(primal) == *value
        }
        LpOutcome::Unbounded { primal, ray } => {
            region.contains(primal)
                && region
                    .inequalities()
                    .iter()
                    .all(|i| !i.normal.dot(ray).is_negative())
                && (objective.dot(ray) * sigma).is_negative()
        }
    }
}

enum PhaseTwo {
    Optimal { primal: QVector, dual: QVector },
    Unbounded { primal: QVector, ray: QVector },
}

/// Dense tableau for `D(A x⁺ − A x⁻ − s) (+ a) = D b`, `D` a row sign making
/// the right-hand side nonnegative. Rows with `b ≤ 0` start with their
/// surplus variable basic; the others get an artificial.
struct Tableau {
    n: usize,
    k: usize,
    /// Columns: x⁺ (n), x⁻ (n), s (k), artificials (k_art), then rhs.
    width: usize,
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Column that formed the initial identity for each row.
    id_col: Vec<usize>,
    row_sign: Vec<Rational>,
    art_start: usize,
    obj: Vec<Rational>,
}

impl Tableau {
    fn new(region: &Polyhedron) -> Self {
        let n = region.dim();
        let ineqs = region.inequalities();
        let k = ineqs.len();
        let needs_art: Vec<bool> = ineqs.iter().map(|i| i.offset.is_positive()).collect();
        let k_art = needs_art.iter().filter(|&&b| b).count();
        let art_start = 2 * n + k;
        let width = art_start + k_art + 1;
        let mut rows = Vec::with_capacity(k);
        let mut basis = Vec::with_capacity(k);
        let mut row_sign = Vec::with_capacity(k);
        let mut next_art = art_start;
        for (i, ineq) in ineqs.iter().enumerate() {
            let sign = if needs_art[i] {
                Rational::one()
            } else {
                -Rational::one()
            };
            let mut row = vec![Rational::zero(); width];
            for j in 0..n {
                let a = &ineq.normal[j] * &sign;
                row[n + j] = -&a;
                row[j] = a;
            }
            row[2 * n + i] = -&sign;
            row[width - 1] = &ineq.offset * &sign;
            if needs_art[i] {
                row[next_art] = Rational::one();
                basis.push(next_art);
                next_art += 1;
            } else {
                basis.push(2 * n + i);
            }
            rows.push(row);
            row_sign.push(sign);
        }
        let id_col = basis.clone();
        Tableau {
            n,
            k,
            width,
            rows,
            basis,
            id_col,
            row_sign,
            art_start,
            obj: Vec::new(),
        }
    }

    fn rhs(&self) -> usize {
        self.width - 1
    }

    fn set_objective(&mut self, costs: &[Rational]) {
        let mut obj: Vec<Rational> = costs.to_vec();
        obj.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &costs[b];
            if cb.is_zero() {
                continue;
            }
            for j in 0..self.width {
                obj[j] -= &(cb * &row[j]);
            }
        }
        self.obj = obj;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &(&f * p);
                }
            }
        }
        if !self.obj[c].is_zero() {
            let f = self.obj[c].clone();
            for (v, p) in self.obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &(&f * p);
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule over columns `< limit`. Returns the entering column
    /// when unbounded.
    fn run(&mut self, limit: usize) -> Option<usize> {
        let rhs = self.rhs();
        loop {
            let c = (0..limit).find(|&j| self.obj[j].is_negative())?;
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.k {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rows[i][rhs] / a;
                best = match best {
                    None => Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < br || (ratio == br && self.basis[i] < self.basis[bi]) {
                            Some((i, ratio))
                        } else {
                            Some((bi, br))
                        }
                    }
                };
            }
            match best {
                None => return Some(c),
                Some((r, _)) => self.pivot(r, c),
            }
        }
    }

    /// Row duals `y` (in the original inequality orientation) from the
    /// reduced costs of the initial identity columns.
    fn duals(&self, costs: &[Rational]) -> QVector {
        (0..self.k)
            .map(|i| {
                let col = self.id_col[i];
                let u = &costs[col] - &self.obj[col];
                &u * &self.row_sign[i]
            })
            .collect()
    }

    /// Returns Farkas multipliers when infeasible.
    fn phase_one(&mut self) -> Option<QVector> {
        if self.art_start == self.width - 1 {
            return None;
        }
        let mut costs = vec![Rational::zero(); self.width - 1];
        for c in costs.iter_mut().skip(self.art_start) {
            *c = Rational::one();
        }
        self.set_objective(&costs);
        let unbounded = self.run(self.width - 1);
        debug_assert!(unbounded.is_none(), "phase one is bounded below by zero");
        let infeasibility = -&self.obj[self.rhs()];
        if infeasibility.is_positive() {
            return Some(self.duals(&costs));
        }
        // drive zero-level artificials out of the basis where possible
        for r in 0..self.k {
            if self.basis[r] < self.art_start {
                continue;
            }
            if let Some(c) = (0..self.art_start).find(|&j| !self.rows[r][j].is_zero()) {
                self.pivot(r, c);
            }
        }
        None
    }

    fn phase_two(&mut self, objective: &QVector) -> PhaseTwo {
        let n = self.n;
        let mut costs = vec![Rational::zero(); self.width - 1];
        for j in 0..n {
            costs[j] = objective[j].clone();
            costs[n + j] = -&objective[j];
        }
        self.set_objective(&costs);
        let entering = self.run(self.art_start);
        let primal = self.primal();
        match entering {
            None => {
                let dual = self.duals(&costs);
                PhaseTwo::Optimal { primal, dual }
            }
            Some(c) => {
                let mut dir = vec![Rational::zero(); self.width - 1];
                dir[c] = Rational::one();
                for (row, &b) in self.rows.iter().zip(&self.basis) {
                    dir[b] = -&row[c];
                }
                let ray = (0..n).map(|j| &dir[j] - &dir[n + j]).collect();
                PhaseTwo::Unbounded { primal, ray }
            }
        }
    }

    fn primal(&self) -> QVector {
        let n = self.n;
        let rhs = self.rhs();
        let mut vals = vec![Rational::zero(); 2 * n];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < 2 * n {
                vals[b] = row[rhs].clone();
            }
        }
        (0..n).map(|j| &vals[j] - &vals[n + j]).collect()
    }
}
