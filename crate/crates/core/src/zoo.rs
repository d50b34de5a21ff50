//! Named models: classic cones, grid truncations of function spaces and
//! seeded random cones.
//!
//! Default grids:
//!
//! * example14(N): `0`, the points `1/(N+1), …, 1/2` and `3/4`, every spike
//!   `n + 1/k` for `n, k ≤ N`, and `n − 1/4` for `n = 2, …, N+1`. The point
//!   `1` is left out: there `2u₁,₂ ∧ e₂` equals `1`, which would enlarge the
//!   support of the meet.
//! * example13(d): `1/4`, `1/2` and `1/2 + k/(2(d+1))` for `k = 1, …, d+1`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{q, Cone, QVector, Rational};
use crate::order::{build_model, ConeSource, ModelSpec, NamedElement, PreRieszModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZooSpec {
    Simplicial {
        n: usize,
    },
    FourRay,
    Example10 {
        n: usize,
        m: usize,
    },
    Example13 {
        d: usize,
        grid: Option<Vec<Rational>>,
    },
    Example14 {
        n: usize,
        grid: Option<Vec<Rational>>,
    },
    Random {
        seed: u64,
        n: usize,
        rays: usize,
        bound: i64,
    },
}

pub fn make(spec: &ZooSpec) -> Result<PreRieszModel> {
    match spec {
        ZooSpec::Simplicial { n } => make_classic("simplicial", *n),
        ZooSpec::FourRay => make_classic("four_ray", 3),
        ZooSpec::Example10 { n, m } => make_example10(*n, *m),
        ZooSpec::Example13 { d, grid } => make_example13(*d, grid.as_deref()),
        ZooSpec::Example14 { n, grid } => make_example14(*n, grid.as_deref()),
        ZooSpec::Random {
            seed,
            n,
            rays,
            bound,
        } => make_random(*seed, *n, *rays, *bound),
    }
}

/// `simplicial` is `(ℝⁿ, ℝⁿ₊)`; `four_ray` is the cone over a square in
/// `ℝ³` (the dimension argument is ignored).
pub fn make_classic(name: &str, n: usize) -> Result<PreRieszModel> {
    match name {
        "simplicial" => {
            let rays = (0..n).map(|i| QVector::unit(n, i)).collect();
            build_model(&ModelSpec::from_rays(n, rays).named(format!("simplicial({n})")))
        }
        "four_ray" => {
            let rays = [[1, 0, 1], [-1, 0, 1], [0, 1, 1], [0, -1, 1]]
                .iter()
                .map(|r| QVector::from_ints(r))
                .collect();
            let mut spec = ModelSpec::from_rays(3, rays).named("four_ray");
            spec.elements = vec![NamedElement::new("b", QVector::from_ints(&[1, 1, -1]))];
            build_model(&spec)
        }
        other => Err(Error::Argument(format!("unknown classic model `{other}`"))),
    }
}

type GridFn = Box<dyn Fn(&Rational) -> Rational>;

/// Basis functions of a grid model.
struct GridFunctions {
    names: Vec<String>,
    eval: Vec<GridFn>,
}

impl GridFunctions {
    fn subspace(&self, grid: &[Rational]) -> ConeSource {
        ConeSource::Subspace {
            ambient: grid.len(),
            basis: self
                .eval
                .iter()
                .map(|f| grid.iter().map(f).collect())
                .collect(),
            labels: Some(grid.iter().map(Rational::to_string).collect()),
        }
    }

    fn index(&self, name: &str) -> usize {
        self.names
            .iter()
            .position(|n| n == name)
            .expect("known basis function")
    }

    fn combination(&self, terms: &[(i64, &str)]) -> QVector {
        let mut c = QVector::zeros(self.names.len());
        for (coef, name) in terms {
            c[self.index(name)] = Rational::from_int(*coef);
        }
        c
    }
}

fn sorted_grid(points: impl IntoIterator<Item = Rational>) -> Vec<Rational> {
    points
        .into_iter()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

fn example14_functions(big_n: usize) -> GridFunctions {
    let mut names = Vec::new();
    let mut eval: Vec<GridFn> = Vec::new();
    for n in 1..=big_n as i64 {
        names.push(format!("e{n}"));
        let (lo, hi) = (Rational::from_int(n - 1), Rational::from_int(n));
        eval.push(Box::new(move |t| {
            if *t >= lo && *t < hi {
                Rational::one()
            } else {
                Rational::zero()
            }
        }));
    }
    for n in 1..=big_n as i64 {
        for k in 1..=big_n as i64 {
            names.push(format!("u{n},{k}"));
            let end = q(1, n);
            let spike = &Rational::from_int(n) + &q(1, k);
            eval.push(Box::new(move |t| {
                let mut v = Rational::zero();
                if !t.is_negative() && *t <= end {
                    v += &Rational::from_int(n) * t;
                }
                if *t == spike {
                    v += q(1, k);
                }
                v
            }));
        }
    }
    GridFunctions { names, eval }
}

pub fn example14_default_grid(big_n: usize) -> Vec<Rational> {
    let n = big_n as i64;
    let mut pts = vec![Rational::zero(), q(3, 4)];
    pts.extend((2..=n + 1).map(|k| q(1, k)));
    for a in 1..=n {
        for k in 1..=n {
            pts.push(&Rational::from_int(a) + &q(1, k));
        }
    }
    pts.extend((2..=n + 1).map(|a| q(4 * a - 1, 4)));
    sorted_grid(pts)
}

/// Span of `e_n`, `u_{n,k}` (`n, k ≤ N`) evaluated on a grid, ordered
/// pointwise. Named elements: `b1 = 2u1,2`, `b2 = e2`, `v = 2u1,3 + e2`.
pub fn make_example14(big_n: usize, grid: Option<&[Rational]>) -> Result<PreRieszModel> {
    if big_n < 3 {
        return Err(Error::Argument(format!(
            "example14 needs N ≥ 3, got {big_n}"
        )));
    }
    let grid = match grid {
        Some(g) => sorted_grid(g.iter().cloned()),
        None => example14_default_grid(big_n),
    };
    let n = big_n as i64;
    let mut missing = Vec::new();
    let mut need = |p: Rational, what: &str| {
        if !grid.contains(&p) {
            missing.push(format!("{p} ({what})"));
        }
    };
    need(Rational::zero(), "origin");
    for a in 1..=n {
        for k in 1..=n {
            need(&Rational::from_int(a) + &q(1, k), "spike");
        }
    }
    let spikes: BTreeSet<Rational> = (1..=n)
        .flat_map(|a| (1..=n).map(move |k| &Rational::from_int(a) + &q(1, k)))
        .collect();
    let unit = grid
        .iter()
        .filter(|t| t.is_positive() && **t <= Rational::one())
        .count();
    if unit < big_n + 1 {
        missing.push(format!("{} more point(s) of ]0, 1]", big_n + 1 - unit));
    }
    for a in 1..=n + 1 {
        let (lo, hi) = (Rational::from_int(a - 1), Rational::from_int(a));
        let interior = grid
            .iter()
            .any(|t| *t > lo && *t < hi && !spikes.contains(t));
        if !interior {
            missing.push(format!("a non-spike interior point of [{lo}, {hi}["));
        }
    }
    if !missing.is_empty() {
        return Err(Error::Argument(format!(
            "example14 grid is missing: {}",
            missing.join(", ")
        )));
    }
    let funcs = example14_functions(big_n);
    let elements = vec![
        NamedElement::new("b1", funcs.combination(&[(2, "u1,2")])),
        NamedElement::new("b2", funcs.combination(&[(1, "e2")])),
        NamedElement::new("v", funcs.combination(&[(2, "u1,3"), (1, "e2")])),
    ];
    build_model(&ModelSpec {
        name: Some(format!("example14(N={big_n})")),
        dim: funcs.names.len(),
        source: funcs.subspace(&grid),
        elements,
    })
}

/// Names of the basis functions of [`make_example14`], in coordinate order.
pub fn example14_basis_names(big_n: usize) -> Vec<String> {
    example14_functions(big_n).names
}

pub fn example13_default_grid(d: usize) -> Vec<Rational> {
    let steps = 2 * (d as i64 + 1);
    let mut pts = vec![q(1, 4), q(1, 2)];
    pts.extend((1..=d as i64 + 1).map(|k| &q(1, 2) + &q(k, steps)));
    sorted_grid(pts)
}

/// Polynomials of degree `≤ d` on a grid, ordered pointwise, in the
/// monomial basis. Named element: `b = −16(t − 1/4)² + 1 = 8t − 16t²`.
pub fn make_example13(d: usize, grid: Option<&[Rational]>) -> Result<PreRieszModel> {
    if d < 2 {
        return Err(Error::Argument(format!("example13 needs d ≥ 2, got {d}")));
    }
    let grid = match grid {
        Some(g) => sorted_grid(g.iter().cloned()),
        None => example13_default_grid(d),
    };
    let half = q(1, 2);
    let mut missing = Vec::new();
    for p in [q(1, 4), half.clone()] {
        if !grid.contains(&p) {
            missing.push(p.to_string());
        }
    }
    let upper = grid
        .iter()
        .filter(|t| **t > half && **t <= Rational::one())
        .count();
    if upper < d + 1 {
        missing.push(format!("{} more point(s) of ]1/2, 1]", d + 1 - upper));
    }
    if !missing.is_empty() {
        return Err(Error::Argument(format!(
            "example13 grid is missing: {}",
            missing.join(", ")
        )));
    }
    let basis: Vec<QVector> = (0..=d)
        .map(|p| {
            grid.iter()
                .map(|t| (0..p).fold(Rational::one(), |acc, _| &acc * t))
                .collect()
        })
        .collect();
    let mut b = QVector::zeros(d + 1);
    b[1] = Rational::from_int(8);
    b[2] = Rational::from_int(-16);
    build_model(&ModelSpec {
        name: Some(format!("example13(d={d})")),
        dim: d + 1,
        source: ConeSource::Subspace {
            ambient: grid.len(),
            basis,
            labels: Some(grid.iter().map(Rational::to_string).collect()),
        },
        elements: vec![NamedElement::new("b", b)],
    })
}

/// `{x ∈ ℝ^{N+M+1} : Σ_{k=1}^N x₋ₖ/2ᵏ = x_M}` with coordinates `−N, …, M`
/// ordered pointwise. Model coordinates are the free entries
/// `x₋N, …, x₋₁, x₀, …, x_{M−1}`.
pub fn make_example10(big_n: usize, big_m: usize) -> Result<PreRieszModel> {
    if big_n < 2 || big_m < 1 {
        return Err(Error::Argument(format!(
            "example10 needs N ≥ 2 and M ≥ 1, got N = {big_n}, M = {big_m}"
        )));
    }
    let ambient = big_n + big_m + 1;
    let mut basis = Vec::new();
    for pos in 0..big_n + big_m {
        let mut v = QVector::unit(ambient, pos);
        if pos < big_n {
            let k = (big_n - pos) as u32;
            v[ambient - 1] = Rational::from_big(1.into(), num_bigint::BigInt::from(2u8).pow(k));
        }
        basis.push(v);
    }
    let labels = (0..ambient)
        .map(|pos| (pos as i64 - big_n as i64).to_string())
        .collect();
    build_model(&ModelSpec {
        name: Some(format!("example10(N={big_n},M={big_m})")),
        dim: big_n + big_m,
        source: ConeSource::Subspace {
            ambient,
            basis,
            labels: Some(labels),
        },
        elements: vec![],
    })
}

const RESAMPLE_BUDGET: usize = 1000;

/// Random rays with integer entries in `[−bound, bound]`, resampled until
/// they span a pointed generating cone.
pub fn make_random(seed: u64, n: usize, ray_count: usize, bound: i64) -> Result<PreRieszModel> {
    if n == 0 || n > 6 || ray_count > 10 || ray_count < n || bound < 1 {
        return Err(Error::Argument(format!(
            "random models need 1 ≤ n ≤ 6, n ≤ rays ≤ 10, bound ≥ 1; got n = {n}, rays = {ray_count}, bound = {bound}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RESAMPLE_BUDGET {
        let rays: Vec<QVector> = (0..ray_count)
            .map(|_| {
                (0..n)
                    .map(|_| Rational::from_int(rng.gen_range(-bound..=bound)))
                    .collect()
            })
            .collect();
        if Cone::from_rays(n, &rays).is_ok() {
            return build_model(
                &ModelSpec::from_rays(n, rays)
                    .named(format!("random(seed={seed},n={n},rays={ray_count})")),
            );
        }
    }
    Err(Error::Budget(format!(
        "no pointed generating cone after {RESAMPLE_BUDGET} samples"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::linalg::rank;

    #[test]
    fn classic_models() {
        assert!(make_classic("simplicial", 1)
            .unwrap()
            .cone()
            .is_simplicial());
        assert_eq!(make_classic("four_ray", 0).unwrap().cone().rays().len(), 4);
        assert!(make_classic("cube", 3).is_err());
    }

    #[test]
    fn example14_values() {
        let m = make_example14(3, None).unwrap();
        assert_eq!(m.dim(), 12);
        let p = m.provenance().unwrap();
        assert_eq!(rank(&p.basis, p.ambient), 12);
        let at = |x: &QVector, t: Rational| {
            let i = p.labels.iter().position(|l| *l == t.to_string()).unwrap();
            p.evaluate(x)[i].clone()
        };
        let b1 = m.element("b1").unwrap();
        let b2 = m.element("b2").unwrap();
        let v = m.element("v").unwrap();
        assert_eq!(at(b1, q(3, 2)), Rational::one());
        assert_eq!(at(v, q(4, 3)), q(5, 3));
        assert_eq!(at(v, q(3, 2)), Rational::one());
        assert_eq!(at(&(b1 + b2), q(3, 2)), Rational::from_int(2));
        assert_eq!(example14_default_grid(3).len(), 17);
    }

    #[test]
    fn example14_grid_validation() {
        let grid: Vec<Rational> = example14_default_grid(3)
            .into_iter()
            .filter(|t| *t != q(3, 2) && *t != q(7, 4))
            .collect();
        let err = make_example14(3, Some(&grid)).unwrap_err().to_string();
        assert!(err.contains("3/2 (spike)"), "{err}");
        assert!(err.contains("[1, 2["), "{err}");
        assert!(make_example14(2, None).is_err());
    }

    #[test]
    fn example13_values() {
        let m = make_example13(4, None).unwrap();
        let p = m.provenance().unwrap();
        let b = p.evaluate(m.element("b").unwrap());
        for (t, v) in p.labels.iter().zip(b.iter()) {
            match t.as_str() {
                "1/4" => assert_eq!(*v, Rational::one()),
                "1/2" => assert!(v.is_zero()),
                _ => assert!(v.is_negative(), "b({t}) = {v}"),
            }
        }
        // u_s(t) = (t − s)²/(1/2 − s)² for s = 1/4
        let s = q(1, 4);
        let u = |t: &Rational| {
            let a = t - &s;
            let c = &q(1, 2) - &s;
            &(&a * &a) / &(&c * &c)
        };
        assert_eq!(u(&q(1, 2)), Rational::one());
        assert!(u(&s).is_zero());
        assert!(make_example13(4, Some(&[q(1, 4), q(1, 2), q(3, 4)])).is_err());
    }

    #[test]
    fn example10_constraint() {
        let m = make_example10(4, 4).unwrap();
        let p = m.provenance().unwrap();
        assert_eq!(p.labels.first().map(String::as_str), Some("-4"));
        // e₀ lies in the space and is positive
        let e0 = QVector::unit(8, 4);
        let x = p.evaluate(&e0);
        assert_eq!(x, QVector::unit(9, 4));
        assert!(m.is_positive(&e0));
        // the unit at index −1 forces the limit coordinate to 1/2
        let s = p.evaluate(&QVector::unit(8, 3));
        assert_eq!(s[8], q(1, 2));
    }

    /// The truncation is simplicial, so its canonical cover is ℝ⁸ and every
    /// property holds. Non-fordability only shows up in the ambient ℝ⁹,
    /// which is not order dense over the space.
    #[test]
    fn example10_ambient_embedding() {
        use crate::cover::{functional_representation, verify_cover, FunctionalRepresentation};
        use crate::deciders::decide_fordable;
        use crate::geometry::{Limits, QMatrix};
        use crate::order::Witness;

        let m = make_example10(4, 4).unwrap();
        assert!(m.cone().is_simplicial());
        let canonical = functional_representation(&m, &Limits::default()).unwrap();
        assert!(decide_fordable(&canonical).unwrap().verdict);

        let p = m.provenance().unwrap();
        let f = QMatrix::from_rows(8, (0..9).map(|t| p.evaluation_row(t)).collect());
        let ambient = FunctionalRepresentation::from_parts(&m, f).unwrap();
        let d = decide_fordable(&ambient).unwrap();
        assert!(!d.verdict);
        assert!(
            matches!(&d.witness, Witness::Coordinate { index: 0, ambient, .. } if ambient == &["-4"])
        );
        assert!(!verify_cover(&ambient).unwrap().order_dense);
        // −1 fails as well: the kernel of the other eight rows is trivial
        let others: Vec<QVector> = (0..9)
            .filter(|&t| t != 3)
            .map(|t| p.evaluation_row(t))
            .collect();
        assert_eq!(rank(&others, 8), 8);
    }

    #[test]
    fn random_models_are_deterministic() {
        let a = make_random(7, 3, 5, 3).unwrap();
        let b = make_random(7, 3, 5, 3).unwrap();
        assert_eq!(a, b);
        assert!(make_random(7, 3, 2, 3).is_err());
    }
}
