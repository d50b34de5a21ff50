//! Pointed generating polyhedral cones with synchronized generator and
//! inequality representations.
//!
//! Conversions use the double description method: starting from the
//! simplicial cone cut out by `n` independent inequalities, constraints are
//! added one at a time and new rays are formed from adjacent pairs on
//! opposite sides of the new hyperplane (combinatorial adjacency test on
//! zero sets).

use super::linalg::{independent_subset, inverse, kernel, rank};
use super::lp::find_point;
use super::polyhedron::{Inequality, Polyhedron};
use super::rational::{QMatrix, QVector, Rational};
use crate::error::{check_dim, Error, Result};

/// Resource caps for the exponential enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Rows of a functional matrix fed to sign enumeration.
    pub max_functionals: usize,
    /// Extreme rays of a cone whose support closures are enumerated.
    pub max_rays: usize,
    /// Ambient dimension of randomly generated or enumerated models.
    pub max_dim: usize,
    /// Members of a support closure.
    pub max_closure: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_functionals: 16,
            max_rays: 14,
            max_dim: 8,
            max_closure: 4096,
        }
    }
}

/// Pointed, generating cone in `ℝⁿ`. Both representations hold only
/// irredundant primitive integer vectors sorted in descending
/// lexicographic order, so equal cones have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    rays: Vec<QVector>,
    normals: Vec<QVector>,
}

impl Cone {
    pub fn from_rays(dim: usize, rays: &[QVector]) -> Result<Cone> {
        let gens = prepare(dim, rays)?;
        if rank(&gens, dim) < dim {
            return Err(Error::NotGenerating {
                normal: first_kernel_vector(&gens, dim),
            });
        }
        let normals = canonical(dd_rays(dim, &gens));
        if rank(&normals, dim) < dim {
            return Err(Error::NotPointed {
                line: first_kernel_vector(&normals, dim),
            });
        }
        let rays = canonical(dd_rays(dim, &normals));
        Ok(Cone { dim, rays, normals })
    }

    pub fn from_inequalities(dim: usize, normals: &[QVector]) -> Result<Cone> {
        let normals = prepare(dim, normals)?;
        if rank(&normals, dim) < dim {
            return Err(Error::NotPointed {
                line: first_kernel_vector(&normals, dim),
            });
        }
        let rays = canonical(dd_rays(dim, &normals));
        if rank(&rays, dim) < dim {
            return Err(Error::NotGenerating {
                normal: first_kernel_vector(&rays, dim),
            });
        }
        let normals = canonical(dd_rays(dim, &rays));
        Ok(Cone { dim, rays, normals })
    }

    /// The nonnegative orthant of `ℝⁿ`.
    pub fn orthant(dim: usize) -> Cone {
        let mut units: Vec<QVector> = (0..dim).map(|i| QVector::unit(dim, i)).collect();
        units.sort();
        units.reverse();
        Cone {
            dim,
            rays: units.clone(),
            normals: units,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme rays (V-representation).
    pub fn rays(&self) -> &[QVector] {
        &self.rays
    }

    /// Facet normals (H-representation): `x ∈ K ⟺ ⟨f, x⟩ ≥ 0` for all `f`.
    pub fn normals(&self) -> &[QVector] {
        &self.normals
    }

    pub fn normal_matrix(&self) -> QMatrix {
        QMatrix::from_rows(self.dim, self.normals.clone())
    }

    pub fn contains(&self, x: &QVector) -> bool {
        x.dim() == self.dim && self.normals.iter().all(|f| !f.dot(x).is_negative())
    }

    /// Exactly `n` extreme rays (they are then linearly independent).
    pub fn is_simplicial(&self) -> bool {
        self.rays.len() == self.dim
    }

    /// `{x : ⟨f, x⟩ ≥ 0}` as a polyhedron.
    pub fn as_polyhedron(&self) -> Polyhedron {
        Polyhedron::new(
            self.dim,
            self.normals
                .iter()
                .map(|f| Inequality::new(f.clone(), Rational::zero()))
                .collect(),
        )
        .expect("normals have the cone dimension")
    }
}

/// `K* = {f : ⟨f, x⟩ ≥ 0 ∀x ∈ K}`, recomputed from the rays of `K`.
pub fn dual_cone(k: &Cone) -> Cone {
    let rays = canonical(dd_rays(k.dim, &k.rays));
    let normals = canonical(dd_rays(k.dim, &k.normals));
    Cone {
        dim: k.dim,
        rays,
        normals,
    }
}

/// Minimal generating subset of `cone(generators)`, decided by one membership
/// LP per generator. Fails with a line witness when the cone is not pointed.
pub fn extreme_rays(dim: usize, generators: &[QVector]) -> Result<Vec<QVector>> {
    let gens = prepare(dim, generators)?;
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    // pointed ⟺ some functional is ≥ 1 on every generator
    let positive = Polyhedron::new(
        dim,
        gens.iter()
            .map(|g| Inequality::new(g.clone(), Rational::one()))
            .collect(),
    )?;
    if let Err(farkas) = find_point(&positive) {
        let i = (0..gens.len())
            .find(|&i| farkas[i].is_positive())
            .expect("Farkas multipliers are nonzero");
        return Err(Error::NotPointed {
            line: positive.inequalities()[i].normal.clone(),
        });
    }
    let mut out = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let others: Vec<QVector> = gens
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, h)| h.clone())
            .collect();
        if !in_cone_of(&others, g) {
            out.push(g.clone());
        }
    }
    Ok(out)
}

/// Membership of `x` in `cone(generators)` by an LP over the multipliers.
pub fn in_cone_of(generators: &[QVector], x: &QVector) -> bool {
    cone_combination(generators, x).is_some()
}

/// Nonnegative multipliers `λ` with `Σ λᵢ gᵢ = x`, if any.
pub fn cone_combination(generators: &[QVector], x: &QVector) -> Option<QVector> {
    let k = generators.len();
    if k == 0 {
        return x.is_zero().then(QVector::default);
    }
    let mut ineqs: Vec<Inequality> = (0..k)
        .map(|i| Inequality::new(QVector::unit(k, i), Rational::zero()))
        .collect();
    for c in 0..x.dim() {
        let row: QVector = generators.iter().map(|g| g[c].clone()).collect();
        ineqs.push(Inequality::new(row.clone(), x[c].clone()));
        ineqs.push(Inequality::new(-row, -&x[c]));
    }
    let p = Polyhedron::new(k, ineqs).expect("dimensions agree");
    find_point(&p).ok()
}

fn prepare(dim: usize, vectors: &[QVector]) -> Result<Vec<QVector>> {
    if dim == 0 {
        return Err(Error::Argument("cone dimension must be positive".into()));
    }
    for v in vectors {
        check_dim(dim, v.dim())?;
    }
    Ok(canonical(
        vectors.iter().filter(|v| !v.is_zero()).cloned().collect(),
    ))
}

fn canonical(vectors: Vec<QVector>) -> Vec<QVector> {
    let mut out: Vec<QVector> = vectors.iter().map(QVector::primitive).collect();
    out.sort();
    out.dedup();
    out.reverse();
    out
}

fn first_kernel_vector(rows: &[QVector], dim: usize) -> QVector {
    kernel(rows, dim)
        .into_iter()
        .next()
        .expect("rank deficiency leaves a kernel")
        .sign_normalized()
}

#[derive(Clone, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn new(bits: usize) -> Self {
        ZeroSet(vec![0; bits.div_ceil(64).max(1)])
    }
    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn intersect(&self, other: &ZeroSet) -> ZeroSet {
        ZeroSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }
    fn is_superset_of(&self, other: &ZeroSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

/// Extreme rays of `{x : ⟨a, x⟩ ≥ 0 ∀a}`; the constraints must have full rank.
pub(crate) fn dd_rays(dim: usize, constraints: &[QVector]) -> Vec<QVector> {
    let basis_idx = independent_subset(constraints, dim);
    assert_eq!(
        basis_idx.len(),
        dim,
        "constraint system must have full rank"
    );
    let basis = QMatrix::from_rows(
        dim,
        basis_idx.iter().map(|&i| constraints[i].clone()).collect(),
    );
    let inv = inverse(&basis).expect("independent rows");
    let total = constraints.len();
    // column i of the inverse is tight on every basis row but the i-th
    let mut rays: Vec<(QVector, ZeroSet)> = (0..dim)
        .map(|i| {
            let col: QVector = inv.rows().iter().map(|r| r[i].clone()).collect();
            let mut z = ZeroSet::new(total);
            for (j, &b) in basis_idx.iter().enumerate() {
                if j != i {
                    z.insert(b);
                }
            }
            (col.primitive(), z)
        })
        .collect();

    for (j, a) in constraints.iter().enumerate() {
        if basis_idx.contains(&j) {
            continue;
        }
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut zero = Vec::new();
        for (idx, (r, _)) in rays.iter().enumerate() {
            let s = a.dot(r);
            match s.signum() {
                1 => pos.push((idx, s)),
                -1 => neg.push((idx, s)),
                _ => zero.push(idx),
            }
        }
        if neg.is_empty() {
            for &idx in &zero {
                rays[idx].1.insert(j);
            }
            continue;
        }
        let mut fresh = Vec::new();
        for (p, sp) in &pos {
            for (n, sn) in &neg {
                let common = rays[*p].1.intersect(&rays[*n].1);
                if common.len() + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(idx, (_, z))| idx == *p || idx == *n || !z.is_superset_of(&common));
                if !adjacent {
                    continue;
                }
                let combo = &rays[*n].0.scale(sp) - &rays[*p].0.scale(sn);
                let mut z = common;
                z.insert(j);
                fresh.push((combo.primitive(), z));
            }
        }
        let mut next: Vec<(QVector, ZeroSet)> =
            Vec::with_capacity(pos.len() + zero.len() + fresh.len());
        for (idx, _) in &pos {
            next.push(rays[*idx].clone());
        }
        for &idx in &zero {
            let (r, mut z) = rays[idx].clone();
            z.insert(j);
            next.push((r, z));
        }
        next.extend(fresh);
        rays = next;
    }
    rays.into_iter().map(|(r, _)| r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::rational::qv;

    fn four_ray() -> Cone {
        Cone::from_rays(
            3,
            &[
                qv(&[1, 0, 1]),
                qv(&[0, 1, 1]),
                qv(&[-1, 0, 1]),
                qv(&[0, -1, 1]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn orthant_is_self_dual() {
        let k = Cone::from_rays(2, &[qv(&[1, 0]), qv(&[0, 1])]).unwrap();
        assert_eq!(k, Cone::orthant(2));
        assert_eq!(dual_cone(&k), k);
        assert_eq!(k.normals(), &[qv(&[1, 0]), qv(&[0, 1])]);
    }

    #[test]
    fn four_ray_dual() {
        let k = four_ray();
        let d = dual_cone(&k);
        assert_eq!(
            d.rays(),
            &[
                qv(&[1, 1, 1]),
                qv(&[1, -1, 1]),
                qv(&[-1, 1, 1]),
                qv(&[-1, -1, 1])
            ]
        );
        // every pairing is nonnegative and each dual ray is tight on two primal rays
        for f in d.rays() {
            let tight = k.rays().iter().filter(|r| f.dot(r).is_zero()).count();
            assert!(k.rays().iter().all(|r| !f.dot(r).is_negative()));
            assert!(tight >= 2);
        }
        assert_eq!(dual_cone(&d), k);
    }

    #[test]
    fn redundant_generator_is_dropped() {
        let gens = [qv(&[1, 0]), qv(&[0, 1]), qv(&[1, 1])];
        assert_eq!(
            extreme_rays(2, &gens).unwrap(),
            vec![qv(&[1, 0]), qv(&[0, 1])]
        );
        assert_eq!(
            Cone::from_rays(2, &gens).unwrap().rays(),
            &[qv(&[1, 0]), qv(&[0, 1])]
        );
    }

    #[test]
    fn simplicial_generators_are_extreme() {
        let gens = [qv(&[2, 1, 0]), qv(&[0, 1, 0]), qv(&[1, 1, 3])];
        let mut expected = gens.to_vec();
        expected.sort();
        expected.reverse();
        assert_eq!(extreme_rays(3, &gens).unwrap(), expected);
        assert!(Cone::from_rays(3, &gens).unwrap().is_simplicial());
    }

    #[test]
    fn full_space_is_not_pointed() {
        let gens = [qv(&[1, 0]), qv(&[-1, 0]), qv(&[0, 1]), qv(&[0, -1])];
        assert_eq!(dd_rays(2, &gens), Vec::<QVector>::new());
        assert_eq!(
            Cone::from_rays(2, &gens),
            Err(Error::NotPointed { line: qv(&[1, 0]) })
        );
        assert!(matches!(
            extreme_rays(2, &gens),
            Err(Error::NotPointed { .. })
        ));
        assert!(matches!(
            Cone::from_inequalities(2, &[]),
            Err(Error::NotPointed { .. })
        ));
    }

    #[test]
    fn half_line_is_not_generating() {
        assert_eq!(
            Cone::from_rays(2, &[qv(&[1, 1])]),
            Err(Error::NotGenerating {
                normal: qv(&[1, -1])
            })
        );
    }

    #[test]
    fn inequality_input_round_trip() {
        let k = four_ray();
        let again = Cone::from_inequalities(3, k.normals()).unwrap();
        assert_eq!(again, k);
    }

    #[test]
    fn membership_lp_matches_normals() {
        let k = four_ray();
        for x in [
            qv(&[0, 0, 1]),
            qv(&[1, 0, 0]),
            qv(&[1, 1, 2]),
            qv(&[1, 1, 1]),
        ] {
            assert_eq!(k.contains(&x), in_cone_of(k.rays(), &x), "{x:?}");
        }
    }
}
