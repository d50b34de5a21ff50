//! Upper-bound sets, order comparison and disjointness.

use super::model::PreRieszModel;
use crate::error::{check_dim, Error, Result};
use crate::geometry::{polyhedron_relation, Inequality, Polyhedron, QVector, Relation};

/// `Aᵘ = ⋂_{a ∈ A} (a + K)` as a polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperSet {
    base: Vec<QVector>,
    region: Polyhedron,
}

impl UpperSet {
    pub fn base(&self) -> &[QVector] {
        &self.base
    }

    /// Inequalities `⟨f, x⟩ ≥ ⟨f, a⟩` for all normals `f` and `a ∈ A`.
    pub fn region(&self) -> &Polyhedron {
        &self.region
    }

    pub fn contains(&self, x: &QVector) -> bool {
        self.region.contains(x)
    }
}

pub fn upper_set(model: &PreRieszModel, a: &[QVector]) -> Result<UpperSet> {
    if a.is_empty() {
        return Err(Error::Argument("upper set of an empty family".into()));
    }
    let n = model.dim();
    let mut ineqs = Vec::with_capacity(a.len() * model.cone().normals().len());
    for x in a {
        check_dim(n, x.dim())?;
        for f in model.cone().normals() {
            ineqs.push(Inequality::new(f.clone(), f.dot(x)));
        }
    }
    Ok(UpperSet {
        base: a.to_vec(),
        region: Polyhedron::new(n, ineqs)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
    Incomparable,
}

pub fn compare(model: &PreRieszModel, x: &QVector, y: &QVector) -> Result<Comparison> {
    check_dim(model.dim(), x.dim())?;
    check_dim(model.dim(), y.dim())?;
    if x == y {
        return Ok(Comparison::Equal);
    }
    let d = y - x;
    Ok(if model.is_positive(&d) {
        Comparison::Less
    } else if model.is_positive(&-&d) {
        Comparison::Greater
    } else {
        Comparison::Incomparable
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Disjointness {
    pub disjoint: bool,
    /// Relation of `{x+y, −x−y}ᵘ` to `{x−y, −x+y}ᵘ`.
    pub relation: Relation,
    /// Supports of `Fx` and `Fy` in the canonical cover.
    pub supports: (Vec<usize>, Vec<usize>),
}

/// Decides `x ⊥ y` from the upper-set identity and cross-checks it against
/// disjointness of the cover supports.
pub fn disjoint(model: &PreRieszModel, x: &QVector, y: &QVector) -> Result<Disjointness> {
    check_dim(model.dim(), x.dim())?;
    check_dim(model.dim(), y.dim())?;
    let sum = x + y;
    let diff = x - y;
    let plus = upper_set(model, &[sum.clone(), -&sum])?;
    let minus = upper_set(model, &[diff.clone(), -&diff])?;
    let relation = polyhedron_relation(plus.region(), minus.region())?;
    let intrinsic = relation == Relation::Equal;

    let f = model.cone().normal_matrix();
    let sx = f.mul_vec(x).support();
    let sy = f.mul_vec(y).support();
    let cover = sx.iter().all(|j| !sy.contains(j));
    if intrinsic != cover {
        return Err(Error::Invariant(format!(
            "disjointness of {x} and {y}: upper sets say {intrinsic}, cover supports say {cover}"
        )));
    }
    Ok(Disjointness {
        disjoint: intrinsic,
        relation,
        supports: (sx, sy),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{qv, Cone};
    use crate::order::{build_model, ModelSpec};

    fn lattice() -> PreRieszModel {
        build_model(&ModelSpec::from_rays(2, vec![qv(&[1, 0]), qv(&[0, 1])])).unwrap()
    }

    fn four_ray() -> PreRieszModel {
        build_model(&ModelSpec::from_rays(
            3,
            vec![
                qv(&[1, 0, 1]),
                qv(&[-1, 0, 1]),
                qv(&[0, 1, 1]),
                qv(&[0, -1, 1]),
            ],
        ))
        .unwrap()
    }

    #[test]
    fn upper_set_of_zero_is_the_cone() {
        let m = lattice();
        let u = upper_set(&m, &[qv(&[0, 0])]).unwrap();
        assert_eq!(u.region(), &Cone::orthant(2).as_polyhedron());
    }

    #[test]
    fn upper_set_of_units_is_shifted_orthant() {
        let m = lattice();
        let u = upper_set(&m, &[qv(&[1, 0]), qv(&[0, 1])]).unwrap();
        let expected = upper_set(&m, &[qv(&[1, 1])]).unwrap();
        assert_eq!(
            polyhedron_relation(u.region(), expected.region()).unwrap(),
            Relation::Equal
        );
        assert!(u.contains(&qv(&[1, 1])) && !u.contains(&qv(&[1, 0])));
    }

    #[test]
    fn empty_family_is_rejected() {
        assert!(matches!(
            upper_set(&lattice(), &[]),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn comparisons() {
        let m = lattice();
        assert_eq!(
            compare(&m, &qv(&[1, 2]), &qv(&[2, 3])).unwrap(),
            Comparison::Less
        );
        let k = four_ray();
        let z = qv(&[0, 0, 0]);
        assert_eq!(
            compare(&k, &qv(&[0, 0, 1]), &z).unwrap(),
            Comparison::Greater
        );
        assert_eq!(
            compare(&k, &qv(&[1, 0, 0]), &z).unwrap(),
            Comparison::Incomparable
        );
        assert_eq!(compare(&k, &z, &z).unwrap(), Comparison::Equal);
    }

    #[test]
    fn disjointness() {
        let m = lattice();
        assert!(disjoint(&m, &qv(&[1, 0]), &qv(&[0, 1])).unwrap().disjoint);
        assert!(!disjoint(&m, &qv(&[1, 1]), &qv(&[0, 1])).unwrap().disjoint);
        let k = four_ray();
        let d = disjoint(&k, &qv(&[1, 0, 1]), &qv(&[1, 0, -1])).unwrap();
        assert!(d.disjoint);
        assert_eq!(d.supports, (vec![0, 1], vec![2, 3]));
        assert!(
            disjoint(&k, &qv(&[3, -1, 2]), &qv(&[0, 0, 0]))
                .unwrap()
                .disjoint
        );
    }
}
