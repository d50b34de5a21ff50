//! Riesz decomposition property.
//!
//! A closed generating cone in finite dimension has RDP exactly when it is a
//! lattice cone, i.e. simplicial. A negative verdict is backed by an
//! explicit interpolation failure: with `x₃ = 0` and a random `x₄`, two
//! distinct maximal points `x₁ ≠ x₂` of `L = {z : z ≤ 0, z ≤ x₄}` admit no
//! `z` with `x₁, x₂ ≤ z ≤ x₃, x₄`, since such a `z` lies in `L` above both.
//! Maximal points are found by maximizing `⟨Fᵀλ, z⟩` over `L` for strictly
//! positive `λ`; the optimum is maximal because `F` is injective.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::model::PreRieszModel;
use super::report::{measured, Certificate, DecisionReport, Property, Witness};
use crate::error::Result;
use crate::geometry::lp::find_point;
use crate::geometry::{
    lp_solve, FarkasCertificate, Inequality, LpOutcome, Polyhedron, QMatrix, QVector, Rational,
    Sense,
};

const SEED: u64 = 0x5eed_0f72_6470;
const ANCHORS: usize = 64;
const DIRECTIONS: usize = 8;

/// The system `{z : x₁ ≤ z, x₂ ≤ z, z ≤ x₃, z ≤ x₄}` in cover coordinates.
pub fn interpolation_system(f: &QMatrix, quad: [&QVector; 4]) -> Vec<Inequality> {
    let mut rows = Vec::with_capacity(4 * f.nrows());
    for row in f.rows() {
        rows.push(Inequality::new(row.clone(), row.dot(quad[0])));
        rows.push(Inequality::new(row.clone(), row.dot(quad[1])));
        rows.push(Inequality::new(-row, -row.dot(quad[2])));
        rows.push(Inequality::new(-row, -row.dot(quad[3])));
    }
    rows
}

pub fn decide_rdp(model: &PreRieszModel) -> Result<DecisionReport> {
    let (out, stats) = measured(|| rdp_inner(model));
    let (verdict, witness, certificate) = out?;
    Ok(DecisionReport {
        property: Property::Rdp,
        verdict,
        witness,
        certificate,
        stats,
    })
}

fn rdp_inner(model: &PreRieszModel) -> Result<(bool, Witness, Certificate)> {
    let cone = model.cone();
    if cone.is_simplicial() {
        return Ok((
            true,
            Witness::None,
            Certificate::Simplicial {
                rays: cone.rays().to_vec(),
            },
        ));
    }
    let n = model.dim();
    let f = cone.normal_matrix();
    let m = f.nrows();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let zero = QVector::zeros(n);
    for _ in 0..ANCHORS {
        let x4: QVector = (0..n)
            .map(|_| Rational::from_int(rng.gen_range(-3..=3)))
            .collect();
        let lower = lower_bounds(&f, &zero, &x4)?;
        let mut found: Option<QVector> = None;
        for _ in 0..DIRECTIONS {
            let lambda: QVector = (0..m)
                .map(|_| Rational::from_int(rng.gen_range(1..=5)))
                .collect();
            let c = f.tr_mul_vec(&lambda);
            let LpOutcome::Optimal { primal, .. } = lp_solve(&c, Sense::Max, &lower)? else {
                continue;
            };
            match &found {
                None => found = Some(primal),
                Some(x1) if *x1 != primal => {
                    let x1 = x1.clone();
                    let rows = interpolation_system(&f, [&x1, &primal, &zero, &x4]);
                    let region = Polyhedron::new(n, rows)?;
                    if let Err(y) = find_point(&region) {
                        let farkas = FarkasCertificate::from_multipliers(&region, &y);
                        return Ok((
                            false,
                            Witness::Quadruple {
                                x1,
                                x2: primal,
                                x3: zero.clone(),
                                x4,
                            },
                            Certificate::Interpolation { farkas },
                        ));
                    }
                }
                Some(_) => {}
            }
        }
    }
    Ok((
        false,
        Witness::None,
        Certificate::SimplicialityOnly {
            ray_count: cone.rays().len(),
        },
    ))
}

/// `{z : Fz ≤ Fa, Fz ≤ Fb}`.
fn lower_bounds(f: &QMatrix, a: &QVector, b: &QVector) -> Result<Polyhedron> {
    let mut rows = Vec::with_capacity(2 * f.nrows());
    for row in f.rows() {
        rows.push(Inequality::new(-row, -row.dot(a)));
        rows.push(Inequality::new(-row, -row.dot(b)));
    }
    Polyhedron::new(f.ncols(), rows)
}
