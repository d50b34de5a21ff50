//! Fordability, pointedness and directedness.
//!
//! In the cover `ℝᵐ` the disjoint complement of `y` depends only on
//! `supp(y)`, and `i(S)ᵈ` is determined by the union of the supports of
//! `Fs`, `s ∈ S`. Realizable unions form a union-closed family, which
//! contains every subset of `{1..m}` iff it contains every singleton. So the
//! model is fordable iff each coordinate `j` is the exact support of some
//! `Fs`, a question about the kernel of the other rows.

use crate::cover::FunctionalRepresentation;
use crate::error::Result;
use crate::geometry::linalg::kernel;
use crate::geometry::{QVector, Rational};
use crate::order::{measured, Certificate, DecisionReport, Property, Witness};

pub fn decide_fordable(rep: &FunctionalRepresentation) -> Result<DecisionReport> {
    let ((verdict, witness, certificate), stats) = measured(|| {
        let f = rep.f();
        let mut realizers = Vec::with_capacity(rep.m());
        for j in 0..rep.m() {
            let others: Vec<QVector> = (0..rep.m())
                .filter(|&k| k != j)
                .map(|k| f.row(k).clone())
                .collect();
            let basis = kernel(&others, rep.dim());
            let row = f.row(j);
            match basis.iter().find(|v| !row.dot(v).is_zero()) {
                Some(v) => realizers.push(v.scale(&row.dot(v).recip())),
                None => {
                    return (
                        false,
                        Witness::Coordinate {
                            index: j,
                            functional: row.clone(),
                            ambient: rep.model().ambient_labels_for(row),
                        },
                        Certificate::Kernel {
                            coordinate: j,
                            basis,
                        },
                    )
                }
            }
        }
        (true, Witness::None, Certificate::Singletons { realizers })
    });
    Ok(DecisionReport {
        property: Property::Fordable,
        verdict,
        witness,
        certificate,
        stats,
    })
}

/// Always true for a built model; the certificate is the sum of the
/// normals, which is strictly positive on every ray.
pub fn decide_pointed(rep: &FunctionalRepresentation) -> Result<DecisionReport> {
    let (functional, stats) = measured(|| {
        rep.f()
            .rows()
            .iter()
            .fold(QVector::zeros(rep.dim()), |acc, f| &acc + f)
    });
    let rays = rep.model().cone().rays().to_vec();
    let verdict = rays.iter().all(|r| functional.dot(r) > Rational::zero());
    Ok(DecisionReport {
        property: Property::Pointed,
        verdict,
        witness: Witness::None,
        certificate: Certificate::InteriorFunctional { functional, rays },
        stats,
    })
}

/// Always true for a built model; the certificate lists the spanning rays.
pub fn decide_directed(rep: &FunctionalRepresentation) -> Result<DecisionReport> {
    let rays = rep.model().cone().rays().to_vec();
    let verdict = crate::geometry::linalg::rank(&rays, rep.dim()) == rep.dim();
    Ok(DecisionReport {
        property: Property::Directed,
        verdict,
        witness: Witness::None,
        certificate: Certificate::SpanningRays { rays },
        stats: Default::default(),
    })
}
