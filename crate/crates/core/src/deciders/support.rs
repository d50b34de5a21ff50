//! Supports of positive elements in the canonical cover.
//!
//! `F` maps `K` into the nonnegative orthant, so there is no cancellation:
//! the support of `Fb` for `b = Σ λᵣ r` is the union of the supports of the
//! rays with `λᵣ > 0`. Every question about supports of positive elements
//! therefore reduces to the ray supports.

use std::collections::BTreeMap;

use crate::cover::FunctionalRepresentation;
use crate::error::{Error, Result};
use crate::geometry::{Limits, QVector};

/// A support set together with positive elements realizing it: a single
/// element for ray supports and unions, the elements of the meet for
/// intersections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportMember {
    pub support: Vec<usize>,
    pub realizers: Vec<QVector>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportFamily {
    /// One entry per extreme ray, in canonical ray order.
    pub ray_supports: Vec<SupportMember>,
    /// All unions of ray supports; the realizer is the sum of the rays.
    pub union_closure: Vec<SupportMember>,
    /// All nonempty finite intersections of members of `union_closure`.
    pub intersection_closure: Vec<SupportMember>,
}

pub(crate) fn ray_supports(rep: &FunctionalRepresentation) -> Vec<SupportMember> {
    rep.model()
        .cone()
        .rays()
        .iter()
        .map(|r| SupportMember {
            support: rep.apply(r).support(),
            realizers: vec![r.clone()],
        })
        .collect()
}

pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|j| big.contains(j))
}

pub(crate) fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|j| b.contains(j)).collect()
}

fn union(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Closure of `seed` under a binary operation, breadth first so that each
/// member keeps the first (shortest) realizer list found.
pub(crate) fn closure(
    seed: &[SupportMember],
    op: impl Fn(&[usize], &[usize]) -> Vec<usize>,
    combine: impl Fn(&SupportMember, &SupportMember) -> Vec<QVector>,
    limits: &Limits,
) -> Result<Vec<SupportMember>> {
    let mut found: BTreeMap<Vec<usize>, SupportMember> = BTreeMap::new();
    let mut frontier = Vec::new();
    for s in seed {
        if !s.support.is_empty() && !found.contains_key(&s.support) {
            found.insert(s.support.clone(), s.clone());
            frontier.push(s.clone());
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for a in &frontier {
            for b in seed {
                let support = op(&a.support, &b.support);
                if support.is_empty() || found.contains_key(&support) {
                    continue;
                }
                let member = SupportMember {
                    support: support.clone(),
                    realizers: combine(a, b),
                };
                found.insert(support, member.clone());
                if found.len() > limits.max_closure {
                    return Err(Error::Capacity {
                        what: "support closure",
                        found: found.len(),
                        limit: limits.max_closure,
                    });
                }
                next.push(member);
            }
        }
        frontier = next;
    }
    Ok(found.into_values().collect())
}

fn concat(a: &SupportMember, b: &SupportMember) -> Vec<QVector> {
    let mut out = a.realizers.clone();
    for r in &b.realizers {
        if !out.contains(r) {
            out.push(r.clone());
        }
    }
    out
}

pub fn support_family(rep: &FunctionalRepresentation, limits: &Limits) -> Result<SupportFamily> {
    let rays = ray_supports(rep);
    if rays.len() > limits.max_rays {
        return Err(Error::Capacity {
            what: "extreme rays",
            found: rays.len(),
            limit: limits.max_rays,
        });
    }
    let union_closure = closure(
        &rays,
        union,
        |a, b| vec![&a.realizers[0] + &b.realizers[0]],
        limits,
    )?;
    let intersection_closure = closure(&union_closure, intersect, concat, limits)?;
    Ok(SupportFamily {
        ray_supports: rays,
        union_closure,
        intersection_closure,
    })
}
