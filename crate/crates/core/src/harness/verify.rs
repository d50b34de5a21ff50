//! Standalone re-checking of reports.
//!
//! Only the report itself and rational arithmetic are used here: systems
//! are rebuilt from the stored matrix, ranks come from a local elimination
//! and Farkas certificates are checked term by term.

use std::fmt;

use super::files::{ReportFile, ResultEntry};
use crate::geometry::{FarkasCertificate, QVector, Rational};
use crate::order::{Certificate, Property, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyFailure {
    pub context: String,
    pub message: String,
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.context, self.message)
    }
}

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn dot(a: &QVector, b: &QVector) -> Rational {
    a.iter()
        .zip(b.iter())
        .fold(Rational::zero(), |acc, (x, y)| &acc + &(x * y))
}

fn rank(rows: &[QVector]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.iter().map(|r| r.entries().to_vec()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] / &m[r][c];
            for k in c..cols {
                let d = &factor * &m[r][k];
                m[i][k] = &m[i][k] - &d;
            }
        }
        r += 1;
    }
    r
}

/// `a = λb` for some `λ > 0`.
fn positive_multiple(a: &QVector, b: &QVector) -> bool {
    let Some(i) = b.iter().position(|v| !v.is_zero()) else {
        return false;
    };
    let lambda = &a[i] / &b[i];
    lambda.is_positive() && a.iter().zip(b.iter()).all(|(x, y)| *x == &lambda * y)
}

fn apply(f: &[QVector], x: &QVector) -> QVector {
    f.iter().map(|row| dot(row, x)).collect()
}

fn support(y: &QVector) -> Vec<usize> {
    (0..y.dim()).filter(|&j| !y[j].is_zero()).collect()
}

type Row = (QVector, Rational);

fn support_rows(f: &[QVector], t: &[usize]) -> Vec<Row> {
    let n = f.first().map_or(0, QVector::dim);
    let mut rows = Vec::new();
    let mut total = QVector::zeros(n);
    for (j, row) in f.iter().enumerate() {
        rows.push((row.clone(), Rational::zero()));
        if t.contains(&j) {
            total = &total + row;
        } else {
            rows.push((-row, Rational::zero()));
        }
    }
    rows.push((total, Rational::one()));
    rows
}

/// `f ≥ f(x₁)`, `f ≥ f(x₂)`, `f ≤ f(x₃)`, `f ≤ f(x₄)` for every row.
fn interpolation_rows(f: &[QVector], quad: [&QVector; 4]) -> Vec<Row> {
    let mut rows = Vec::new();
    for row in f {
        rows.push((row.clone(), dot(row, quad[0])));
        rows.push((row.clone(), dot(row, quad[1])));
        rows.push((-row, -dot(row, quad[2])));
        rows.push((-row, -dot(row, quad[3])));
    }
    rows
}

fn check_farkas(system: &[Row], cert: &FarkasCertificate) -> Check {
    ensure(!cert.terms.is_empty(), || "empty Farkas certificate".into())?;
    let n = cert.terms[0].normal.dim();
    let mut combo = QVector::zeros(n);
    let mut rhs = Rational::zero();
    for (i, t) in cert.terms.iter().enumerate() {
        ensure(t.multiplier.is_positive(), || {
            format!("term {i} has multiplier {}", t.multiplier)
        })?;
        ensure(t.normal.dim() == n, || {
            format!("term {i} has the wrong dimension")
        })?;
        ensure(
            system.iter().any(|(a, b)| *a == t.normal && *b == t.offset),
            || {
                format!(
                    "term {i} ({} ≥ {}) is not a row of the system",
                    t.normal, t.offset
                )
            },
        )?;
        combo = &combo + &t.normal.scale(&t.multiplier);
        rhs = &rhs + &(&t.offset * &t.multiplier);
    }
    ensure(combo.is_zero(), || {
        format!("combination of normals is {combo}, not 0")
    })?;
    ensure(rhs.is_positive(), || {
        format!("combination of offsets is {rhs}, not positive")
    })
}

struct Context<'a> {
    n: usize,
    f: &'a [QVector],
    rays: &'a [QVector],
    /// `(label, evaluation row)` of every ambient coordinate.
    ambient: Vec<(String, QVector)>,
    elements: Vec<(&'a str, &'a QVector)>,
}

impl Context<'_> {
    fn in_cone(&self, x: &QVector) -> bool {
        self.f.iter().all(|row| !dot(row, x).is_negative())
    }

    fn check_name(&self, name: &Option<String>, x: &QVector) -> Check {
        match name {
            None => Ok(()),
            Some(n) => ensure(self.elements.iter().any(|(e, c)| e == n && *c == x), || {
                format!("`{n}` does not name {x}")
            }),
        }
    }

    fn check_covered(&self, covered: &[crate::order::CoveredSupport]) -> Check {
        for c in covered {
            ensure(!c.ray.is_zero() && self.in_cone(&c.ray), || {
                format!("{} is not a nonzero positive element", c.ray)
            })?;
            let s = support(&apply(self.f, &c.ray));
            ensure(s.iter().all(|j| c.support.contains(j)), || {
                format!("support of F{} is not inside {:?}", c.ray, c.support)
            })?;
        }
        Ok(())
    }

    fn check_support_system(&self, t: &[usize], farkas: &FarkasCertificate) -> Check {
        ensure(!t.is_empty() && t.iter().all(|&j| j < self.f.len()), || {
            format!("bad support {t:?}")
        })?;
        check_farkas(&support_rows(self.f, t), farkas)
    }

    fn check_result(&self, r: &ResultEntry) -> Check {
        use Certificate as C;
        use Property as P;
        match (r.property, r.verdict, &r.witness, &r.certificate) {
            (P::Pointed, true, Witness::None, C::InteriorFunctional { functional, rays }) => {
                ensure(rays.as_slice() == self.rays, || {
                    "rays differ from the canonical rays".into()
                })?;
                ensure(
                    rays.iter().all(|x| dot(functional, x).is_positive()),
                    || format!("{functional} is not strictly positive on every ray"),
                )
            }
            (P::Directed, true, Witness::None, C::SpanningRays { rays }) => {
                ensure(rays.iter().all(|x| self.in_cone(x)), || {
                    "a ray is not positive".into()
                })?;
                ensure(rank(rays) == self.n, || "rays do not span the space".into())
            }
            (P::Rdp, true, Witness::None, C::Simplicial { rays }) => {
                ensure(rays.as_slice() == self.rays, || {
                    "rays differ from the canonical rays".into()
                })?;
                ensure(rays.len() == self.n && rank(rays) == self.n, || {
                    format!("{} rays are not a basis", rays.len())
                })
            }
            (P::Rdp, false, Witness::Quadruple { x1, x2, x3, x4 }, C::Interpolation { farkas }) => {
                for (lo, hi) in [(x1, x3), (x1, x4), (x2, x3), (x2, x4)] {
                    ensure(self.in_cone(&(hi - lo)), || format!("{lo} ≰ {hi}"))?;
                }
                check_farkas(&interpolation_rows(self.f, [x1, x2, x3, x4]), farkas)
            }
            (P::Rdp, false, Witness::None, C::SimplicialityOnly { ray_count }) => {
                ensure(*ray_count == self.rays.len() && *ray_count > self.n, || {
                    format!("{ray_count} rays do not make a non-simplicial cone")
                })
            }
            (
                P::Pervasive | P::WeaklyPervasive | P::PropertyP,
                true,
                Witness::None,
                C::Covered { covered, .. },
            ) => self.check_covered(covered),
            (
                P::Pervasive,
                false,
                Witness::Element {
                    b,
                    name,
                    image,
                    positive_support,
                },
                C::SupportSystem { support: t, farkas },
            ) => {
                self.check_name(name, b)?;
                ensure(*image == apply(self.f, b), || {
                    format!("image of {b} is not {image}")
                })?;
                let pos: Vec<usize> = (0..image.dim())
                    .filter(|&j| image[j].is_positive())
                    .collect();
                ensure(pos == *positive_support && pos == *t, || {
                    format!("positive support of {image} is {pos:?}")
                })?;
                self.check_support_system(t, farkas)
            }
            (
                P::WeaklyPervasive | P::PropertyP,
                false,
                Witness::Meet {
                    elements,
                    names,
                    images,
                    support: s,
                    separator,
                },
                C::SupportSystem { support: t, farkas },
            ) => {
                ensure(elements.len() >= 2, || "a meet needs two elements".into())?;
                ensure(
                    r.property != P::WeaklyPervasive || elements.len() == 2,
                    || "a pairwise witness has more than two elements".into(),
                )?;
                ensure(
                    names.len() == elements.len() && images.len() == elements.len(),
                    || "names and images do not match the elements".into(),
                )?;
                let mut meet: Option<QVector> = None;
                for ((e, name), img) in elements.iter().zip(names).zip(images) {
                    self.check_name(name, e)?;
                    ensure(!e.is_zero() && self.in_cone(e), || {
                        format!("{e} is not strictly positive")
                    })?;
                    ensure(*img == apply(self.f, e), || {
                        format!("image of {e} is not {img}")
                    })?;
                    meet = Some(match meet {
                        None => img.clone(),
                        Some(m) => m
                            .iter()
                            .zip(img.iter())
                            .map(|(a, b)| a.clone().min(b.clone()))
                            .collect(),
                    });
                }
                let meet = meet.expect("at least two elements");
                ensure(support(&meet) == *s && s == t, || {
                    format!("support of the meet is {:?}", support(&meet))
                })?;
                self.check_support_system(t, farkas)?;
                if let Some(sep) = separator {
                    let [b1, b2] = elements.as_slice() else {
                        return Err("a separator needs exactly two elements".into());
                    };
                    let d = b1 - b2;
                    ensure(
                        self.in_cone(&(&sep.v - &d)) && self.in_cone(&(&sep.v + &d)),
                        || format!("{} is not above ±(b₁ − b₂)", sep.v),
                    )?;
                    let w = &sep.violation;
                    let from_cover = self.f.contains(&w.functional);
                    let from_ambient = self
                        .ambient
                        .iter()
                        .any(|(l, row)| *l == w.label && *row == w.functional);
                    ensure(from_cover || from_ambient, || {
                        format!("`{}` is not a positive functional of the model", w.label)
                    })?;
                    let s = b1 + b2;
                    ensure(w.value == dot(&w.functional, &sep.v), || {
                        "wrong violation value".into()
                    })?;
                    ensure(
                        w.bound == dot(&w.functional, &s) || w.bound == dot(&w.functional, &-&s),
                        || "wrong violation bound".into(),
                    )?;
                    ensure(w.value < w.bound, || {
                        format!("{} is not below {}", w.value, w.bound)
                    })?;
                }
                Ok(())
            }
            (P::Fordable, true, Witness::None, C::Singletons { realizers }) => {
                ensure(realizers.len() == self.f.len(), || {
                    "one realizer per coordinate".into()
                })?;
                for (j, s) in realizers.iter().enumerate() {
                    ensure(apply(self.f, s) == QVector::unit(self.f.len(), j), || {
                        format!("F{s} is not the unit vector {j}")
                    })?;
                }
                Ok(())
            }
            (
                P::Fordable,
                false,
                Witness::Coordinate {
                    index, functional, ..
                },
                C::Kernel { coordinate, basis },
            ) => {
                ensure(index == coordinate && *index < self.f.len(), || {
                    "bad coordinate".into()
                })?;
                ensure(self.f[*index] == *functional, || {
                    format!("row {index} is not {functional}")
                })?;
                let others: Vec<QVector> = (0..self.f.len())
                    .filter(|k| k != index)
                    .map(|k| self.f[k].clone())
                    .collect();
                ensure(
                    basis.len() == self.n - rank(&others) && rank(basis) == basis.len(),
                    || "basis does not have the kernel dimension".into(),
                )?;
                for v in basis {
                    ensure(apply(&others, v).is_zero(), || {
                        format!("{v} is not in the kernel")
                    })?;
                    ensure(dot(functional, v).is_zero(), || {
                        format!("row {index} is nonzero at {v}")
                    })?;
                }
                Ok(())
            }
            (p, v, w, c) => Err(format!(
                "verdict {v} for {p} does not fit a {} witness with a {} certificate",
                kind(w),
                kind(c)
            )),
        }
    }
}

fn kind<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_value(x)
        .ok()
        .and_then(|v| v.get("kind").and_then(|k| k.as_str().map(str::to_string)))
        .unwrap_or_else(|| "?".into())
}

fn check_model(report: &ReportFile) -> Result<Context<'_>, String> {
    let input = &report.model.input;
    let canon = &report.model.canonical;
    let n = input.dimension;
    let (rays, normals) = (&canon.rays, &canon.normals);
    for v in rays.iter().chain(normals) {
        ensure(v.dim() == n, || format!("{v} does not have dimension {n}"))?;
    }
    ensure(rank(rays) == n, || {
        "canonical rays do not span the space".into()
    })?;
    ensure(rank(normals) == n, || {
        "the canonical cone contains a line".into()
    })?;
    for r in rays {
        let tight: Vec<QVector> = normals
            .iter()
            .filter(|a| dot(a, r).is_zero())
            .cloned()
            .collect();
        ensure(normals.iter().all(|a| !dot(a, r).is_negative()), || {
            format!("ray {r} violates a normal")
        })?;
        ensure(rank(&tight) + 1 == n, || format!("ray {r} is not extreme"))?;
    }
    for a in normals {
        let tight: Vec<QVector> = rays
            .iter()
            .filter(|r| dot(a, r).is_zero())
            .cloned()
            .collect();
        ensure(rank(&tight) + 1 == n, || {
            format!("normal {a} is not a facet")
        })?;
    }

    let mut ambient = Vec::new();
    let sets = (&input.cone_rays, &input.cone_inequalities, &input.subspace);
    match sets {
        (Some(given), None, None) => {
            for g in given {
                ensure(
                    g.is_zero() || normals.iter().all(|a| !dot(a, g).is_negative()),
                    || format!("input ray {g} is outside the canonical cone"),
                )?;
            }
            for r in rays {
                ensure(given.iter().any(|g| positive_multiple(r, g)), || {
                    format!("canonical ray {r} is not an input ray")
                })?;
            }
        }
        (None, Some(_), None) | (None, None, Some(_)) => {
            let rows: Vec<QVector> = match sets {
                (_, Some(h), _) => h.clone(),
                (_, _, Some(s)) => {
                    ensure(s.basis.len() == n, || {
                        "subspace basis size differs from the dimension".into()
                    })?;
                    let rows: Vec<QVector> = (0..s.ambient)
                        .map(|t| s.basis.iter().map(|b| b[t].clone()).collect())
                        .collect();
                    for (t, row) in rows.iter().enumerate() {
                        let label = s
                            .labels
                            .as_ref()
                            .and_then(|l| l.get(t).cloned())
                            .unwrap_or_else(|| t.to_string());
                        ambient.push((label, row.clone()));
                    }
                    rows
                }
                _ => unreachable!(),
            };
            for r in rays {
                ensure(rows.iter().all(|a| !dot(a, r).is_negative()), || {
                    format!("canonical ray {r} violates an input inequality")
                })?;
            }
            for a in normals {
                ensure(rows.iter().any(|h| positive_multiple(a, h)), || {
                    format!("canonical normal {a} is not an input inequality")
                })?;
            }
        }
        _ => return Err("the model must have exactly one cone source".into()),
    }
    for e in &input.elements {
        ensure(e.coords.dim() == n, || {
            format!("element `{}` has the wrong dimension", e.name)
        })?;
    }

    let cover = &report.cover;
    ensure(cover.f == *normals && cover.m == normals.len(), || {
        "cover matrix differs from the canonical normals".into()
    })?;
    ensure(cover.row_labels.len() == cover.m, || {
        "one label per cover row".into()
    })?;
    ensure(cover.verified.bipositive, || "cover not bipositive".into())?;
    ensure(cover.verified.order_dense, || {
        "cover not order dense".into()
    })?;
    match &cover.majorant {
        Some(u) if cover.verified.majorizing => ensure(
            u.dim() == n && apply(&cover.f, u).iter().all(Rational::is_positive),
            || format!("F{u} is not strictly positive"),
        )?,
        _ => return Err("cover lacks a majorizing element".into()),
    }
    Ok(Context {
        n,
        f: &cover.f,
        rays,
        ambient,
        elements: input
            .elements
            .iter()
            .map(|e| (e.name.as_str(), &e.coords))
            .collect(),
    })
}

const IMPLIED: [(Property, Property); 5] = [
    (Property::Pervasive, Property::WeaklyPervasive),
    (Property::Pervasive, Property::Fordable),
    (Property::Rdp, Property::WeaklyPervasive),
    (Property::Rdp, Property::PropertyP),
    (Property::PropertyP, Property::WeaklyPervasive),
];

/// Re-checks every certificate in `report`; an empty list means it passed.
pub fn verify_report(report: &ReportFile) -> Vec<VerifyFailure> {
    let mut out = Vec::new();
    let ctx = match check_model(report) {
        Ok(c) => c,
        Err(message) => {
            out.push(VerifyFailure {
                context: "model".into(),
                message,
            });
            return out;
        }
    };
    for r in &report.results {
        if let Err(message) = ctx.check_result(r) {
            out.push(VerifyFailure {
                context: r.property.to_string(),
                message,
            });
        }
    }
    let verdict = |p: Property| {
        report
            .results
            .iter()
            .find(|r| r.property == p)
            .map(|r| r.verdict)
    };
    let broken = IMPLIED
        .iter()
        .filter(|(a, b)| verdict(*a) == Some(true) && verdict(*b) == Some(false))
        .count();
    if broken != report.suite_violations.len() {
        out.push(VerifyFailure {
            context: "suite_violations".into(),
            message: format!(
                "{broken} implications fail but {} are listed",
                report.suite_violations.len()
            ),
        });
    }
    out
}
