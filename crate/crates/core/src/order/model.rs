use crate::error::{check_dim, Error, Result};
use crate::geometry::linalg::rank;
use crate::geometry::{Cone, QVector};

/// How the positive cone of a model was described.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeSource {
    Rays(Vec<QVector>),
    Inequalities(Vec<QVector>),
    /// A subspace `D ⊆ ℝ^ambient` spanned by `basis`, ordered coordinatewise.
    /// Model coordinates are coefficients with respect to `basis`.
    Subspace {
        ambient: usize,
        basis: Vec<QVector>,
        labels: Option<Vec<String>>,
    },
}

/// An element of the space with a human-readable name. Deciders prefer
/// named elements when choosing witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedElement {
    pub name: String,
    pub coords: QVector,
}

impl NamedElement {
    pub fn new(name: impl Into<String>, coords: QVector) -> Self {
        NamedElement {
            name: name.into(),
            coords,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSpec {
    pub name: Option<String>,
    pub dim: usize,
    pub source: ConeSource,
    pub elements: Vec<NamedElement>,
}

impl ModelSpec {
    pub fn from_rays(dim: usize, rays: Vec<QVector>) -> Self {
        ModelSpec {
            name: None,
            dim,
            source: ConeSource::Rays(rays),
            elements: Vec::new(),
        }
    }

    pub fn from_inequalities(dim: usize, normals: Vec<QVector>) -> Self {
        ModelSpec {
            name: None,
            dim,
            source: ConeSource::Inequalities(normals),
            elements: Vec::new(),
        }
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }
}

/// Data retained from a subspace description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubspaceProvenance {
    pub ambient: usize,
    pub basis: Vec<QVector>,
    pub labels: Vec<String>,
}

impl SubspaceProvenance {
    /// Ambient coordinates `Σ cᵢ basisᵢ` of model coordinates `c`.
    pub fn evaluate(&self, coords: &QVector) -> QVector {
        let mut out = QVector::zeros(self.ambient);
        for (b, c) in self.basis.iter().zip(coords.iter()) {
            if !c.is_zero() {
                out = &out + &b.scale(c);
            }
        }
        out
    }

    /// Row `t` of the evaluation matrix: the functional `c ↦ (Σ cᵢ basisᵢ)_t`.
    pub fn evaluation_row(&self, t: usize) -> QVector {
        self.basis.iter().map(|b| b[t].clone()).collect()
    }
}

/// A finite-dimensional ordered vector space `(ℝⁿ, K)` with `K` a closed,
/// pointed, generating polyhedral cone; such a space is Archimedean and
/// directed, hence pre-Riesz.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreRieszModel {
    name: String,
    cone: Cone,
    provenance: Option<SubspaceProvenance>,
    elements: Vec<NamedElement>,
    source: ConeSource,
}

impl PreRieszModel {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn provenance(&self) -> Option<&SubspaceProvenance> {
        self.provenance.as_ref()
    }

    pub fn elements(&self) -> &[NamedElement] {
        &self.elements
    }

    /// The description the model was built from.
    pub fn source(&self) -> &ConeSource {
        &self.source
    }

    pub fn element(&self, name: &str) -> Option<&QVector> {
        self.elements
            .iter()
            .find(|e| e.name == name)
            .map(|e| &e.coords)
    }

    pub fn name_of(&self, x: &QVector) -> Option<&str> {
        self.elements
            .iter()
            .find(|e| &e.coords == x)
            .map(|e| e.name.as_str())
    }

    pub fn is_positive(&self, x: &QVector) -> bool {
        self.cone.contains(x)
    }

    /// Labels of ambient coordinates whose evaluation functional is a
    /// positive multiple of `functional`; empty for direct models.
    pub fn ambient_labels_for(&self, functional: &QVector) -> Vec<String> {
        let Some(p) = &self.provenance else {
            return Vec::new();
        };
        let target = functional.primitive();
        (0..p.ambient)
            .filter(|&t| {
                let row = p.evaluation_row(t);
                !row.is_zero() && row.primitive() == target
            })
            .map(|t| p.labels[t].clone())
            .collect()
    }
}

pub fn build_model(spec: &ModelSpec) -> Result<PreRieszModel> {
    let n = spec.dim;
    if n == 0 {
        return Err(Error::Argument("dimension must be positive".into()));
    }
    let (cone, provenance) = match &spec.source {
        ConeSource::Rays(rays) => (Cone::from_rays(n, rays)?, None),
        ConeSource::Inequalities(normals) => (Cone::from_inequalities(n, normals)?, None),
        ConeSource::Subspace {
            ambient,
            basis,
            labels,
        } => {
            check_dim(n, basis.len())?;
            for b in basis {
                check_dim(*ambient, b.dim())?;
            }
            if rank(basis, *ambient) < n {
                return Err(Error::Argument(
                    "subspace basis vectors are linearly dependent".into(),
                ));
            }
            let labels = match labels {
                Some(l) => {
                    check_dim(*ambient, l.len())?;
                    l.clone()
                }
                None => (0..*ambient).map(|t| t.to_string()).collect(),
            };
            let prov = SubspaceProvenance {
                ambient: *ambient,
                basis: basis.clone(),
                labels,
            };
            let rows: Vec<QVector> = (0..*ambient).map(|t| prov.evaluation_row(t)).collect();
            (Cone::from_inequalities(n, &rows)?, Some(prov))
        }
    };
    for e in &spec.elements {
        check_dim(n, e.coords.dim())?;
    }
    Ok(PreRieszModel {
        name: spec.name.clone().unwrap_or_else(|| "model".to_string()),
        cone,
        provenance,
        elements: spec.elements.clone(),
        source: spec.source.clone(),
    })
}
