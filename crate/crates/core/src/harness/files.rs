use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::QVector;
use crate::order::{
    Certificate, ConeSource, DecisionReport, ModelSpec, NamedElement, PreRieszModel, Property,
    Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceFile {
    pub ambient: usize,
    pub basis: Vec<QVector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementFile {
    pub name: String,
    pub coords: QVector,
}

/// On-disk model description. Exactly one cone source must be present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub dimension: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone_rays: Option<Vec<QVector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone_inequalities: Option<Vec<QVector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subspace: Option<SubspaceFile>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub elements: Vec<ElementFile>,
}

impl ModelFile {
    pub fn to_spec(&self) -> Result<ModelSpec> {
        let source = match (&self.cone_rays, &self.cone_inequalities, &self.subspace) {
            (Some(r), None, None) => ConeSource::Rays(r.clone()),
            (None, Some(h), None) => ConeSource::Inequalities(h.clone()),
            (None, None, Some(s)) => ConeSource::Subspace {
                ambient: s.ambient,
                basis: s.basis.clone(),
                labels: s.labels.clone(),
            },
            _ => {
                return Err(Error::Parse(
                    "exactly one of `cone_rays`, `cone_inequalities`, `subspace` is required"
                        .into(),
                ))
            }
        };
        Ok(ModelSpec {
            name: self.name.clone(),
            dim: self.dimension,
            source,
            elements: self
                .elements
                .iter()
                .map(|e| NamedElement::new(e.name.clone(), e.coords.clone()))
                .collect(),
        })
    }

    pub fn from_model(model: &PreRieszModel) -> Self {
        let mut file = ModelFile {
            name: Some(model.name().to_string()),
            dimension: model.dim(),
            cone_rays: None,
            cone_inequalities: None,
            subspace: None,
            elements: model
                .elements()
                .iter()
                .map(|e| ElementFile {
                    name: e.name.clone(),
                    coords: e.coords.clone(),
                })
                .collect(),
        };
        match model.source() {
            ConeSource::Rays(r) => file.cone_rays = Some(r.clone()),
            ConeSource::Inequalities(h) => file.cone_inequalities = Some(h.clone()),
            ConeSource::Subspace { ambient, basis, .. } => {
                file.subspace = Some(SubspaceFile {
                    ambient: *ambient,
                    basis: basis.clone(),
                    labels: model.provenance().map(|p| p.labels.clone()),
                })
            }
        }
        file
    }
}

/// Deserializes JSON, reporting the failing field path and position.
pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    let mut de = serde_json::Deserializer::from_str(text);
    let value: T = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            Error::Parse(inner.to_string())
        } else {
            Error::Parse(format!("field `{path}`: {inner}"))
        }
    })?;
    de.end().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(value)
}

pub fn parse_model(text: &str) -> Result<ModelFile> {
    parse_json(text)
}

pub fn parse_report(text: &str) -> Result<ReportFile> {
    parse_json(text)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CanonicalForm {
    pub rays: Vec<QVector>,
    pub normals: Vec<QVector>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelEcho {
    pub input: ModelFile,
    pub canonical: CanonicalForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Verified {
    pub bipositive: bool,
    pub majorizing: bool,
    pub order_dense: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub m: usize,
    #[serde(rename = "F")]
    pub f: Vec<QVector>,
    pub row_labels: Vec<String>,
    pub majorant: Option<QVector>,
    pub verified: Verified,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResultEntry {
    pub property: Property,
    pub verdict: bool,
    pub witness: Witness,
    pub certificate: Certificate,
    pub lp_count: u64,
    /// Wall time, only recorded on request so reports stay reproducible.
    pub time_ms: Option<f64>,
}

impl ResultEntry {
    pub fn from_report(report: DecisionReport, timing: bool) -> Self {
        ResultEntry {
            property: report.property,
            verdict: report.verdict,
            witness: report.witness,
            certificate: report.certificate,
            lp_count: report.stats.lp_count,
            time_ms: timing.then_some(report.stats.elapsed.as_secs_f64() * 1e3),
        }
    }
}

/// A broken implication `premise ⇒ conclusion` with both results.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteViolation {
    pub model: String,
    pub premise: ResultEntry,
    pub conclusion: ResultEntry,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportFile {
    pub model: ModelEcho,
    pub cover: CoverFile,
    pub results: Vec<ResultEntry>,
    pub suite_violations: Vec<SuiteViolation>,
}

impl ReportFile {
    pub fn result(&self, property: Property) -> Option<&ResultEntry> {
        self.results.iter().find(|r| r.property == property)
    }
}
