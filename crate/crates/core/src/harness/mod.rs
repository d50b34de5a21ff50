//! Model and report files, the independent report verifier and the
//! implication suite.

mod files;
mod suite;
mod verify;

pub use files::{
    parse_json, parse_model, parse_report, to_json, CanonicalForm, CoverFile, ElementFile,
    ModelEcho, ModelFile, ReportFile, ResultEntry, SubspaceFile, SuiteViolation, Verified,
};
pub use suite::{
    check_implications, example10_sweep, random_specs, run_implication_suite, suite_row, summarize,
    ModelError, OpenCandidate, SuiteOutcome, SuiteRow, SweepRow, IMPLICATIONS,
};
pub use verify::{verify_report, VerifyFailure};

use crate::cover::{functional_representation, verify_cover};
use crate::deciders::decide;
use crate::error::Result;
use crate::geometry::Limits;
use crate::order::{PreRieszModel, Property};

/// Runs the requested deciders on `model` and assembles a report.
pub fn analyze(
    model: &PreRieszModel,
    properties: &[Property],
    limits: &Limits,
    timing: bool,
) -> Result<ReportFile> {
    let rep = functional_representation(model, limits)?;
    let check = verify_cover(&rep)?;
    let results = properties
        .iter()
        .map(|&p| decide(&rep, p, limits).map(|r| ResultEntry::from_report(r, timing)))
        .collect::<Result<Vec<_>>>()?;
    let suite_violations = check_implications(model.name(), &results);
    Ok(ReportFile {
        model: ModelEcho {
            input: ModelFile::from_model(model),
            canonical: CanonicalForm {
                rays: model.cone().rays().to_vec(),
                normals: model.cone().normals().to_vec(),
            },
        },
        cover: CoverFile {
            m: rep.m(),
            f: rep.f().rows().to_vec(),
            row_labels: (0..rep.m()).map(|j| rep.row_label(j)).collect(),
            majorant: check.majorant.clone(),
            verified: Verified {
                bipositive: check.bipositive,
                majorizing: check.majorizing,
                order_dense: check.order_dense,
            },
        },
        results,
        suite_violations,
    })
}
