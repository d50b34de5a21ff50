use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use preriesz::geometry::{Limits, Rational};
use preriesz::harness::{
    analyze, example10_sweep, parse_model, parse_report, random_specs, suite_row, summarize,
    to_json, verify_report, ModelFile,
};
use preriesz::order::{build_model, PreRieszModel, Property};
use preriesz::zoo::{make, ZooSpec};
use preriesz::Error;

#[derive(Parser)]
#[command(
    name = "preriesz",
    version,
    about = "Exact analysis of finite-dimensional pre-Riesz spaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide properties of a model file and print a report
    Analyze {
        /// Model file, or `-` for stdin
        model: String,
        /// Comma-separated properties (default: all)
        #[arg(long, value_delimiter = ',')]
        properties: Option<Vec<Property>>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Record wall time per decider (makes reports non-reproducible)
        #[arg(long)]
        timing: bool,
    },
    /// Emit a model file from the built-in zoo
    Zoo {
        /// simplicial, four_ray, example10, example13, example14 or random
        name: String,
        #[command(flatten)]
        params: ZooParams,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the witness and certificate for one property
    Witness {
        model: String,
        #[arg(long)]
        property: Property,
    },
    /// Re-check every certificate in a report
    Verify { report: PathBuf },
    /// Run the implication suite on seeded random models
    Harness {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long, default_value_t = 8)]
        max_rays: usize,
        /// File for open-question candidates and the example10 sweep
        #[arg(long)]
        candidates_out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct ZooParams {
    #[arg(long = "N")]
    big_n: Option<usize>,
    #[arg(long = "M")]
    big_m: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    rays: Option<usize>,
    #[arg(long)]
    bound: Option<i64>,
    /// Comma-separated grid of rationals for example13/example14
    #[arg(long, value_delimiter = ',')]
    grid: Option<Vec<String>>,
}

fn read_input(path: &str) -> anyhow::Result<String> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    }
    Ok(text)
}

fn load_model(path: &str) -> anyhow::Result<PreRieszModel> {
    let file = parse_model(&read_input(path)?).with_context(|| format!("parsing {path}"))?;
    Ok(build_model(&file.to_spec()?)?)
}

/// Writes via a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> anyhow::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => write_atomic(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn zoo_spec(name: &str, p: ZooParams) -> anyhow::Result<ZooSpec> {
    let grid = p
        .grid
        .map(|g| {
            g.iter()
                .map(|s| {
                    s.parse::<Rational>()
                        .with_context(|| format!("grid point `{s}`"))
                })
                .collect::<anyhow::Result<Vec<_>>>()
        })
        .transpose()
        .map_err(|e| Error::Argument(format!("{e:#}")))?;
    Ok(match name {
        "simplicial" => ZooSpec::Simplicial {
            n: p.n.unwrap_or(3),
        },
        "four_ray" => ZooSpec::FourRay,
        "example10" => ZooSpec::Example10 {
            n: p.big_n.unwrap_or(4),
            m: p.big_m.unwrap_or(4),
        },
        "example13" => ZooSpec::Example13 {
            d: p.d.unwrap_or(4),
            grid,
        },
        "example14" => ZooSpec::Example14 {
            n: p.big_n.unwrap_or(3),
            grid,
        },
        "random" => ZooSpec::Random {
            seed: p.seed.unwrap_or(0),
            n: p.n.unwrap_or(3),
            rays: p.rays.unwrap_or(5),
            bound: p.bound.unwrap_or(3),
        },
        other => return Err(Error::Argument(format!("unknown zoo model `{other}`")).into()),
    })
}

fn run(cmd: Command) -> anyhow::Result<ExitCode> {
    let limits = Limits::default();
    match cmd {
        Command::Analyze {
            model,
            properties,
            out,
            timing,
        } => {
            let m = load_model(&model)?;
            let props = properties.unwrap_or_else(|| Property::ALL.to_vec());
            let report = analyze(&m, &props, &limits, timing)?;
            emit(out.as_deref(), &to_json(&report))?;
        }
        Command::Zoo { name, params, out } => {
            let spec = zoo_spec(&name, params)?;
            let model = make(&spec)?;
            emit(out.as_deref(), &to_json(&ModelFile::from_model(&model)))?;
        }
        Command::Witness { model, property } => {
            let m = load_model(&model)?;
            let report = analyze(&m, &[property], &limits, false)?;
            print!("{}", to_json(&report.results[0]));
        }
        Command::Verify { report } => {
            let text = std::fs::read_to_string(&report)
                .with_context(|| format!("reading {}", report.display()))?;
            let parsed =
                parse_report(&text).with_context(|| format!("parsing {}", report.display()))?;
            let failures = verify_report(&parsed);
            if failures.is_empty() {
                println!("ok: {} results verified", parsed.results.len());
            } else {
                for f in &failures {
                    eprintln!("FAIL {f}");
                }
                return Ok(ExitCode::from(1));
            }
        }
        Command::Harness {
            seed,
            count,
            max_dim,
            max_rays,
            candidates_out,
        } => {
            if count == 0 {
                bail!(Error::Argument("--count must be positive".into()));
            }
            let specs = random_specs(seed, count, max_dim, max_rays);
            let rows: Vec<_> = specs
                .par_iter()
                .map(|spec| {
                    let label = format!("{spec:?}");
                    let row = make(spec).and_then(|m| suite_row(&m, &limits));
                    (label, row)
                })
                .collect();
            let outcome = summarize(rows);
            let summary = serde_json::json!({
                "models": outcome.models,
                "violations": outcome.violations,
                "errors": outcome.errors,
                "candidates": outcome.candidates.len(),
            });
            println!("{}", serde_json::to_string_pretty(&summary)?);
            if let Some(path) = candidates_out {
                let log = serde_json::json!({
                    "candidates": outcome.candidates,
                    "example10_sweep": example10_sweep(4, 4, &limits),
                });
                write_atomic(&path, &(serde_json::to_string_pretty(&log)? + "\n"))?;
            }
            if !outcome.violations.is_empty() {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<Error>() {
        Some(Error::Capacity { .. } | Error::Budget(_)) => 3,
        Some(Error::Invariant(_) | Error::Cover(_)) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
