//! `mhqmo`: build Margenau-Hill quasi-measurement families, fuzzify them
//! and analyze joint measurability from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input-file
//! error, 3 validation error (non-Hermitian input, bad density matrix,
//! out-of-range eta and similar).

mod checks;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::{json, Value};

use mhqmo::compat::{linspace, min_eig_curve, threshold_with};
use mhqmo::eig::eig_hermitian;
use mhqmo::fuzz::Fuzzifier;
use mhqmo::matrix::CMatrix;
use mhqmo::qmo::{qmo_jordan, quasiprob, DensityMatrix, Grouping, QmoFamily};
use mhqmo::scenario::{FamilyBuilder, ScenarioKind};
use mhqmo::tol;
use output::{fmt_e9, to_stable_json, write_atomic};

#[derive(Parser)]
#[command(
    name = "mhqmo",
    version,
    about = "Margenau-Hill quasi-measurement operators: families, fuzzification, joint-measurability thresholds"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a quasi-measurement family at a fixed unsharpness eta
    Build {
        #[command(flatten)]
        source: Source,
        /// Unsharpness parameter in [0, 1]
        #[arg(long, default_value_t = 1.0)]
        eta: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Bisect the compatibility threshold eta* on [0, 1]
    Threshold {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Sample the min-eigenvalue curve over an eta range
    Scan {
        #[command(flatten)]
        source: Source,
        /// Lower end of the eta range
        #[arg(long, default_value_t = 0.0)]
        min: f64,
        /// Upper end of the eta range
        #[arg(long, default_value_t = 1.0)]
        max: f64,
        /// Number of grid points (at least 2)
        #[arg(long, default_value_t = 101)]
        steps: usize,
        /// Also emit every eigenvalue of every element per grid point
        #[arg(long)]
        per_element: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Quasi-probability table of a family against a density matrix
    Quasiprob {
        #[command(flatten)]
        source: Source,
        /// Unsharpness parameter in [0, 1]
        #[arg(long, default_value_t = 1.0)]
        eta: f64,
        /// JSON file holding the density matrix ({"dim": n, "entries": [[re, im], ...]})
        #[arg(long)]
        state: PathBuf,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Run the internal consistency suite and report one line per check
    Verify,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in scenario: qubit, qutrit or two-qubit
    #[arg(long)]
    scenario: Option<String>,
    /// JSON file with {"observables": [matrix, ...], "grouping": [[..], ..]}
    #[arg(long)]
    observables: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

enum CliError {
    /// Bad flags, unreadable or unparsable input files: exit 2.
    Usage(String),
    /// Inputs parsed but violated an invariant: exit 3.
    Validation(String),
    /// The verify suite found a failing check: exit 1.
    Verification(String),
}

impl CliError {
    fn report(self) -> ExitCode {
        match self {
            CliError::Usage(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            CliError::Validation(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(3)
            }
            CliError::Verification(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
        }
    }
}

fn validation(e: mhqmo::Error) -> CliError {
    CliError::Validation(e.to_string())
}

/// A family source: either a built-in scenario or user observables.
enum FamilySource {
    Scenario(FamilyBuilder),
    Custom {
        fuzzifier: Option<Fuzzifier>,
        sharp: QmoFamily,
    },
}

impl FamilySource {
    fn id(&self) -> String {
        match self {
            FamilySource::Scenario(b) => b.kind().name().to_string(),
            FamilySource::Custom { .. } => "custom".to_string(),
        }
    }

    /// Family at a given eta; custom sources without a qubit-embedding
    /// dimension only support eta = 1.
    fn family_at(&self, eta: f64) -> mhqmo::Result<QmoFamily> {
        match self {
            FamilySource::Scenario(b) => b.family_at(eta),
            FamilySource::Custom { fuzzifier, sharp } => {
                if eta == 1.0 {
                    return Ok(sharp.clone());
                }
                match fuzzifier {
                    Some(f) => f.family_at(eta),
                    None => Err(mhqmo::Error::DimNotPowerOfTwo {
                        dim: sharp.space_dim(),
                    }),
                }
            }
        }
    }
}

#[derive(Deserialize)]
struct ObservablesFile {
    observables: Vec<CMatrix>,
    grouping: Vec<Vec<usize>>,
}

fn read_json_file<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("cannot parse {}: {e}", path.display())))
}

fn resolve_source(source: &Source) -> Result<FamilySource, CliError> {
    if let Some(name) = &source.scenario {
        let kind = ScenarioKind::from_name(name).map_err(|e| CliError::Usage(e.to_string()))?;
        return Ok(FamilySource::Scenario(FamilyBuilder::new(kind)));
    }
    let path = source
        .observables
        .as_ref()
        .expect("clap enforces exactly one source");
    let file: ObservablesFile = read_json_file(path)?;
    if file.observables.is_empty() {
        return Err(CliError::Validation("observables list is empty".into()));
    }
    let observables = file
        .observables
        .iter()
        .map(mhqmo::observable::spectral)
        .collect::<mhqmo::Result<Vec<_>>>()
        .map_err(validation)?;
    let grouping = Grouping::new(file.grouping, observables.len()).map_err(validation)?;
    let sharp = qmo_jordan(&observables, &grouping).map_err(validation)?;
    let fuzzifier = Fuzzifier::new(&sharp).ok();
    Ok(FamilySource::Custom { fuzzifier, sharp })
}

fn positivity_slack() -> Result<f64, CliError> {
    match std::env::var("MHQMO_TOL") {
        Ok(text) => {
            let v: f64 = text
                .parse()
                .map_err(|_| CliError::Usage(format!("MHQMO_TOL must be a float, got `{text}`")))?;
            if !(v.is_finite() && v >= 0.0) {
                return Err(CliError::Usage(format!(
                    "MHQMO_TOL must be a nonnegative finite float, got `{text}`"
                )));
            }
            Ok(v)
        }
        Err(_) => Ok(tol::POSITIVITY_SLACK),
    }
}

fn emit(out: &OutputArgs, contents: String) -> Result<(), CliError> {
    match &out.out {
        Some(path) => write_atomic(path, &contents)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn outcome_label(values: &[f64]) -> String {
    values
        .iter()
        .map(|v| format!("{v}"))
        .collect::<Vec<_>>()
        .join("|")
}

fn cmd_build(source: &Source, eta: f64, out: &OutputArgs) -> Result<(), CliError> {
    if out.format == Format::Csv {
        return Err(CliError::Usage(
            "build emits a family JSON document; csv is not supported".into(),
        ));
    }
    let src = resolve_source(source)?;
    let fam = src.family_at(eta).map_err(validation)?;
    emit(out, to_stable_json(&fam))
}

fn cmd_threshold(source: &Source, out: &OutputArgs, slack: f64) -> Result<(), CliError> {
    if out.format == Format::Csv {
        return Err(CliError::Usage(
            "threshold emits a scalar JSON document; csv is not supported".into(),
        ));
    }
    let src = resolve_source(source)?;
    let result = threshold_with(|eta| src.family_at(eta), 0.0, 1.0, slack).map_err(validation)?;
    emit(out, to_stable_json(json!({ "threshold": result.value() })))
}

fn cmd_scan(
    source: &Source,
    min: f64,
    max: f64,
    steps: usize,
    per_element: bool,
    out: &OutputArgs,
) -> Result<(), CliError> {
    if !(0.0..=1.0).contains(&min) || !(0.0..=1.0).contains(&max) || min >= max {
        return Err(CliError::Usage(format!(
            "eta range [{min}, {max}] must satisfy 0 <= min < max <= 1"
        )));
    }
    if steps < 2 {
        return Err(CliError::Usage("steps must be at least 2".into()));
    }
    let src = resolve_source(source)?;
    let grid = linspace(min, max, steps);
    let points = min_eig_curve(|eta| src.family_at(eta), &grid).map_err(validation)?;

    // per-element eigenvalues reproduce the per-curve structure of the
    // min-eigenvalue figures
    let mut element_rows: Vec<Vec<(Vec<f64>, Vec<f64>)>> = Vec::new();
    if per_element {
        for &eta in &grid {
            let fam = src.family_at(eta).map_err(validation)?;
            let mut row = Vec::with_capacity(fam.elements().len());
            for (o, m) in fam.elements() {
                let eig = eig_hermitian(m).map_err(validation)?;
                row.push((o.values().to_vec(), eig.values));
            }
            element_rows.push(row);
        }
    }

    match out.format {
        Format::Json => {
            let rows: Vec<Value> = points
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let mut row = json!({ "eta": p.eta, "min_eig": p.min_eig });
                    if per_element {
                        let elements: Vec<Value> = element_rows[i]
                            .iter()
                            .map(|(outcome, eigs)| {
                                json!({ "outcome": outcome, "eigenvalues": eigs })
                            })
                            .collect();
                        row["elements"] = Value::Array(elements);
                    }
                    row
                })
                .collect();
            let doc = json!({ "scenario": src.id(), "threshold": Value::Null, "grid": rows });
            emit(out, to_stable_json(doc))
        }
        Format::Csv => {
            let mut header = String::from("eta,min_eig");
            if per_element {
                for (outcome, eigs) in &element_rows[0] {
                    let label = outcome_label(outcome);
                    for k in 1..=eigs.len() {
                        header.push_str(&format!(",eig[{label}]{k}"));
                    }
                }
            }
            let mut text = header;
            text.push('\n');
            for (i, p) in points.iter().enumerate() {
                text.push_str(&fmt_e9(p.eta));
                text.push(',');
                text.push_str(&fmt_e9(p.min_eig));
                if per_element {
                    for (_, eigs) in &element_rows[i] {
                        for v in eigs {
                            text.push(',');
                            text.push_str(&fmt_e9(*v));
                        }
                    }
                }
                text.push('\n');
            }
            emit(out, text)
        }
    }
}

fn cmd_quasiprob(
    source: &Source,
    eta: f64,
    state: &Path,
    out: &OutputArgs,
) -> Result<(), CliError> {
    let src = resolve_source(source)?;
    let matrix: CMatrix = read_json_file(state)?;
    let rho = DensityMatrix::new(matrix).map_err(validation)?;
    let fam = src.family_at(eta).map_err(validation)?;
    let table = quasiprob(&fam, &rho).map_err(validation)?;

    match out.format {
        Format::Json => emit(out, to_stable_json(&table)),
        Format::Csv => {
            let n = fam.observables().len();
            let mut text = (1..=n)
                .map(|k| format!("o{k}"))
                .collect::<Vec<_>>()
                .join(",");
            text.push_str(",p,negative\n");
            for (o, p) in table.entries() {
                for v in o.values() {
                    text.push_str(&format!("{v},"));
                }
                text.push_str(&fmt_e9(*p));
                text.push(',');
                text.push_str(if *p < tol::NEGATIVITY_FLAG {
                    "true"
                } else {
                    "false"
                });
                text.push('\n');
            }
            emit(out, text)
        }
    }
}

fn cmd_verify(slack: f64) -> Result<(), CliError> {
    let results = checks::run_all(slack);
    let mut first_failure: Option<&'static str> = None;
    for check in &results {
        match &check.outcome {
            Ok(detail) => println!("PASS {:<32} {detail}", check.name),
            Err(detail) => {
                println!("FAIL {:<32} {detail}", check.name);
                first_failure.get_or_insert(check.name);
            }
        }
    }
    println!(
        "{} checks, {} failed",
        results.len(),
        results.iter().filter(|c| c.outcome.is_err()).count()
    );
    match first_failure {
        None => Ok(()),
        Some(name) => Err(CliError::Verification(format!(
            "first failing check: {name}"
        ))),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let slack = positivity_slack()?;
    match &cli.command {
        Command::Build { source, eta, out } => cmd_build(source, *eta, out),
        Command::Threshold { source, out } => cmd_threshold(source, out, slack),
        Command::Scan {
            source,
            min,
            max,
            steps,
            per_element,
            out,
        } => cmd_scan(source, *min, *max, *steps, *per_element, out),
        Command::Quasiprob {
            source,
            eta,
            state,
            out,
        } => cmd_quasiprob(source, *eta, state, out),
        Command::Verify => cmd_verify(slack),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => e.report(),
    }
}
