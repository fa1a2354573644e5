//! `exflex`: command-line driver for extrusion-symmetry rigidity analysis.
//!
//! Exit status: 0 on success, 2 for unreadable or malformed input, 3 when a
//! precondition of the analysis fails, 4 on an internal numeric
//! inconsistency.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use exflex::rigidity::expand;
use exflex::symmetry::fowler_guest_count;
use exflex::{
    analyze, extrude_framework, hyperplane_pinning, minimal_pinning, push_report, read_framework, render_svg,
    write_framework, AnalysisOptions, Error, ErrorCategory, ExtrusionSpec, Framework, PinningSpec,
};
use nalgebra::DVector;

#[derive(Parser)]
#[command(name = "exflex", version, about = "Rigidity and flexibility analysis of extruded frameworks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Character table, per-irrep counts, blocks and finite-flex tests.
    Analyze {
        path: PathBuf,
        /// Relative rank tolerance.
        #[arg(long, env = "EXFLEX_TOL", default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Samples per regularity test.
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Extrudes an unextruded framework along the given directions.
    Extrude {
        path: PathBuf,
        /// Extrusion direction as comma-separated coordinates; repeat for
        /// several directions.
        #[arg(long = "tau", required = true, allow_hyphen_values = true)]
        taus: Vec<String>,
        /// Hyperplanes containing the matching direction, comma-separated;
        /// `-` for none. Matched to `--tau` by position.
        #[arg(long = "fix")]
        fixes: Vec<String>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Adds a pinning to a framework document.
    Pin {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = PinMode::Minimal)]
        mode: PinMode,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Runs the numerical linear push from the single flex of a minimally
    /// pinned framework. Unpinned documents are pinned minimally first.
    Push {
        path: PathBuf,
        #[arg(long, env = "EXFLEX_TOL", default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "max-iter", default_value_t = 1000)]
        max_iter: usize,
        #[arg(long)]
        json: bool,
    },
    /// Draws the framework as SVG, optionally with a symmetric flex.
    Sketch {
        path: PathBuf,
        /// `irrep:index` of the flex to draw.
        #[arg(long)]
        flex: Option<String>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PinMode {
    Minimal,
    Hyperplane,
}

/// Failure carrying the exit status to report.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e.category() {
            ErrorCategory::Input => 2,
            ErrorCategory::Precondition => 3,
            ErrorCategory::Numeric => 4,
        };
        let mut message = e.to_string();
        if let Error::Precondition(text) = &e {
            if text.contains("hyperplane pinning") {
                message.push_str("\nhint: run `exflex pin --mode hyperplane <document>` first");
            }
        }
        Failure { code, message }
    }
}

fn input_failure(message: String) -> Failure {
    Failure { code: 2, message }
}

fn load(path: &Path) -> Result<(Framework, PinningSpec), Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_failure(format!("cannot read {}: {e}", path.display())))?;
    let (f, pin) = read_framework(&text)?;
    Ok((f, pin.unwrap_or_default()))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| input_failure(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_vector(s: &str) -> Result<DVector<f64>, Failure> {
    let values = s
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| input_failure(format!("bad direction `{s}`: {e}")))?;
    Ok(DVector::from_vec(values))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze {
            path,
            tol,
            seed,
            samples,
            json,
        } => {
            let (f, pin) = load(&path)?;
            let report = analyze(&f, &pin, AnalysisOptions { tolerance: tol, seed, samples })?;
            emit(None, &if json { report.to_json() } else { report.to_text() })
        }
        Command::Extrude {
            path,
            taus,
            fixes,
            output,
        } => {
            let (base, _) = load(&path)?;
            if fixes.len() > taus.len() {
                return Err(input_failure("more --fix lists than --tau directions".into()));
            }
            let directions = taus.iter().map(|t| parse_vector(t)).collect::<Result<Vec<_>, _>>()?;
            let mut fixed_sets: Vec<BTreeSet<String>> = fixes
                .iter()
                .map(|s| {
                    s.split(',')
                        .map(str::trim)
                        .filter(|id| !id.is_empty() && *id != "-")
                        .map(String::from)
                        .collect()
                })
                .collect();
            fixed_sets.resize(directions.len(), BTreeSet::new());
            let f = extrude_framework(&base, &ExtrusionSpec::new(directions, fixed_sets))?;
            emit(output.as_deref(), &write_framework(&f, None))
        }
        Command::Pin { path, mode, output } => {
            let (f, _) = load(&path)?;
            let (f, pin) = match mode {
                PinMode::Minimal => {
                    let pin = minimal_pinning(&f)?;
                    (f, pin)
                }
                PinMode::Hyperplane => {
                    let (pin, spec) = hyperplane_pinning(&f)?;
                    (f.with_active(spec.active)?, pin)
                }
            };
            emit(output.as_deref(), &write_framework(&f, Some(&pin)))
        }
        Command::Push {
            path,
            tol,
            seed,
            max_iter,
            json,
        } => {
            let (f, pin) = load(&path)?;
            let pin = if pin.is_empty() { minimal_pinning(&f)? } else { pin };
            let report = push_report(&f, &pin, max_iter, AnalysisOptions { tolerance: tol, seed, samples: 0 })?;
            emit(None, &if json { report.to_json() } else { report.to_text() })
        }
        Command::Sketch { path, flex, output } => {
            let (f, pin) = load(&path)?;
            let velocity = match flex {
                None => None,
                Some(spec) => {
                    let (irrep, index) = spec
                        .split_once(':')
                        .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                        .ok_or_else(|| input_failure(format!("--flex expects irrep:index, got `{spec}`")))?;
                    let mobility = fowler_guest_count(&f, &pin)?;
                    let flexes = mobility.detected_flexes.get(irrep).ok_or_else(|| Failure {
                        code: 3,
                        message: format!("irrep {irrep} out of range"),
                    })?;
                    if index >= flexes.ncols() {
                        return Err(Failure {
                            code: 3,
                            message: format!("irrep {irrep} has {} flexes", flexes.ncols()),
                        });
                    }
                    Some(expand(&f, &pin, &flexes.column(index).into_owned()))
                }
            };
            emit(output.as_deref(), &render_svg(&f, velocity.as_ref()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
