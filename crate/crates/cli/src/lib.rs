//! Command-line front end for `quasiperiod`.
//!
//! [`run`] takes the argument vector and returns the exit code together with
//! everything destined for stdout and stderr, so the whole surface is testable
//! without spawning a process. Exit codes: 0 success, 1 a check failed,
//! 2 malformed input.

pub mod format;
mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use quasiperiod::{counting, ehrhart, equidecomp, fixtures, reflexive};
use serde::Serialize;

use format::{to_document, CertificateFile, FormatError, PolytopeFile};
use report::{
    CollapseOut, CountOut, ErrorBody, ErrorOut, QuasiPolynomialOut, ReciprocityOut, TwelveOut, VerificationOut,
    WrittenOut,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "quasiperiod",
    version,
    about = "Exact Ehrhart quasi-polynomials and equidecomposability certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count lattice points in the k-th dilate of a polytope.
    Count {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long, default_value_t = 1)]
        dilation: i64,
    },
    /// Compute the Ehrhart quasi-polynomial, presented with its minimal period.
    Ehrhart {
        #[arg(long)]
        polytope: PathBuf,
    },
    /// Compare the minimal quasi-period with the denominator.
    Collapse {
        #[arg(long)]
        polytope: PathBuf,
    },
    /// Verify an equidecomposability certificate.
    Verify {
        #[arg(long)]
        certificate: PathBuf,
    },
    /// Check reciprocity between the quasi-polynomial and interior counts.
    Reciprocity {
        #[arg(long)]
        polytope: PathBuf,
        #[arg(long = "max-k", default_value_t = 5)]
        max_k: u64,
    },
    /// Check length(P) + length(P*) = 12 for a reflexive polygon.
    Twelve {
        #[arg(long)]
        polygon: PathBuf,
    },
    /// Emit a built-in fixture as a JSON document.
    Example {
        #[arg(long)]
        name: String,
        /// `NAME=value` (e.g. `D=5`) or a bare integer.
        #[arg(long)]
        param: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn success<T: Serialize>(code: i32, value: &T) -> Self {
        let mut stdout = serde_json::to_string(value).expect("reports serialize");
        stdout.push('\n');
        Self {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Errors surfaced to the user as `{"error": {...}}` on stderr.
#[derive(Debug)]
struct CliError {
    kind: &'static str,
    message: String,
}

impl CliError {
    fn new(kind: &'static str, message: impl Into<String>) -> Self {
        Self {
            kind,
            message: message.into(),
        }
    }

    fn into_outcome(self) -> Outcome {
        let body = ErrorOut {
            error: ErrorBody {
                kind: self.kind,
                message: self.message,
            },
        };
        let mut stderr = serde_json::to_string(&body).expect("errors serialize");
        stderr.push('\n');
        Outcome {
            code: EXIT_MALFORMED,
            stdout: String::new(),
            stderr,
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Geometry(inner) => inner.into(),
            FormatError::Json(_) => CliError::new("invalid-json", e.to_string()),
            other => CliError::new("malformed-input", other.to_string()),
        }
    }
}

impl From<quasiperiod::Error> for CliError {
    fn from(e: quasiperiod::Error) -> Self {
        use quasiperiod::Error as E;
        let kind = match e {
            E::UnsupportedDimension { .. } => "dimension-cap-exceeded",
            E::DimensionMismatch { .. } => "dimension-mismatch",
            E::NotConvex | E::NotReflexive(_) | E::NotCentered | E::NotIntegral(_) => "invalid-polygon",
            _ => "malformed-input",
        };
        CliError::new(kind, e.to_string())
    }
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => CliError::new("usage", first_line(&e.to_string())).into_outcome(),
            };
        }
    };
    execute(cli.command).unwrap_or_else(CliError::into_outcome)
}

fn first_line(s: &str) -> &str {
    s.lines().next().unwrap_or("").trim_start_matches("error: ")
}

fn execute(command: Command) -> Result<Outcome, CliError> {
    match command {
        Command::Count { polytope, dilation } => {
            let p = read_polytope(&polytope)?;
            if dilation < 0 {
                return Err(quasiperiod::Error::InvalidDilation(dilation).into());
            }
            let count = counting::count_points(&p, dilation)?;
            Ok(Outcome::success(EXIT_OK, &CountOut { count }))
        }
        Command::Ehrhart { polytope } => {
            let q = ehrhart::ehrhart_of(&read_polytope(&polytope)?)?;
            Ok(Outcome::success(EXIT_OK, &QuasiPolynomialOut::from(&q.reduced())))
        }
        Command::Collapse { polytope } => {
            let report = ehrhart::minimal_quasi_period(&read_polytope(&polytope)?)?;
            Ok(Outcome::success(EXIT_OK, &CollapseOut::from(&report)))
        }
        Command::Verify { certificate } => {
            let file: CertificateFile = read_json(&certificate)?;
            let cert = file.parse()?;
            let report = equidecomp::verify_certificate(&cert);
            let code = if report.is_pass() { EXIT_OK } else { EXIT_FAILED };
            Ok(Outcome::success(code, &VerificationOut::from(&report)))
        }
        Command::Reciprocity { polytope, max_k } => {
            if max_k == 0 {
                return Err(CliError::new("malformed-input", "--max-k must be at least 1"));
            }
            let report = ehrhart::reciprocity_check(&read_polytope(&polytope)?, max_k)?;
            let code = if report.passed { EXIT_OK } else { EXIT_FAILED };
            Ok(Outcome::success(code, &ReciprocityOut::from(&report)))
        }
        Command::Twelve { polygon } => {
            let file: PolytopeFile = read_json(&polygon)?;
            let centered = file.parse_polygon()?.centered()?;
            let report = reflexive::twelve_check(&centered)?;
            let dual = reflexive::dual_polygon(&centered)?;
            let code = if report.passed { EXIT_OK } else { EXIT_FAILED };
            Ok(Outcome::success(code, &TwelveOut::new(&centered, &dual, &report)))
        }
        Command::Example { name, param, out } => {
            let param = param.as_deref().map(|p| parse_param(&name, p)).transpose()?;
            let document = match fixtures::by_name(&name, param)? {
                fixtures::Fixture::Polytope(p) => to_document(&PolytopeFile::emit(&p)),
                fixtures::Fixture::Certificate(c) => to_document(&CertificateFile::emit(&c)?),
                fixtures::Fixture::Polygon(p) => to_document(&PolytopeFile::emit_polygon(&p)),
            };
            match out {
                None => Ok(Outcome {
                    code: EXIT_OK,
                    stdout: document,
                    stderr: String::new(),
                }),
                Some(path) => {
                    std::fs::write(&path, document)
                        .map_err(|e| CliError::new("io", format!("cannot write {}: {e}", path.display())))?;
                    Ok(Outcome::success(
                        EXIT_OK,
                        &WrittenOut {
                            written: path.display().to_string(),
                        },
                    ))
                }
            }
        }
    }
}

/// Accepts `KEY=value` where `KEY` is the fixture's parameter name, or a bare value.
fn parse_param(name: &str, raw: &str) -> Result<i64, CliError> {
    let expected = fixtures::CATALOG
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| CliError::new("malformed-input", format!("unknown fixture {name:?}")))?
        .1
        .ok_or_else(|| CliError::new("malformed-input", format!("fixture {name:?} takes no parameter")))?;
    let value = match raw.split_once('=') {
        Some((key, value)) if key == expected => value,
        Some((key, _)) => {
            return Err(CliError::new(
                "malformed-input",
                format!("fixture {name:?} takes parameter {expected}, not {key}"),
            ))
        }
        None => raw,
    };
    value
        .trim()
        .parse()
        .map_err(|_| CliError::new("malformed-input", format!("parameter {value:?} is not an integer")))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::new("io", format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::new("invalid-json", format!("{}: {e}", path.display())))
}

fn read_polytope(path: &Path) -> Result<quasiperiod::RationalPolytope, CliError> {
    let file: PolytopeFile = read_json(path)?;
    Ok(file.parse()?)
}
