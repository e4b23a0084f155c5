//! Command-line front end: argument parsing, validation and certificate
//! assembly. Exit codes: 0 verified or computed, 1 hypotheses failed,
//! 2 paper-claim mismatch, 3 input error.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use perfcert_core::certificate::{exit_code_for, Document};
use perfcert_core::elliptic::{Curve, CurvePoint};
use perfcert_core::quadforms::QuadOrder;
use perfcert_core::IntMatrix;

mod report;

pub use report::run;

pub const INPUT_ERROR: i32 = 3;

/// Bound on rational primes tried by `verify-thick --auto`.
pub const AUTO_PRIME_BOUND: u64 = 100;

#[derive(Debug, Parser)]
#[command(
    name = "perfcert",
    version,
    about = "Certificates for locally perfect, non-perfect K-theory classes"
)]
pub struct Cli {
    /// Write the certificate here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Smith normal form of an integer matrix (`rows cols` header, then rows).
    Snf {
        /// Matrix file, or `-` for standard input.
        #[arg(default_value = "-")]
        input: String,
    },
    /// Class group of Z[sqrt(d)] with its reduced forms.
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
    },
    /// Splitting of a rational prime in Z[sqrt(d)].
    FactorPrime {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        p: u64,
    },
    /// Thickened prime over Z[sqrt(d)] that is locally perfect but not perfect.
    VerifyThick(ThickArgs),
    /// Glued surface built from two copies of C x P^1.
    VerifyGlued {
        /// `z` for P^1, or `curve:p,a,b`.
        #[arg(long)]
        pic: String,
        /// A degree for `z`, a point `x,y` for a curve.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
    },
    /// Product of an elliptic curve with a nodal curve.
    VerifyNodal {
        /// `p,a,b` for y^2 = x^3 + ax + b over F_p.
        #[arg(long)]
        curve: String,
        /// `x,y`
        #[arg(long)]
        point: String,
    },
}

#[derive(Debug, Args)]
pub struct ThickArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub d: i64,
    #[arg(long, conflicts_with_all = ["auto"])]
    pub p: Option<u64>,
    #[arg(long, conflicts_with_all = ["auto"])]
    pub q: Option<u64>,
    #[arg(long, conflicts_with_all = ["auto"])]
    pub remove: Option<u64>,
    /// Search primes below 100 for an admissible triple.
    #[arg(long)]
    pub auto: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ThickPrimes {
    Auto,
    Explicit { p: u64, q: u64, remove: Option<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PicSpec {
    ProjectiveLine { degree: i64 },
    Elliptic { curve: Curve, point: CurvePoint },
}

/// A validated request; building one does no mathematics beyond
/// checking the inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invocation {
    Snf {
        matrix: IntMatrix,
    },
    Classgroup {
        order: QuadOrder,
    },
    FactorPrime {
        order: QuadOrder,
        p: u64,
    },
    VerifyThick {
        order: QuadOrder,
        primes: ThickPrimes,
    },
    VerifyGlued {
        input: String,
        pic: PicSpec,
    },
    VerifyNodal {
        curve: Curve,
        point: CurvePoint,
    },
}

impl Invocation {
    pub fn subcommand(&self) -> &'static str {
        match self {
            Invocation::Snf { .. } => "snf",
            Invocation::Classgroup { .. } => "classgroup",
            Invocation::FactorPrime { .. } => "factor-prime",
            Invocation::VerifyThick { .. } => "verify-thick",
            Invocation::VerifyGlued { .. } => "verify-glued",
            Invocation::VerifyNodal { .. } => "verify-nodal",
        }
    }
}

fn point_on(curve: &Curve, s: &str) -> Result<CurvePoint, String> {
    let pt: CurvePoint = s.parse().map_err(|e| format!("{e}"))?;
    if curve.contains(&pt) {
        Ok(pt)
    } else {
        Err(format!(
            "point {pt} is not on y^2 = x^3 + {}x + {} over F_{}",
            curve.a(),
            curve.b(),
            curve.p()
        ))
    }
}

impl TryFrom<CliCommand> for Invocation {
    type Error = String;

    fn try_from(cmd: CliCommand) -> Result<Self, String> {
        let order = |d: i64| QuadOrder::new(d).map_err(|e| e.to_string());
        Ok(match cmd {
            CliCommand::Snf { input } => {
                let text = if input == "-" {
                    std::io::read_to_string(std::io::stdin())
                        .map_err(|e| format!("reading standard input: {e}"))?
                } else {
                    fs::read_to_string(&input).map_err(|e| format!("reading {input}: {e}"))?
                };
                Invocation::Snf {
                    matrix: text.parse().map_err(|e| format!("{e}"))?,
                }
            }
            CliCommand::Classgroup { d } => Invocation::Classgroup { order: order(d)? },
            CliCommand::FactorPrime { d, p } => Invocation::FactorPrime {
                order: order(d)?,
                p,
            },
            CliCommand::VerifyThick(a) => {
                let primes = match (a.auto, a.p, a.q) {
                    (true, _, _) => ThickPrimes::Auto,
                    (false, Some(p), Some(q)) => ThickPrimes::Explicit {
                        p,
                        q,
                        remove: a.remove,
                    },
                    _ => return Err("verify-thick needs --auto or both --p and --q".into()),
                };
                Invocation::VerifyThick {
                    order: order(a.d)?,
                    primes,
                }
            }
            CliCommand::VerifyGlued { pic, p } => {
                let spec = if pic == "z" {
                    let degree = p
                        .trim()
                        .parse()
                        .map_err(|_| format!("--p `{p}` is not a degree"))?;
                    PicSpec::ProjectiveLine { degree }
                } else if let Some(c) = pic.strip_prefix("curve:") {
                    let curve: Curve = c.parse().map_err(|e| format!("{e}"))?;
                    let point = point_on(&curve, &p)?;
                    PicSpec::Elliptic { curve, point }
                } else {
                    return Err(format!("--pic `{pic}` is neither `z` nor `curve:p,a,b`"));
                };
                Invocation::VerifyGlued {
                    input: format!("{pic} {p}"),
                    pic: spec,
                }
            }
            CliCommand::VerifyNodal { curve, point } => {
                let curve: Curve = curve.parse().map_err(|e| format!("{e}"))?;
                let point = point_on(&curve, &point)?;
                Invocation::VerifyNodal { curve, point }
            }
        })
    }
}

/// Outcome of a full command line: text for standard output or `--out`,
/// a diagnostic, and the exit code.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub document: Option<String>,
    pub diagnostic: Option<String>,
    pub exit_code: i32,
}

impl Outcome {
    fn input_error(msg: impl Into<String>) -> Self {
        Self {
            document: None,
            diagnostic: Some(msg.into()),
            exit_code: INPUT_ERROR,
        }
    }
}

/// Parses, validates and runs; writes nothing itself.
pub fn execute<I, T>(args: I) -> (Outcome, Option<PathBuf>)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            return (
                Outcome {
                    document: Some(e.to_string()),
                    diagnostic: None,
                    exit_code: 0,
                },
                None,
            );
        }
        Err(e) => return (Outcome::input_error(e.to_string()), None),
    };
    let out = cli.out.clone();
    let inv = match Invocation::try_from(cli.command) {
        Ok(inv) => inv,
        Err(e) => return (Outcome::input_error(format!("error: {e}")), out),
    };
    match run(&inv) {
        Ok(doc) => (outcome_of(&doc), out),
        Err(e) => (Outcome::input_error(format!("error: {e}")), out),
    }
}

fn outcome_of(doc: &Document) -> Outcome {
    let exit_code = doc.verdict().map_or(INPUT_ERROR, exit_code_for);
    Outcome {
        document: Some(doc.render()),
        diagnostic: None,
        exit_code,
    }
}
