//! Command-line interface. Every result is a list of `key = value` lines in
//! a fixed order; exit codes carry the decision.

use std::fmt::Display;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cone::{self, ConeDecision};
use crate::error::{Error, Result};
use crate::lr::{self, Partition};
use crate::oracle::{self, FiniteField};
use crate::quiver::Quiver;
use crate::schofield::SchofieldSession;
use crate::semiinv::{self, Nonvanishing, Sampling, WitnessOutcome};
use crate::vector::{DimVector, Weight};

/// YES, member, nonzero.
pub const EXIT_YES: i32 = 0;
/// NO, non-member, zero.
pub const EXIT_NO: i32 = 1;
/// Usage, input or file errors.
pub const EXIT_ERROR: i32 = 2;
/// A sampled or derived result contradicts the exact decision.
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "quiversat", version, about = "Subrepresentations, King cones and semi-invariants of acyclic quivers")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Plain)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Plain,
    JsonLines,
}

#[derive(Args, Debug)]
struct SamplingArgs {
    /// Seed of the SplitMix64 stream.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Entries are drawn from [-bound, bound].
    #[arg(long, default_value_t = 10_000)]
    bound: u64,
    /// Number of sampled pairs before reporting zero.
    #[arg(long, default_value_t = 3)]
    trials: usize,
}

impl SamplingArgs {
    fn sampling(&self) -> Sampling {
        Sampling {
            trials: self.trials,
            bound: self.bound,
            seed: self.seed,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Euler form <a, b>.
    Euler {
        quiver: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
    /// All subdimension vectors of n.
    Subdims {
        quiver: PathBuf,
        #[arg(long)]
        dim: String,
    },
    /// Decide alpha -> n.
    CheckSub {
        quiver: PathBuf,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        dim: String,
    },
    /// Decide n ->> beta.
    CheckQuot {
        quiver: PathBuf,
        #[arg(long)]
        dim: String,
        #[arg(long)]
        beta: String,
    },
    /// King cone membership of a weight.
    Cone {
        quiver: PathBuf,
        #[arg(long)]
        dim: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
    },
    /// Nonzero semi-invariant of the given weight.
    Witness {
        quiver: PathBuf,
        #[arg(long)]
        dim: String,
        #[arg(long, allow_hyphen_values = true)]
        weight: String,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Generic nonvanishing of the determinantal semi-invariant C^{A,B}.
    Semiinv {
        quiver: PathBuf,
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        #[command(flatten)]
        sampling: SamplingArgs,
    },
    /// Exhaustive finite-field check of alpha -> n.
    OracleSub {
        quiver: PathBuf,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        dim: String,
        /// Base prime field.
        #[arg(long, default_value_t = 3)]
        prime: u32,
        /// Degree of the field searched for subrepresentations.
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Generic hull matrices T, W and hull vectors.
    Hull {
        quiver: PathBuf,
        #[arg(long)]
        dim: String,
    },
    /// Littlewood-Richardson positivity through the flag quiver cone.
    Lr {
        #[arg(long, default_value = "")]
        lam: String,
        #[arg(long, default_value = "")]
        mu: String,
        #[arg(long, default_value = "")]
        nu: String,
        /// Also report positivity of the scaled triples up to this factor.
        #[arg(long)]
        saturation: Option<i64>,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    code: i32,
    lines: Vec<(String, String)>,
}

impl Report {
    fn new(code: i32) -> Self {
        Self {
            code,
            lines: Vec::new(),
        }
    }

    fn push(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        self.lines.push((key.into(), value.to_string()));
        self
    }

    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for (key, value) in &self.lines {
            match format {
                Format::Plain => out.push_str(&format!("{key} = {value}\n")),
                Format::JsonLines => {
                    let mut obj = serde_json::Map::new();
                    obj.insert(key.clone(), serde_json::Value::String(value.clone()));
                    out.push_str(&serde_json::Value::Object(obj).to_string());
                    out.push('\n');
                }
            }
        }
        out
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn decision(b: bool) -> i32 {
    if b {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

/// Runs the command line `args` (program name first).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => Outcome {
            code: report.code,
            stdout: report.render(cli.format),
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn load(path: &PathBuf) -> Result<Quiver> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    Quiver::parse(&text)
}

fn dim(q: &Quiver, text: &str) -> Result<DimVector> {
    let d = DimVector::parse(text)?;
    q.check_len(&d)?;
    Ok(d)
}

fn weight(q: &Quiver, text: &str) -> Result<Weight> {
    let w = Weight::parse(text)?;
    q.check_len(&w)?;
    Ok(w)
}

fn execute(command: &Command) -> Result<Report> {
    match command {
        Command::Euler { quiver, a, b } => {
            let q = load(quiver)?;
            let (a, b) = (dim(&q, a)?, dim(&q, b)?);
            let mut r = Report::new(EXIT_YES);
            r.push("euler", q.euler_form(&a, &b)?);
            Ok(r)
        }
        Command::Subdims { quiver, dim: n } => {
            let q = load(quiver)?;
            let n = dim(&q, n)?;
            let subs = SchofieldSession::new(q).subdims(&n)?;
            let mut r = Report::new(EXIT_YES);
            r.push("count", subs.len());
            for s in &subs {
                r.push("subdim", s);
            }
            Ok(r)
        }
        Command::CheckSub { quiver, alpha, dim: n } => {
            let q = load(quiver)?;
            let (alpha, n) = (dim(&q, alpha)?, dim(&q, n)?);
            let mut session = SchofieldSession::new(q);
            let yes = session.is_sub(&alpha, &n)?;
            let mut r = Report::new(decision(yes));
            r.push("sub", yes_no(yes));
            if !yes {
                certificate(&mut r, &mut session, &alpha, &n)?;
            }
            Ok(r)
        }
        Command::CheckQuot { quiver, dim: n, beta } => {
            let q = load(quiver)?;
            let (n, beta) = (dim(&q, n)?, dim(&q, beta)?);
            let mut session = SchofieldSession::new(q);
            let yes = session.is_quot(&n, &beta)?;
            let mut r = Report::new(decision(yes));
            r.push("quot", yes_no(yes));
            if !yes && beta.le(&n) {
                let alpha = DimVector::new(n.iter().zip(beta.iter()).map(|(a, b)| a - b).collect())?;
                certificate(&mut r, &mut session, &alpha, &n)?;
            } else if !yes {
                r.push("reason", "beta exceeds n");
            }
            Ok(r)
        }
        Command::Cone { quiver, dim: n, weight: s } => {
            let q = load(quiver)?;
            let (n, sigma) = (dim(&q, n)?, weight(&q, s)?);
            let mut session = SchofieldSession::new(q);
            let d = cone::in_cone(&mut session, &n, &sigma)?;
            let mut r = Report::new(decision(d.is_member()));
            cone_lines(&mut r, &n, &d);
            Ok(r)
        }
        Command::Witness {
            quiver,
            dim: n,
            weight: s,
            sampling,
        } => {
            let q = load(quiver)?;
            let (n, sigma) = (dim(&q, n)?, weight(&q, s)?);
            let mut session = SchofieldSession::new(q);
            let outcome = semiinv::saturation_witness(&mut session, &n, &sigma, sampling.sampling())?;
            Ok(match outcome {
                WitnessOutcome::Found(w) => {
                    let mut r = Report::new(EXIT_YES);
                    r.push("sigma", &w.sigma)
                        .push("A", &w.a)
                        .push("seed", w.sampling.seed)
                        .push("bound", w.sampling.bound)
                        .push("det", &w.det)
                        .push("N", &w.big_n)
                        .push("v", &w.v)
                        .push("w", &w.w);
                    r
                }
                WitnessOutcome::NotInCone(d) => {
                    let mut r = Report::new(EXIT_NO);
                    cone_lines(&mut r, &n, &d);
                    r
                }
                WitnessOutcome::Inconsistent(reason) => {
                    let mut r = Report::new(EXIT_INCONSISTENT);
                    r.push("verdict", "inconsistent").push("reason", reason);
                    r
                }
            })
        }
        Command::Semiinv { quiver, a, b, sampling } => {
            let q = load(quiver)?;
            let (a, b) = (dim(&q, a)?, dim(&q, b)?);
            let mut session = SchofieldSession::new(q);
            let report = semiinv::generic_nonvanishing(&mut session, &a, &b, sampling.sampling())?;
            let code = if !report.is_consistent() {
                EXIT_INCONSISTENT
            } else {
                decision(report.is_nonzero())
            };
            let mut r = Report::new(code);
            match &report.outcome {
                Nonvanishing::Nonzero { trial, det, .. } => {
                    r.push("verdict", "nonzero")
                        .push("schofield", yes_no(report.schofield))
                        .push("trial", trial)
                        .push("det", det);
                }
                Nonvanishing::Zero { trials } => {
                    r.push("verdict", "zero")
                        .push("schofield", yes_no(report.schofield))
                        .push("trials", trials)
                        .push("false_zero_bound", format!("{:e}", report.false_zero_bound));
                }
            }
            Ok(r)
        }
        Command::OracleSub {
            quiver,
            alpha,
            dim: n,
            prime,
            degree,
        } => {
            let q = load(quiver)?;
            let (alpha, n) = (dim(&q, alpha)?, dim(&q, n)?);
            let base = FiniteField::prime(*prime)?;
            let brute = oracle::brute_is_sub(&q, &alpha, &n, &base, *degree)?;
            let schofield = SchofieldSession::new(q).is_sub(&alpha, &n)?;
            let mut r = Report::new(decision(brute));
            r.push("brute_sub", yes_no(brute))
                .push("schofield", yes_no(schofield))
                .push("field", FiniteField::new(*prime, *degree)?);
            Ok(r)
        }
        Command::Hull { quiver, dim: n } => {
            let q = load(quiver)?;
            let n = dim(&q, n)?;
            let mut session = SchofieldSession::new(q.clone());
            let h = session.hull_data(&n)?;
            let mut r = Report::new(EXIT_YES);
            r.push("order", q.topological_names().join(","))
                .push("T", &h.t)
                .push("W", &h.w)
                .push("w_zero", yes_no(h.w_is_zero()));
            for &v in q.topological_order() {
                r.push(format!("theta.{}", q.name(v)), &h.theta[v]);
            }
            Ok(r)
        }
        Command::Lr {
            lam,
            mu,
            nu,
            saturation,
        } => {
            let (l, m, n) = (Partition::parse(lam)?, Partition::parse(mu)?, Partition::parse(nu)?);
            let positive = lr::try_lr_positive(&l, &m, &n)?;
            let mut r = Report::new(decision(positive));
            r.push("positive", yes_no(positive))
                .push("coefficient", oracle::lr_coefficient(&l, &m, &n));
            if let Some(n_max) = saturation {
                for (k, pos) in lr::lr_saturation_table(&l, &m, &n, *n_max)? {
                    r.push(format!("scaled.{k}"), yes_no(pos));
                }
            }
            Ok(r)
        }
    }
}

fn certificate(r: &mut Report, session: &mut SchofieldSession, alpha: &DimVector, n: &DimVector) -> Result<()> {
    match session.sub_certificate(alpha, n)? {
        Some((gamma, value)) => {
            r.push("violated_by", gamma).push("euler", value);
        }
        None => {
            r.push("reason", "alpha exceeds n");
        }
    }
    Ok(())
}

fn cone_lines(r: &mut Report, n: &DimVector, d: &ConeDecision) {
    r.push("verdict", d.verdict());
    match d {
        ConeDecision::Member => {}
        ConeDecision::ViolatedEquality { pairing } => {
            r.push("violated_by", n).push("pairing", pairing);
        }
        ConeDecision::ViolatedInequality { beta, pairing } => {
            r.push("violated_by", beta).push("pairing", pairing);
        }
    }
}
