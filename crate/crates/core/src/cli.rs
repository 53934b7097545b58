//! Command-line front end. Exit codes: 0 success (including a negative
//! verdict such as "not an automorphism"), 1 usage or input error, 2 failed
//! verification.

use std::ffi::OsString;
use std::io::Write;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::dyadic::residual_check;
use crate::endomorph::{Endo, EndoError, EndoFile, JacobianView};
use crate::freeassoc::oe_replay;
use crate::metabelian::{eval, LieExpr};
use crate::verify::{self, Suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Debug, Parser)]
#[command(name = "metabelian", version, about = "Exact computations in free metabelian Lie algebras")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal form (linear part and Fox row) of a bracket expression.
    Nf {
        expr: String,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Jacobian matrix of an endomorphism.
    Jac {
        endo: String,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// `phi o psi`, i.e. `x_i -> psi_i(phi_1, ..., phi_n)`.
    Compose {
        phi: String,
        psi: String,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Inverse automorphism, or the reason there is none.
    Inverse {
        endo: String,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Largest `i` with the endomorphism in `IAut_i`.
    IautLevel {
        endo: String,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Symbolic elimination in products of `E + Φ_i Ψ_i`.
    ReplayBn {
        #[arg(long, default_value_t = 3)]
        factors: usize,
    },
    /// Fox derivative of `[[z1,[z2,z3]],z4]` and the degree-4 correction search.
    ReplayOe {
        #[arg(long, default_value_t = 4)]
        rank: usize,
        /// Run the linear solve for a correction.
        #[arg(long)]
        witness: bool,
    },
    /// Run invariant suites.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

impl From<EndoError> for Failure {
    fn from(e: EndoError) -> Self {
        usage(e.to_string())
    }
}

/// An endomorphism argument: a JSON file if the path exists, otherwise
/// semicolon-separated images.
fn load_endo(arg: &str, rank: Option<usize>) -> Result<Endo, Failure> {
    let doc = if Path::new(arg).is_file() {
        EndoFile::read(Path::new(arg))?
    } else {
        let n = rank.unwrap_or_else(|| arg.split(';').count());
        EndoFile::from_inline(n, arg)
    };
    if let Some(r) = rank {
        if r != doc.rank {
            return Err(usage(format!("--rank {r} disagrees with rank {} of {arg}", doc.rank)));
        }
    }
    check_rank(doc.rank)?;
    Ok(doc.to_endo()?)
}

fn check_rank(n: usize) -> Result<(), Failure> {
    if n < 2 {
        return Err(usage(format!("rank must be at least 2, got {n}")));
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes")
}

fn execute(cli: &Cli) -> Result<(String, i32), Failure> {
    let structured = cli.format == Format::Structured;
    let out = match &cli.command {
        Command::Nf { expr, rank } => {
            let e = LieExpr::parse_x(expr).map_err(|e| usage(e.to_string()))?;
            let n = rank.unwrap_or(e.max_index().max(2));
            check_rank(n)?;
            let f = eval(&e, n).map_err(|e| usage(e.to_string()))?;
            if structured {
                pretty(&serde_json::to_value(f.to_view()).unwrap())
            } else {
                f.to_string()
            }
        }
        Command::Jac { endo, rank } => {
            let phi = load_endo(endo, *rank)?;
            let view = JacobianView::new(&phi.jacobian());
            if structured {
                pretty(&serde_json::to_value(&view).unwrap())
            } else {
                view.rows
                    .iter()
                    .map(|r| format!("[{}]", r.join(", ")))
                    .collect::<Vec<_>>()
                    .join("\n")
            }
        }
        Command::Compose { phi, psi, rank } => {
            let a = load_endo(phi, *rank)?;
            let b = load_endo(psi, *rank)?;
            let c = a.compose(&b)?;
            render_endo(&c, structured)?
        }
        Command::Inverse { endo, rank } => {
            let phi = load_endo(endo, *rank)?;
            match phi.inverse() {
                Ok(inv) => {
                    if structured {
                        pretty(&json!({
                            "automorphism": true,
                            "inverse": EndoFile::from_endo(&inv)?,
                        }))
                    } else {
                        inv.render()?
                    }
                }
                Err(EndoError::NotAutomorphism(reason)) => {
                    if structured {
                        pretty(&json!({ "automorphism": false, "reason": reason }))
                    } else {
                        format!("not an automorphism: {reason}")
                    }
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::IautLevel { endo, rank } => {
            let phi = load_endo(endo, *rank)?;
            let lvl = phi.iaut_level();
            if structured {
                pretty(&json!({ "level": lvl }))
            } else {
                format!("level: {lvl}")
            }
        }
        Command::ReplayBn { factors } => {
            let rep = residual_check(*factors).map_err(|e| usage(e.to_string()))?;
            if structured {
                rep.to_json()
            } else {
                rep.render_text().trim_end().to_string()
            }
        }
        Command::ReplayOe { rank, witness } => {
            let rep = oe_replay(*rank, *witness).map_err(|e| usage(e.to_string()))?;
            if structured {
                rep.to_json()
            } else {
                rep.render_text().trim_end().to_string()
            }
        }
        Command::Verify { suite, seed } => {
            let s: Suite = suite.parse().map_err(usage)?;
            let rep = verify::run(s, *seed);
            let code = if rep.passed() { 0 } else { 2 };
            let body = if structured {
                rep.to_json()
            } else {
                rep.render_text().trim_end().to_string()
            };
            return Ok((body, code));
        }
    };
    Ok((out, 0))
}

fn render_endo(phi: &Endo, structured: bool) -> Result<String, Failure> {
    Ok(if structured {
        EndoFile::from_endo(phi)?.to_json()
    } else {
        phi.render()?
    })
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli) {
        Ok((body, code)) => {
            let _ = writeln!(out, "{body}");
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
