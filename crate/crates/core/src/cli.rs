//! Command-line front end. Exit status: 0 success, 1 computational refusal
//! (or an incoherent level set), 2 parse or usage error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::cls::{bound_cls, bound_data, cls_of_dominant, duflo_function, ClsCanonical};
use crate::levels::{cls_level, coherence_check};
use crate::orders::{BorelOrder, FunctionSpec};
use crate::parse::ParseError;
use crate::scalars::parse_values;
use crate::sweep::{self, Exec, SweepReport};
use crate::tableaux::rs_summary;

#[derive(Debug, Parser)]
#[command(
    name = "slinf",
    version,
    about = "Weight functions, RS shapes and coherent local systems for sl(inf)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrality, local constancy and dominance flags, and the annihilator verdict.
    Classify { function: String },
    /// Shape of the modified Robinson-Schensted algorithm on a finite list of values.
    Rs { values: String },
    /// Canonical c.l.s. of the module with a dominant highest weight.
    ClsOf { function: String },
    /// Dominant function on an ideal order realizing a finite-type c.l.s.
    Duflo {
        cls: String,
        #[arg(long)]
        order: String,
    },
    /// nint, wid, gamma and the bounding c.l.s.
    Bound { function: String },
    /// Product of two c.l.s.
    Mul { left: String, right: String },
    /// Level set at rank n.
    Level {
        cls: String,
        #[arg(short = 'n')]
        rank: usize,
        #[arg(long, default_value_t = 6)]
        cap: u64,
    },
    /// Compares the branching of the rank-n level set with the rank-(n-1) level set.
    Coherence {
        cls: String,
        #[arg(short = 'n')]
        rank: usize,
        #[arg(long, default_value_t = 6)]
        cap: u64,
    },
    #[command(hide = true)]
    Selftest {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long)]
        sequential: bool,
    },
}

enum Failure {
    Parse(String),
    Refused(String),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

/// `@path` reads the argument from a file.
fn resolve(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(PathBuf::from(path))
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure::Parse(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn function(arg: &str) -> Result<FunctionSpec, Failure> {
    Ok(resolve(arg)?.parse()?)
}

fn cls(arg: &str) -> Result<ClsCanonical, Failure> {
    Ok(resolve(arg)?.parse()?)
}

fn refused(e: impl ToString) -> Failure {
    Failure::Refused(e.to_string())
}

fn execute(command: Command) -> Result<(String, i32), Failure> {
    let text = match command {
        Command::Classify { function: arg } => {
            let f = function(&arg)?;
            let dominant = match f.is_dominant() {
                Ok(d) => d.to_string(),
                Err(_) => "n/a".to_string(),
            };
            let verdict = if f.annihilator_nonzero() {
                "nonzero"
            } else {
                "zero"
            };
            format!(
                "integral={} almost-integral={} locally-constant={} dominant={dominant} annihilator={verdict}",
                f.is_integral(),
                f.is_almost_integral(),
                f.is_locally_constant()
            )
        }
        Command::Rs { values } => rs_summary(&parse_values(&resolve(&values)?)?),
        Command::ClsOf { function: arg } => cls_of_dominant(&function(&arg)?)
            .map_err(refused)?
            .to_string(),
        Command::Duflo { cls: q, order } => {
            let o: BorelOrder = resolve(&order)?.parse()?;
            duflo_function(&cls(&q)?, &o).map_err(refused)?.to_string()
        }
        Command::Bound { function: arg } => {
            let f = function(&arg)?;
            let data = bound_data(&f).map_err(refused)?;
            let q = bound_cls(&f).map_err(refused)?;
            format!("{data}\n{q}")
        }
        Command::Mul { left, right } => cls(&left)?.mul(&cls(&right)?).to_string(),
        Command::Level { cls: q, rank, cap } => {
            let set = cls_level(&cls(&q)?, rank, cap).map_err(refused)?;
            let bound = set
                .cap()
                .map_or("exact".to_string(), |c| format!("cap={c}"));
            format!("n={rank} {bound} size={}\n{set}", set.len())
        }
        Command::Coherence { cls: q, rank, cap } => {
            let report = coherence_check(&cls(&q)?, rank, cap).map_err(refused)?;
            let status = if report.is_coherent() { 0 } else { 1 };
            return Ok((report.to_string(), status));
        }
        Command::Selftest {
            trials,
            seed,
            sequential,
        } => return Ok(selftest(trials, seed, sequential)),
    };
    Ok((text, 0))
}

fn selftest(trials: u64, seed: u64, sequential: bool) -> (String, i32) {
    let exec = if sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    let corpus = sweep::random_corpus(seed, trials);
    let family = sweep::finite_type_family();
    let mut rows: Vec<(&str, SweepReport)> = vec![
        ("corank-vs-lds", sweep::corank_sweep(&corpus, exec)),
        ("rearrangement", sweep::rearrangement_sweep(&corpus, exec)),
        ("defect-vs-rank", sweep::defect_rank_sweep(&corpus, exec)),
    ];
    for order in ["omega; omega*", "omega; fin(2); omega*"] {
        let o: BorelOrder = order.parse().expect("valid order");
        rows.push(("duflo-round-trip", sweep::duflo_sweep(&family, &o, exec)));
    }
    rows.push((
        "basic-coherence",
        sweep::coherence_sweep(&sweep::basic_family(6), &[3, 4, 5], 6, exec),
    ));
    let mut status = 0;
    let lines: Vec<String> = rows
        .iter()
        .map(|(name, r)| {
            if !r.passed() {
                status = 1;
            }
            let verdict = if r.passed() { "PASS" } else { "FAIL" };
            let first = r
                .failures
                .first()
                .map_or(String::new(), |f| format!(" first: {f}"));
            format!(
                "{verdict} {name} cases={} failures={}{first}",
                r.cases,
                r.failures.len()
            )
        })
        .collect();
    (lines.join("\n"), status)
}

/// Runs the command line `args` (including the program name), writing results
/// to `out` and diagnostics to `err`; returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match execute(cli.command) {
        Ok((text, status)) => {
            let _ = writeln!(out, "{text}");
            status
        }
        Err(Failure::Parse(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Refused(msg)) => {
            let _ = writeln!(err, "refused: {msg}");
            1
        }
    }
}
