//! Command-line front end. Exit codes: 0 verified, 1 refuted with a witness,
//! 2 usage or input error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::analysis::{
    bijection_obstruction_report, build_explicit_bijection, verify_csp1, verify_csp2, verify_csp3,
    verify_decomposition, verify_identity, verify_main_theorem, verify_rectangle_csp, VerificationReport,
};
use crate::combinatorics::{IncreasingTableau, Partition};
use crate::dynamics::{k_evacuate, k_promote, k_promote_inverse, rowmotion, OrderIdeal};
use crate::enumeration::{enumerate_increasing_par, orbit_decomposition, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::qseries::{q_binomial, q_hook_polynomial, IntPolynomial};

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "incsieve",
    version,
    about = "K-promotion, rowmotion and cyclic sieving checks for increasing tableaux"
)]
struct Cli {
    /// Worker threads for heavy commands (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Cap on the size of any enumerated ground set.
    #[arg(long, global = true, env = "TABLEAU_BUDGET")]
    budget: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List or count increasing tableaux of a shape.
    Enumerate {
        /// "AxB", "a,b,c" or "2^3,1^4".
        #[arg(long)]
        shape: String,
        #[arg(long = "max")]
        max: u32,
        /// Only packed tableaux with maximum entry exactly --max.
        #[arg(long)]
        packed: bool,
        /// Print only the number of tableaux.
        #[arg(long)]
        count: bool,
    },
    /// Apply K-promotion to a tableau read as JSON.
    Promote {
        #[command(flatten)]
        input: InputArg,
        #[arg(long, default_value_t = 1)]
        steps: usize,
        /// Apply inverse K-promotion instead.
        #[arg(long)]
        inverse: bool,
    },
    /// Apply K-evacuation to a tableau read as JSON.
    Evacuate {
        #[command(flatten)]
        input: InputArg,
    },
    /// Apply rowmotion to an order ideal of [a]x[b].
    Rowmotion {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        /// Row lengths of the ideal, comma separated; empty for the empty ideal.
        #[arg(long, default_value = "")]
        profile: String,
        #[arg(long, default_value_t = 1)]
        steps: usize,
    },
    /// Orbit decomposition under K-promotion.
    Orbits {
        #[arg(long)]
        shape: String,
        #[arg(long = "max")]
        max: u32,
        #[arg(long)]
        packed: bool,
    },
    /// Run one verification and print its report.
    Verify(VerifyArgs),
    /// The explicit packed-to-toothbrush bijection, or its obstruction report.
    Bijection {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        obstructions: bool,
        #[arg(long)]
        tsv: bool,
    },
    /// Print q-binomials and q-hook polynomials.
    Qpoly {
        #[command(subcommand)]
        which: QpolyKind,
        /// Human-readable form instead of a JSON coefficient array.
        #[arg(long, global = true)]
        display: bool,
    },
}

#[derive(Debug, Args)]
struct InputArg {
    /// Tableau JSON file; "-" reads standard input.
    #[arg(long, default_value = "-")]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_parser = ["main", "rectangle", "decomposition", "identity", "csp1", "csp2", "csp3"])]
    claim: String,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long = "k-max", default_value_t = 50)]
    k_max: usize,
    #[arg(long)]
    a: Option<u32>,
    #[arg(long)]
    b: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    s: Option<u32>,
    /// Tab-separated report instead of JSON.
    #[arg(long)]
    tsv: bool,
}

#[derive(Debug, Subcommand)]
enum QpolyKind {
    /// Gaussian binomial [n choose k]_q.
    Binomial {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// q-hook polynomial f^shape(q).
    Hook {
        #[arg(long)]
        shape: String,
    },
}

/// Parses "AxB", "a,b,c" or exponent shorthand such as "2^3,1^4".
pub fn parse_shape(s: &str) -> Result<Partition> {
    let s = s.trim();
    let bad = || Error::Malformed(format!("cannot parse shape {s:?}"));
    if let Some((a, b)) = s.split_once(['x', 'X']) {
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().parse().map_err(|_| bad())?;
        if a == 0 || b == 0 {
            return Err(bad());
        }
        return Ok(Partition::rectangle(a, b));
    }
    if s.is_empty() {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    for term in s.split(',') {
        let (part, times) = match term.split_once('^') {
            Some((p, e)) => (p, e.trim().parse::<usize>().map_err(|_| bad())?),
            None => (term, 1),
        };
        let part: u32 = part.trim().parse().map_err(|_| bad())?;
        parts.extend(std::iter::repeat_n(part, times));
    }
    Partition::new(parts)
}

fn parse_profile(s: &str) -> Result<Vec<u32>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Malformed(format!("cannot parse profile {s:?}")))
        })
        .collect()
}

fn read_tableau(path: &PathBuf) -> Result<IncreasingTableau> {
    let mut text = String::new();
    let io = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    io.map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("invalid tableau JSON: {e}")))
}

fn need(v: Option<u32>, flag: &str) -> Result<u32> {
    v.ok_or_else(|| Error::Malformed(format!("this claim needs --{flag}")))
}

fn poly_out(p: &IntPolynomial, display: bool) -> String {
    if display {
        p.to_string()
    } else {
        serde_json::to_string(p).expect("polynomial serializes")
    }
}

fn report_out(report: &VerificationReport, tsv: bool) -> (String, i32) {
    let text = if tsv { report.to_tsv() } else { report.to_json() + "\n" };
    (text, if report.passed() { EXIT_OK } else { EXIT_REFUTED })
}

fn line(s: impl std::fmt::Display) -> String {
    format!("{s}\n")
}

fn execute(cli: Cli) -> Result<(String, i32)> {
    let budget = cli.budget.unwrap_or(DEFAULT_BUDGET);
    match cli.command {
        Command::Enumerate {
            shape,
            max,
            packed,
            count,
        } => {
            let shape = parse_shape(&shape)?;
            let all = enumerate_increasing_par(&shape, max, packed, budget)?;
            if count {
                return Ok((line(all.len()), EXIT_OK));
            }
            let out: String = all
                .iter()
                .map(|t| line(serde_json::to_string(t).expect("tableau serializes")))
                .collect();
            Ok((out, EXIT_OK))
        }
        Command::Promote { input, steps, inverse } => {
            let t = read_tableau(&input.input)?;
            let step = if inverse { k_promote_inverse } else { k_promote };
            let t = (0..steps).fold(t, |acc, _| step(&acc));
            Ok((line(serde_json::to_string(&t).expect("tableau serializes")), EXIT_OK))
        }
        Command::Evacuate { input } => {
            let t = k_evacuate(&read_tableau(&input.input)?);
            Ok((line(serde_json::to_string(&t).expect("tableau serializes")), EXIT_OK))
        }
        Command::Rowmotion { a, b, profile, steps } => {
            let ideal = OrderIdeal::new(a, b, parse_profile(&profile)?)?;
            let ideal = (0..steps).fold(ideal, |acc, _| rowmotion(&acc));
            Ok((line(serde_json::to_string(&ideal).expect("ideal serializes")), EXIT_OK))
        }
        Command::Orbits { shape, max, packed } => {
            let shape = parse_shape(&shape)?;
            let ground = enumerate_increasing_par(&shape, max, packed, budget)?;
            let d = orbit_decomposition(&ground, k_promote)?;
            Ok((
                line(serde_json::to_string_pretty(&d).expect("orbits serialize")),
                EXIT_OK,
            ))
        }
        Command::Verify(v) => {
            let report = match v.claim.as_str() {
                "main" => verify_main_theorem(need(v.k, "k")?, budget)?,
                "rectangle" => verify_rectangle_csp(need(v.a, "a")?, need(v.b, "b")?, budget)?,
                "decomposition" => verify_decomposition(need(v.a, "a")?, need(v.b, "b")?, budget)?,
                "identity" => verify_identity(v.k_max)?,
                "csp1" => verify_csp1(need(v.a, "a")?, need(v.b, "b")?, budget)?,
                "csp2" => verify_csp2(need(v.k, "k")?, need(v.m, "m")?, budget)?,
                "csp3" => verify_csp3(need(v.r, "r")?, need(v.s, "s")?, need(v.m, "m")?, budget)?,
                other => return Err(Error::Malformed(format!("unknown claim {other:?}"))),
            };
            Ok(report_out(&report, v.tsv))
        }
        Command::Bijection { k, obstructions, tsv } => {
            if k < 2 {
                return Err(Error::Domain(format!("--k must be at least 2, got {k}")));
            }
            if obstructions {
                return Ok(report_out(&bijection_obstruction_report(k, budget)?, tsv));
            }
            let table = build_explicit_bijection(k, budget)?;
            let out = if tsv {
                table.pairs.iter().map(|(t, s)| format!("{t}\t{s}\n")).collect()
            } else {
                line(serde_json::to_string_pretty(&json!(table)).expect("table serializes"))
            };
            Ok((out, EXIT_OK))
        }
        Command::Qpoly { which, display } => {
            let p = match which {
                QpolyKind::Binomial { n, k } => q_binomial(n, k)?,
                QpolyKind::Hook { shape } => q_hook_polynomial(&parse_shape(&shape)?)?,
            };
            Ok((line(poly_out(&p, display)), EXIT_OK))
        }
    }
}

/// Runs the CLI on `args` (including the program name), writing to the given
/// streams, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_USAGE;
        }
    };
    match pool.install(|| execute(cli)) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
