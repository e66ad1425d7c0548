//! Command-line surface for icosynth: synthesis, exact factoring, and verification.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{ArgGroup, Parser, Subcommand};
use icosynth::diagonal::{synth_diagonal_with, synthesis_budget, DiagonalConfig};
use icosynth::general::{synth_general, Route, SynthConfig};
use icosynth::icosian::{exact_synthesize, GateWord, GoldenQuat};
use icosynth::real::precision_for_eps;
use icosynth::unitary::{named_gate, parse_angle, parse_matrix};
use icosynth::Error;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

mod selftest;

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "icosynth", version, about = "Golden-gate synthesis of single-qubit unitaries")]
struct Cli {
    /// Working precision in bits (default derived from ε).
    #[arg(long, global = true, env = "ICOSYNTH_PRECISION")]
    precision: Option<usize>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Approximate an arbitrary single-qubit unitary.
    #[command(group(ArgGroup::new("target").required(true).args(["gate", "matrix"])))]
    Synth {
        /// One of H, T, X, Y, Z, S, I.
        #[arg(long)]
        gate: Option<String>,
        /// Four complex entries, row-major, e.g. "1/2+1/2i, 1/2-1/2i, 1/2-1/2i, 1/2+1/2i".
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long)]
        eps: String,
        /// Guarantee distance below eps instead of (C+2)·eps.
        #[arg(long)]
        strict: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Approximate the diagonal rotation diag(e^{iθ}, e^{-iθ}).
    SynthDiag {
        /// Radians, or a multiple of π such as pi/8.
        #[arg(long, allow_hyphen_values = true)]
        theta: String,
        #[arg(long)]
        eps: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Factor an exact element into a gate word.
    #[command(group(ArgGroup::new("input").required(true).args(["quat", "word"])))]
    Exact {
        /// Four a,b pairs (a + bφ) separated by spaces.
        #[arg(long, num_args = 1..=5, allow_hyphen_values = true)]
        quat: Option<Vec<String>>,
        /// A word in r, s, t such as "(rs)t(s)".
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Check the norm-Euclidean covering certificate on a grid.
    VerifyNe {
        #[arg(long)]
        n: u32,
        /// Perturbation radius as a fraction, e.g. 1/12.
        #[arg(long)]
        r: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in invariant checks.
    Selftest {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct SynthOutput {
    pub target: String,
    pub epsilon: f64,
    pub strict: bool,
    pub seed: u64,
    pub route: String,
    pub word: String,
    pub tau_count: usize,
    pub central_word: String,
    pub central_tau: usize,
    pub outer_tau: [usize; 2],
    pub k: u32,
    pub achieved: f64,
    pub epsilon_internal: f64,
    pub bound_constant: f64,
    pub abandoned_count: usize,
    pub elapsed_ms: f64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct DiagOutput {
    pub theta: String,
    pub epsilon: f64,
    pub word: String,
    pub tau_count: usize,
    pub m: u32,
    pub achieved: f64,
    pub abandoned_count: usize,
    pub attempts: usize,
    pub elapsed_ms: f64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ExactOutput {
    pub quat: String,
    pub word: String,
    pub tau_count: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct VerifyNeOutput {
    pub n: u32,
    pub r: String,
    pub points: u64,
    pub violations: Vec<[String; 4]>,
    pub elapsed_ms: f64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: f64,
}

struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExhausted(_) => EXIT_BUDGET,
            Error::Parse(_) | Error::InvalidArgument(_) => EXIT_MALFORMED,
            _ => EXIT_FAILURE,
        };
        Failure { code, msg: format!("error: {e}\n") }
    }
}

fn malformed(msg: String) -> Failure {
    Failure { code: EXIT_MALFORMED, msg: format!("error: {msg}\n") }
}

/// Parses `args` (program name first), runs the command, and returns the exit code with the text to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match dispatch(cli) {
        Ok(out) => (0, out),
        Err(Failure { code, msg }) => (code, msg),
    }
}

fn dispatch(cli: Cli) -> Result<String, Failure> {
    let precision = cli.precision;
    match cli.cmd {
        Command::Synth { gate, matrix, eps, strict, seed, json } => {
            let eps = parse_eps(&eps)?;
            let prec = precision.unwrap_or_else(|| precision_for_eps(eps));
            let (label, g) = match (gate, matrix) {
                (Some(name), _) => (name.to_ascii_uppercase(), named_gate(&name, prec)?),
                (None, Some(m)) => (m.clone(), parse_matrix(&m, prec)?),
                (None, None) => unreachable!("clap requires a target"),
            };
            let cfg = SynthConfig { strict, seed, precision, ..SynthConfig::new(eps) };
            let rep = synth_general(&g, &cfg)?;
            let out = SynthOutput {
                target: label,
                epsilon: eps,
                strict,
                seed,
                route: match rep.route {
                    Route::Diagonal => "diagonal",
                    Route::Sandwich => "sandwich",
                }
                .into(),
                word: rep.word.to_string(),
                tau_count: rep.word.tau_count(),
                central_word: rep.central_word.to_string(),
                central_tau: rep.central_tau,
                outer_tau: [rep.outer_tau.0, rep.outer_tau.1],
                k: rep.k,
                achieved: rep.achieved.to_f64(),
                epsilon_internal: rep.epsilon_internal.to_f64(),
                bound_constant: rep.bound_constant.to_f64(),
                abandoned_count: rep.abandoned_count,
                elapsed_ms: rep.elapsed.as_secs_f64() * 1e3,
            };
            render(json, &out, |o| {
                let mut s = String::new();
                let _ = writeln!(s, "target: {} (eps {:e}{})", o.target, o.epsilon, if o.strict { ", strict" } else { "" });
                let _ = writeln!(s, "word: {}", o.word);
                let _ = writeln!(s, "tau-count: {}", o.tau_count);
                let _ = writeln!(s, "route: {}", o.route);
                if o.route == "sandwich" {
                    let _ = writeln!(s, "central: {} (tau {}, k {})", o.central_word, o.central_tau, o.k);
                    let _ = writeln!(s, "outer tau-counts: {} {}", o.outer_tau[0], o.outer_tau[1]);
                }
                let _ = writeln!(s, "achieved: {:.4e}", o.achieved);
                let _ = writeln!(s, "abandoned: {}", o.abandoned_count);
                let _ = writeln!(s, "time: {:.1} ms", o.elapsed_ms);
                s
            })
        }
        Command::SynthDiag { theta, eps, seed, json } => {
            let eps_f = parse_eps(&eps)?;
            let prec = precision.unwrap_or_else(|| precision_for_eps(eps_f));
            let th = parse_angle(&theta, prec)?;
            let eps_r = icosynth::real::Real::from_f64(eps_f, prec);
            let cfg = DiagonalConfig { m_cap: None, budget: synthesis_budget(seed) };
            let s = synth_diagonal_with(&th, &eps_r, &cfg, &mut |_, _| true)?;
            let out = DiagOutput {
                theta,
                epsilon: eps_f,
                word: s.word.to_string(),
                tau_count: s.word.tau_count(),
                m: s.m,
                achieved: s.achieved.to_f64(),
                abandoned_count: s.abandoned,
                attempts: s.attempts,
                elapsed_ms: s.elapsed.as_secs_f64() * 1e3,
            };
            render(json, &out, |o| {
                format!(
                    "word: {}\ntau-count: {}\nachieved: {:.4e}\nm: {}\nabandoned: {}\ntime: {:.1} ms\n",
                    o.word, o.tau_count, o.achieved, o.m, o.abandoned_count, o.elapsed_ms
                )
            })
        }
        Command::Exact { quat, word, json } => {
            let mut json = json;
            let q: GoldenQuat = match (quat, word) {
                (Some(parts), _) => {
                    // hyphen values let a trailing --json land inside the coordinate list
                    json |= parts.iter().any(|p| p == "--json");
                    parts.iter().filter(|p| *p != "--json").cloned().collect::<Vec<_>>().join(" ").parse()?
                }
                (None, Some(w)) => w.parse::<GateWord>()?.to_quat(),
                (None, None) => unreachable!("clap requires an input"),
            };
            if q.is_zero() {
                return Err(malformed("the zero quaternion has no word".into()));
            }
            let w = exact_synthesize(&q)?;
            let out = ExactOutput { quat: q.primitive().to_string(), word: w.to_string(), tau_count: w.tau_count() };
            render(json, &out, |o| format!("quat: {}\nword: {}\ntau-count: {}\n", o.quat, o.word, o.tau_count))
        }
        Command::VerifyNe { n, r, json } => {
            if n == 0 {
                return Err(malformed("--n must be positive".into()));
            }
            let radius: BigRational = r.trim().parse().map_err(|_| malformed(format!("bad fraction {r:?}")))?;
            let start = Instant::now();
            let bad = icosynth::gauss::verify_norm_euclidean(n, &radius);
            let out = VerifyNeOutput {
                n,
                r,
                points: (n as u64 + 1).pow(4),
                violations: bad.iter().map(|p| p.clone().map(|c| c.to_string())).collect(),
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            };
            let text = render(json, &out, |o| {
                let mut s = format!("checked {} grid points (n = {}, r = {})\n", o.points, o.n, o.r);
                for v in &o.violations {
                    let _ = writeln!(s, "violation: {}", v.join(" "));
                }
                let _ = writeln!(s, "violations: {}", o.violations.len());
                s
            })?;
            if bad.is_empty() {
                Ok(text)
            } else {
                Err(Failure { code: EXIT_FAILURE, msg: text })
            }
        }
        Command::Selftest { json } => {
            let results = selftest::run_all();
            let ok = results.iter().all(|c| c.passed);
            let text = render(json, &results, |rs| {
                let mut s = String::new();
                for c in rs {
                    let _ = writeln!(s, "{} {} ({:.0} ms) {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.elapsed_ms, c.detail);
                }
                s
            })?;
            if ok {
                Ok(text)
            } else {
                Err(Failure { code: EXIT_FAILURE, msg: text })
            }
        }
    }
}

fn parse_eps(s: &str) -> Result<f64, Failure> {
    match s.trim().parse::<f64>() {
        Ok(e) if e > 0.0 && e < 1.0 => Ok(e),
        _ => Err(malformed(format!("--eps must be a number in (0, 1), got {s:?}"))),
    }
}

fn render<T: Serialize + ?Sized>(json: bool, v: &T, text: impl FnOnce(&T) -> String) -> Result<String, Failure> {
    if json {
        let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure { code: EXIT_FAILURE, msg: format!("error: {e}\n") })?;
        s.push('\n');
        Ok(s)
    } else {
        Ok(text(v))
    }
}
