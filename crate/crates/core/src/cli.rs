//! Command-line front end.
//!
//! Exit codes: 0 when every check holds, 1 when an identity or cross-check
//! fails, 2 on invalid input or I/O failure.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::identities::{self, IdentityVerdict, VerdictParams};
use crate::ihsolver;
use crate::polyring::Polynomial;
use crate::qfactor::gauss;
use crate::strata::SchubertParams;
use crate::sweeper::{self, CRange, ConstraintMode, Interval, JRange, ReportFormat, SweepSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

/// Exact Poincaré polynomials of Grassmannians and special Schubert varieties
#[derive(Parser, Debug)]
#[command(name = "schubert", version, about)]
pub struct Cli {
    /// Emit JSON instead of text (sweeps use --format)
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Poincaré polynomial of the Grassmannian G_k(C^l)
    Poincare {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long, allow_hyphen_values = true)]
        l: i64,
    },
    /// Intersection-cohomology Poincaré polynomials of all strata
    Ih {
        #[command(flatten)]
        tuple: TupleArgs,
        /// Only print I_p
        #[arg(long)]
        p: Option<i64>,
    },
    /// Local identity for one stratum pair or all of them
    VerifyLocal {
        #[command(flatten)]
        tuple: TupleArgs,
        #[arg(long, requires = "q", conflicts_with = "all_pairs")]
        p: Option<i64>,
        #[arg(long, requires = "p")]
        q: Option<i64>,
        #[arg(long, required_unless_present = "p")]
        all_pairs: bool,
    },
    /// Global identity
    VerifyGlobal {
        #[command(flatten)]
        tuple: TupleArgs,
    },
    /// F(i, j, c) = 1, the k - i = 2 specialization
    VerifyAppendixKi2 {
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
        #[arg(long, allow_hyphen_values = true)]
        c: i64,
    },
    /// FF(i, j, r) = 1, the k - c = 2 specialization
    VerifyAppendixKc2 {
        #[arg(long, allow_hyphen_values = true)]
        i: i64,
        #[arg(long, allow_hyphen_values = true)]
        j: i64,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
    },
    /// Check an identity over a parameter box
    Sweep(SweepArgs),
}

#[derive(Args, Debug)]
pub struct TupleArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub i: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub j: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub k: i64,
    #[arg(long, allow_hyphen_values = true)]
    pub l: i64,
}

impl TupleArgs {
    fn params(&self) -> SchubertParams {
        SchubertParams::new(self.i, self.j, self.k, self.l)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityArg {
    Global,
    Local,
    AppendixKi2,
    AppendixKc2,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstraintArg {
    GeometricOnly,
    IncludeSymbolic,
    Defined,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatArg {
    Csv,
    Json,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub identity: IdentityArg,
    /// lo:hi
    #[arg(long, allow_hyphen_values = true)]
    pub i: Interval,
    #[arg(long, allow_hyphen_values = true)]
    pub r: Option<Interval>,
    /// Explicit j range; without it j runs from its natural floor to --j-max
    #[arg(long, allow_hyphen_values = true, conflicts_with = "j_max")]
    pub j: Option<Interval>,
    #[arg(long, allow_hyphen_values = true)]
    pub j_max: Option<i64>,
    /// Explicit c range; global and local sweeps default to [r+1, r+i-1]
    #[arg(long, allow_hyphen_values = true, conflicts_with = "c_equals_r")]
    pub c: Option<Interval>,
    #[arg(long)]
    pub c_equals_r: bool,
    #[arg(long, value_enum, default_value_t = ConstraintArg::IncludeSymbolic)]
    pub constraint: ConstraintArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads (default: available parallelism)
    #[arg(long, env = "SCHUBERT_JOBS")]
    pub jobs: Option<usize>,
    #[arg(long, default_value_t = sweeper::DEFAULT_MAX_COUNTEREXAMPLES)]
    pub max_counterexamples: usize,
    /// Include wall time in JSON reports
    #[arg(long)]
    pub timing: bool,
}

impl SweepArgs {
    fn spec(&self) -> Result<SweepSpec> {
        let need = |what: &str| Error::SpecInvalid(format!("--{what} is required for this identity"));
        let j = match (self.j, self.j_max) {
            (Some(iv), _) => JRange::Interval(iv),
            (None, Some(max)) => JRange::Floor { max },
            (None, None) => return Err(need("j or --j-max")),
        };
        let mut spec = match self.identity {
            IdentityArg::Global | IdentityArg::Local => {
                let r = self.r.ok_or_else(|| need("r"))?;
                let base = if self.identity == IdentityArg::Global {
                    SweepSpec::global(self.i, r, 0)
                } else {
                    SweepSpec::local(self.i, r, 0)
                };
                let c = match (self.c, self.c_equals_r) {
                    (Some(iv), _) => CRange::Interval(iv),
                    (None, true) => CRange::EqualsR,
                    (None, false) => CRange::Band,
                };
                base.with_c(c)
            }
            IdentityArg::AppendixKi2 => {
                SweepSpec::appendix_ki2(self.c.ok_or_else(|| need("c"))?, self.i, Interval::point(0))
            }
            IdentityArg::AppendixKc2 => {
                SweepSpec::appendix_kc2(self.r.ok_or_else(|| need("r"))?, self.i, Interval::point(0))
            }
        };
        spec.j = j;
        spec.constraint = match self.constraint {
            ConstraintArg::GeometricOnly => ConstraintMode::GeometricOnly,
            ConstraintArg::IncludeSymbolic => ConstraintMode::IncludeSymbolic,
            ConstraintArg::Defined => ConstraintMode::Defined,
        };
        spec.parallelism = self.jobs.unwrap_or_else(|| {
            std::thread::available_parallelism().map_or(1, |n| n.get())
        });
        spec.max_counterexamples = self.max_counterexamples;
        Ok(spec)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Poly(_) | Error::InternalInconsistency(_) => EXIT_FAILED,
        _ => EXIT_INVALID,
    }
}

fn describe(v: &IdentityVerdict) -> String {
    let head = match v.params {
        VerdictParams::Schubert(s) => s.to_string(),
        VerdictParams::Ki2 { i, j, c } => format!("(i,j,c)=({i},{j},{c})"),
        VerdictParams::Kc2 { i, j, r } => format!("(i,j,r)=({i},{j},{r})"),
    };
    match v.pair {
        Some(pair) => format!("{} {head} (p,q)=({},{})", v.kind.as_str(), pair.p(), pair.q()),
        None => format!("{} {head}", v.kind.as_str()),
    }
}

fn write_verdicts(out: &mut dyn Write, json: bool, verdicts: &[IdentityVerdict]) -> Result<u8> {
    if json {
        serde_json::to_writer(&mut *out, verdicts)?;
        writeln!(out)?;
    } else {
        for v in verdicts {
            writeln!(out, "{}", describe(v))?;
            writeln!(out, "  lhs = {}", v.lhs)?;
            writeln!(out, "  rhs = {}", v.rhs)?;
            writeln!(out, "  holds = {}", v.holds)?;
        }
    }
    Ok(if verdicts.iter().all(|v| v.holds) { EXIT_OK } else { EXIT_FAILED })
}

#[derive(Serialize)]
struct IhEntry {
    p: i64,
    m: i64,
    ih: Polynomial,
    closed_form_match: bool,
}

#[derive(Serialize)]
struct IhOutput {
    params: SchubertParams,
    entries: Vec<IhEntry>,
}

fn cmd_ih(out: &mut dyn Write, json: bool, params: SchubertParams, only: Option<i64>) -> Result<u8> {
    let table = ihsolver::solve_backsub(&params)?;
    let ps: Vec<i64> = match only {
        Some(p) => {
            table.get(p)?;
            vec![p]
        }
        None => (1..=table.len() as i64).collect(),
    };
    let mut entries = Vec::with_capacity(ps.len());
    for p in ps {
        let ih = table.get(p)?.clone();
        let closed_form_match = ih == params.ih_closed_form(p)?;
        entries.push(IhEntry { p, m: params.dim_stratum(p)?, ih, closed_form_match });
    }
    let ok = entries.iter().all(|e| e.closed_form_match);
    if json {
        serde_json::to_writer(&mut *out, &IhOutput { params, entries })?;
        writeln!(out)?;
    } else {
        for e in &entries {
            let check = if e.closed_form_match { "matches" } else { "DIFFERS FROM" };
            writeln!(out, "I_{} = {}  [m = {}, {check} closed form]", e.p, e.ih, e.m)?;
        }
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn cmd_sweep(out: &mut dyn Write, err: &mut dyn Write, args: &SweepArgs) -> Result<u8> {
    let spec = args.spec()?;
    let report = sweeper::run_sweep(&spec)?;
    let format = match args.format {
        FormatArg::Csv => ReportFormat::Csv,
        FormatArg::Json => ReportFormat::Json,
    };
    match &args.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            sweeper::write_report(&report, format, &mut file, args.timing)?;
            file.flush()?;
        }
        None => sweeper::write_report(&report, format, out, args.timing)?,
    }
    let s = report.summary;
    writeln!(
        err,
        "examined {} (holding {}, trivial {}, failed {}) in {} ms",
        s.examined,
        s.holding,
        s.trivial,
        s.failed,
        report.wall_time.as_millis()
    )?;
    for v in &report.counterexamples {
        writeln!(err, "counterexample: {}", describe(v))?;
    }
    Ok(if report.all_hold() { EXIT_OK } else { EXIT_FAILED })
}

fn dispatch(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let json = cli.json;
    match &cli.command {
        Command::Poincare { k, l } => {
            let g = gauss(*k, *l);
            if json {
                serde_json::to_writer(&mut *out, &g)?;
                writeln!(out)?;
            } else {
                writeln!(out, "{g}")?;
            }
            Ok(EXIT_OK)
        }
        Command::Ih { tuple, p } => cmd_ih(out, json, tuple.params(), *p),
        Command::VerifyLocal { tuple, p, q, all_pairs } => {
            let params = tuple.params();
            let verdicts = if *all_pairs {
                if !params.classify().is_symbolic() {
                    return Err(Error::InvalidParams(format!("{params} is INVALID")));
                }
                params
                    .pairs()
                    .map(|pair| identities::check_local(&params, pair))
                    .collect::<Result<Vec<_>>>()?
            } else {
                let (p, q) = (p.expect("clap requires p"), q.expect("clap requires q"));
                vec![identities::check_local(&params, params.pair(p, q)?)?]
            };
            write_verdicts(out, json, &verdicts)
        }
        Command::VerifyGlobal { tuple } => {
            write_verdicts(out, json, &[identities::check_global(&tuple.params())?])
        }
        Command::VerifyAppendixKi2 { i, j, c } => {
            write_verdicts(out, json, &[identities::appendix_f(*i, *j, *c)?])
        }
        Command::VerifyAppendixKc2 { i, j, r } => {
            write_verdicts(out, json, &[identities::appendix_ff(*i, *j, *r)?])
        }
        Command::Sweep(args) => cmd_sweep(out, err, args),
    }
}

/// Runs a parsed invocation and returns its exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Parses `args` (including the program name) and runs them.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            if e.use_stderr() {
                EXIT_INVALID
            } else {
                let _ = write!(out, "{}", e.render());
                EXIT_OK
            }
        }
    }
}

pub fn main_from_env() -> u8 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = BufWriter::new(stdout.lock());
    let code = run_from(std::env::args_os(), &mut out, &mut stderr.lock());
    if out.flush().is_err() {
        return EXIT_INVALID;
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (u8, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_from(std::iter::once("schubert").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn poincare_text() {
        assert_eq!(run_args(&["poincare", "--k", "1", "--l", "2"]).1, "1 + t^2\n");
        assert_eq!(run_args(&["poincare", "--k", "3", "--l", "2"]).1, "0\n");
        assert_eq!(run_args(&["poincare", "--k", "-1", "--l", "2"]).1, "0\n");
        assert_eq!(run_args(&["poincare", "--k", "x", "--l", "2"]).0, EXIT_INVALID);
    }

    #[test]
    fn sweep_flag_validation() {
        let (code, _, err) = run_args(&["sweep", "--identity", "global", "--i", "1:2", "--j-max", "8"]);
        assert_eq!(code, EXIT_INVALID, "{err}");
        let (code, _, _) = run_args(&["sweep", "--identity", "global", "--i", "1:2", "--r", "2:2"]);
        assert_eq!(code, EXIT_INVALID);
        let (code, _, _) = run_args(&["sweep", "--identity", "appendix-ki2", "--i", "1:2", "--j", "1:3"]);
        assert_eq!(code, EXIT_INVALID);
    }
}
