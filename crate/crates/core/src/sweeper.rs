//! Exhaustive identity checks over parameter boxes, with CSV and JSON reports.

use std::io::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::identities::{self, IdentityKind, IdentityVerdict};
use crate::polyring::Polynomial;
use crate::strata::{ParamClass, SchubertParams, StratumPair};

pub const DEFAULT_MAX_COUNTEREXAMPLES: usize = 32;

/// Inclusive integer interval `lo..=hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub const fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }

    pub const fn point(v: i64) -> Self {
        Self { lo: v, hi: v }
    }

    fn validate(&self, name: &str) -> Result<()> {
        if self.lo > self.hi {
            return Err(Error::SpecInvalid(format!("{name} range {}:{} is empty", self.lo, self.hi)));
        }
        Ok(())
    }

    fn iter(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }
}

impl std::str::FromStr for Interval {
    type Err = Error;

    /// Parses `lo:hi` or a single integer.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::SpecInvalid(format!("malformed range {s:?}, expected lo:hi"));
        let parse = |x: &str| x.trim().parse::<i64>().map_err(|_| bad());
        match s.split_once(':') {
            Some((lo, hi)) => Ok(Self::new(parse(lo)?, parse(hi)?)),
            None => Ok(Self::point(parse(s)?)),
        }
    }
}

/// Range of `j`. `Floor` starts at the kind's natural lower bound: `r + i`
/// for global and local sweeps, `1` for `F`, `i` for `FF`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JRange {
    Floor { max: i64 },
    Interval(Interval),
}

/// Range of `c` for global and local sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CRange {
    /// `c ∈ [r + 1, r + i - 1]`.
    Band,
    /// `c = r`.
    EqualsR,
    Interval(Interval),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ConstraintMode {
    GeometricOnly,
    IncludeSymbolic,
    /// Every tuple meeting the check's own preconditions, even when the
    /// underlying global tuple is INVALID (appendix kinds only differ).
    Defined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub identity: IdentityKind,
    pub i: Interval,
    /// `r` for global, local and `FF` sweeps.
    pub r: Option<Interval>,
    pub j: JRange,
    pub c: CRange,
    pub constraint: ConstraintMode,
    #[serde(skip)]
    pub parallelism: usize,
    pub max_counterexamples: usize,
}

impl SweepSpec {
    /// Global sweep over `i`, `r`, `j ∈ [r + i, j_max]`, `c ∈ [r + 1, r + i - 1]`.
    pub fn global(i: Interval, r: Interval, j_max: i64) -> Self {
        Self {
            identity: IdentityKind::Global,
            i,
            r: Some(r),
            j: JRange::Floor { max: j_max },
            c: CRange::Band,
            constraint: ConstraintMode::IncludeSymbolic,
            parallelism: 1,
            max_counterexamples: DEFAULT_MAX_COUNTEREXAMPLES,
        }
    }

    pub fn local(i: Interval, r: Interval, j_max: i64) -> Self {
        Self { identity: IdentityKind::Local, ..Self::global(i, r, j_max) }
    }

    pub fn appendix_ki2(c: Interval, i: Interval, j: Interval) -> Self {
        Self {
            identity: IdentityKind::AppendixKi2,
            r: None,
            j: JRange::Interval(j),
            c: CRange::Interval(c),
            ..Self::global(i, Interval::point(0), 0)
        }
    }

    pub fn appendix_kc2(r: Interval, i: Interval, j: Interval) -> Self {
        Self {
            identity: IdentityKind::AppendixKc2,
            r: Some(r),
            j: JRange::Interval(j),
            c: CRange::Band,
            ..Self::global(i, Interval::point(0), 0)
        }
    }

    pub fn with_c(mut self, c: CRange) -> Self {
        self.c = c;
        self
    }

    pub fn with_constraint(mut self, mode: ConstraintMode) -> Self {
        self.constraint = mode;
        self
    }

    pub fn with_parallelism(mut self, jobs: usize) -> Self {
        self.parallelism = jobs;
        self
    }

    pub fn with_max_counterexamples(mut self, cap: usize) -> Self {
        self.max_counterexamples = cap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.parallelism == 0 {
            return Err(Error::SpecInvalid("parallelism must be positive".into()));
        }
        self.i.validate("i")?;
        if let Some(r) = &self.r {
            r.validate("r")?;
        }
        if let JRange::Interval(j) = &self.j {
            j.validate("j")?;
        }
        if let CRange::Interval(c) = &self.c {
            c.validate("c")?;
        }
        match self.identity {
            IdentityKind::Global | IdentityKind::Local if self.r.is_none() => {
                Err(Error::SpecInvalid("global and local sweeps need an r range".into()))
            }
            IdentityKind::AppendixKi2 if !matches!(self.c, CRange::Interval(_)) => {
                Err(Error::SpecInvalid("an F sweep needs an explicit c range".into()))
            }
            IdentityKind::AppendixKc2 if self.r.is_none() => {
                Err(Error::SpecInvalid("an FF sweep needs an r range".into()))
            }
            _ => Ok(()),
        }
    }
}

/// One checked instance. Appendix rows carry the global tuple they specialize.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepRow {
    pub identity: IdentityKind,
    pub params: SchubertParams,
    pub pair: Option<StratumPair>,
    pub class: ParamClass,
    pub holds: bool,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
}

impl SweepRow {
    fn from_verdict(v: IdentityVerdict, class: ParamClass) -> Self {
        Self {
            identity: v.kind,
            params: v.params.schubert(),
            pair: v.pair,
            class,
            holds: v.holds,
            lhs: v.lhs,
            rhs: v.rhs,
        }
    }

    fn sort_key(&self) -> (i64, i64, i64, i64, i64, i64) {
        let s = &self.params;
        let (p, q) = self.pair.map_or((0, 0), |x| (x.p(), x.q()));
        (s.i, s.r(), s.j, s.c(), p, q)
    }

    fn verdict(&self) -> IdentityVerdict {
        IdentityVerdict {
            kind: self.identity,
            params: identities::VerdictParams::Schubert(self.params),
            pair: self.pair,
            lhs: self.lhs.clone(),
            rhs: self.rhs.clone(),
            holds: self.holds,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub examined: usize,
    /// Substantive checks that held.
    pub holding: usize,
    /// TRIVIAL_EDGE checks that held.
    pub trivial: usize,
    pub failed: usize,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub spec: SweepSpec,
    pub summary: SweepSummary,
    pub rows: Vec<SweepRow>,
    /// The first `spec.max_counterexamples` failures in row order.
    pub counterexamples: Vec<IdentityVerdict>,
    pub wall_time: Duration,
}

impl SweepReport {
    pub fn all_hold(&self) -> bool {
        self.summary.failed == 0
    }
}

#[derive(Debug, Clone, Copy)]
enum Task {
    Global(SchubertParams),
    Local(SchubertParams),
    Ki2(i64, i64, i64),
    Kc2(i64, i64, i64),
}

fn admits(mode: ConstraintMode, class: ParamClass) -> bool {
    match mode {
        ConstraintMode::GeometricOnly => class == ParamClass::Geometric,
        ConstraintMode::IncludeSymbolic => class.is_symbolic(),
        ConstraintMode::Defined => true,
    }
}

/// Tuples inside the ranges stated for the experiments must classify as
/// expected: the band as GEOMETRIC and `c = r` as SYMBOLIC_ONLY.
fn assert_class(c_mode: CRange, s: &SchubertParams) -> Result<()> {
    if s.i < 1 || s.r() < 1 {
        return Ok(());
    }
    let expected = match c_mode {
        CRange::Band => ParamClass::Geometric,
        CRange::EqualsR => ParamClass::SymbolicOnly,
        CRange::Interval(_) => return Ok(()),
    };
    let class = s.classify();
    if class != expected {
        return Err(Error::InternalInconsistency(format!(
            "{s} classified {class}, expected {expected}"
        )));
    }
    Ok(())
}

fn enumerate(spec: &SweepSpec) -> Result<Vec<Task>> {
    let mut tasks = Vec::new();
    match spec.identity {
        IdentityKind::Global | IdentityKind::Local => {
            let r_range = spec.r.expect("validated");
            for i in spec.i.iter() {
                for r in r_range.iter() {
                    let js = match spec.j {
                        JRange::Floor { max } => (r + i)..=max,
                        JRange::Interval(iv) => iv.iter(),
                    };
                    for j in js {
                        let cs = match spec.c {
                            CRange::Band => (r + 1)..=(r + i - 1),
                            CRange::EqualsR => r..=r,
                            CRange::Interval(iv) => iv.iter(),
                        };
                        for c in cs {
                            let s = SchubertParams::from_irjc(i, r, j, c);
                            assert_class(spec.c, &s)?;
                            let class = s.classify();
                            if !class.is_symbolic() || !admits(spec.constraint, class) {
                                continue;
                            }
                            tasks.push(if spec.identity == IdentityKind::Global {
                                Task::Global(s)
                            } else {
                                Task::Local(s)
                            });
                        }
                    }
                }
            }
        }
        IdentityKind::AppendixKi2 => {
            let CRange::Interval(c_range) = spec.c else { unreachable!("validated") };
            for c in c_range.iter() {
                for i in spec.i.iter() {
                    let js = match spec.j {
                        JRange::Floor { max } => 1..=max,
                        JRange::Interval(iv) => iv.iter(),
                    };
                    for j in js {
                        let defined = c >= 2 && i >= 1 && j >= 1;
                        let class = identities::ki2_params(i, j, c).classify();
                        if defined && admits(spec.constraint, class) {
                            tasks.push(Task::Ki2(i, j, c));
                        }
                    }
                }
            }
        }
        IdentityKind::AppendixKc2 => {
            let r_range = spec.r.expect("validated");
            for r in r_range.iter() {
                for i in spec.i.iter() {
                    let js = match spec.j {
                        JRange::Floor { max } => i..=max,
                        JRange::Interval(iv) => iv.iter(),
                    };
                    for j in js {
                        let defined = j >= i && i >= 2 && r >= 0;
                        let class = identities::kc2_params(i, j, r).classify();
                        if defined && admits(spec.constraint, class) {
                            tasks.push(Task::Kc2(i, j, r));
                        }
                    }
                }
            }
        }
    }
    Ok(tasks)
}

fn run_task(task: Task) -> Result<Vec<SweepRow>> {
    Ok(match task {
        Task::Global(s) => vec![SweepRow::from_verdict(identities::check_global(&s)?, s.classify())],
        Task::Local(s) => s
            .pairs()
            .map(|pair| Ok(SweepRow::from_verdict(identities::check_local(&s, pair)?, s.classify())))
            .collect::<Result<_>>()?,
        Task::Ki2(i, j, c) => {
            let class = identities::ki2_params(i, j, c).classify();
            vec![SweepRow::from_verdict(identities::appendix_f(i, j, c)?, class)]
        }
        Task::Kc2(i, j, r) => {
            let class = identities::kc2_params(i, j, r).classify();
            vec![SweepRow::from_verdict(identities::appendix_ff(i, j, r)?, class)]
        }
    })
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepReport> {
    spec.validate()?;
    let start = Instant::now();
    let tasks = enumerate(spec)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.parallelism)
        .build()
        .map_err(|e| Error::SpecInvalid(format!("cannot start worker pool: {e}")))?;
    let chunks: Vec<Vec<SweepRow>> =
        pool.install(|| tasks.par_iter().map(|&t| run_task(t)).collect::<Result<_>>())?;
    let mut rows: Vec<SweepRow> = chunks.into_iter().flatten().collect();
    rows.sort_by_key(SweepRow::sort_key);

    let mut summary = SweepSummary { examined: rows.len(), ..Default::default() };
    let mut counterexamples = Vec::new();
    for row in &rows {
        if !row.holds {
            summary.failed += 1;
            if counterexamples.len() < spec.max_counterexamples {
                counterexamples.push(row.verdict());
            }
        } else if row.class == ParamClass::TrivialEdge {
            summary.trivial += 1;
        } else {
            summary.holding += 1;
        }
    }
    Ok(SweepReport { spec: spec.clone(), summary, rows, counterexamples, wall_time: start.elapsed() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

pub const CSV_HEADER: [&str; 15] = [
    "identity", "i", "j", "k", "l", "r", "c", "p", "q", "class", "holds", "lhs_degree",
    "rhs_degree", "lhs_at_1", "rhs_at_1",
];

fn degree_field(p: &Polynomial) -> String {
    p.degree().map_or_else(|| "-inf".to_string(), |d| d.to_string())
}

fn write_csv(report: &SweepReport, sink: &mut dyn Write) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(CSV_HEADER)?;
    for row in &report.rows {
        let s = &row.params;
        let (p, q) = row.pair.map_or((String::new(), String::new()), |x| {
            (x.p().to_string(), x.q().to_string())
        });
        w.write_record([
            row.identity.as_str().to_string(),
            s.i.to_string(),
            s.j.to_string(),
            s.k.to_string(),
            s.l.to_string(),
            s.r().to_string(),
            s.c().to_string(),
            p,
            q,
            row.class.as_str().to_string(),
            row.holds.to_string(),
            degree_field(&row.lhs),
            degree_field(&row.rhs),
            row.lhs.eval_at_one().to_string(),
            row.rhs.eval_at_one().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonParams {
    i: i64,
    j: i64,
    k: i64,
    l: i64,
    r: i64,
    c: i64,
}

#[derive(Serialize)]
struct JsonPair {
    p: i64,
    q: i64,
}

#[derive(Serialize)]
struct JsonRow<'a> {
    identity: IdentityKind,
    params: JsonParams,
    pair: Option<JsonPair>,
    class: ParamClass,
    holds: bool,
    lhs: &'a Polynomial,
    rhs: &'a Polynomial,
}

#[derive(Serialize)]
struct JsonSummary {
    examined: usize,
    holding: usize,
    trivial: usize,
    failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_ms: Option<u128>,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    spec: &'a SweepSpec,
    summary: JsonSummary,
    rows: Vec<JsonRow<'a>>,
}

fn write_json(report: &SweepReport, sink: &mut dyn Write, timing: bool) -> Result<()> {
    let s = &report.summary;
    let doc = JsonReport {
        spec: &report.spec,
        summary: JsonSummary {
            examined: s.examined,
            holding: s.holding,
            trivial: s.trivial,
            failed: s.failed,
            wall_ms: timing.then_some(report.wall_time.as_millis()),
        },
        rows: report
            .rows
            .iter()
            .map(|row| {
                let p = &row.params;
                JsonRow {
                    identity: row.identity,
                    params: JsonParams { i: p.i, j: p.j, k: p.k, l: p.l, r: p.r(), c: p.c() },
                    pair: row.pair.map(|x| JsonPair { p: x.p(), q: x.q() }),
                    class: row.class,
                    holds: row.holds,
                    lhs: &row.lhs,
                    rhs: &row.rhs,
                }
            })
            .collect(),
    };
    serde_json::to_writer(&mut *sink, &doc)?;
    sink.write_all(b"\n")?;
    Ok(())
}

/// Serializes the report. `timing` adds `summary.wall_ms` to JSON output,
/// which makes it run-dependent.
pub fn write_report(
    report: &SweepReport,
    format: ReportFormat,
    sink: &mut dyn Write,
    timing: bool,
) -> Result<()> {
    match format {
        ReportFormat::Csv => write_csv(report, sink),
        ReportFormat::Json => write_json(report, sink, timing),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: i64, hi: i64) -> Interval {
        Interval::new(lo, hi)
    }

    #[test]
    fn interval_parsing() {
        assert_eq!("1:4".parse::<Interval>().unwrap(), iv(1, 4));
        assert_eq!("7".parse::<Interval>().unwrap(), iv(7, 7));
        assert_eq!(" -2 : 3".parse::<Interval>().unwrap(), iv(-2, 3));
        for bad in ["", "a:b", "1:", "1:2:3"] {
            assert!(matches!(bad.parse::<Interval>(), Err(Error::SpecInvalid(_))), "{bad:?}");
        }
    }

    #[test]
    fn inverted_ranges_are_rejected() {
        let spec = SweepSpec::global(iv(3, 2), iv(2, 4), 10);
        assert!(matches!(run_sweep(&spec), Err(Error::SpecInvalid(_))));
        let spec = SweepSpec::global(iv(1, 2), iv(2, 4), 10).with_parallelism(0);
        assert!(matches!(run_sweep(&spec), Err(Error::SpecInvalid(_))));
        let mut spec = SweepSpec::global(iv(1, 2), iv(2, 4), 10);
        spec.r = None;
        assert!(matches!(run_sweep(&spec), Err(Error::SpecInvalid(_))));
    }

    #[test]
    fn global_sub_box() {
        let report = run_sweep(&SweepSpec::global(iv(1, 4), iv(2, 4), 10)).unwrap();
        assert!(report.all_hold());
        assert!(report.summary.examined > 0);
        assert_eq!(report.summary.holding, report.summary.examined);
        assert!(report.rows.iter().all(|r| r.class == ParamClass::Geometric));
    }

    #[test]
    fn c_equals_r_box() {
        let spec = SweepSpec::global(iv(1, 5), iv(2, 5), 12).with_c(CRange::EqualsR);
        let report = run_sweep(&spec).unwrap();
        assert!(report.all_hold());
        assert!(report.rows.iter().all(|r| r.class == ParamClass::SymbolicOnly));
        assert!(report.rows.iter().all(|r| r.params.r() == r.params.c()));
    }

    #[test]
    fn f_box_by_constraint_mode() {
        let spec = SweepSpec::appendix_ki2(iv(2, 6), iv(1, 8), iv(1, 12));
        let report = run_sweep(&spec).unwrap();
        assert!(report.all_hold());
        assert!(report.summary.examined > 0);
        let defined = run_sweep(&spec.with_constraint(ConstraintMode::Defined)).unwrap();
        assert_eq!(defined.summary.examined, 5 * 8 * 12);
        assert!(defined.summary.failed > 0);
    }

    #[test]
    fn ff_box_holds() {
        let spec = SweepSpec::appendix_kc2(iv(0, 5), iv(2, 6), iv(2, 10))
            .with_constraint(ConstraintMode::Defined);
        let report = run_sweep(&spec).unwrap();
        assert!(report.all_hold());
        assert!(report.rows.iter().all(|r| r.params.k - r.params.c() == 2));
    }

    #[test]
    fn local_sweep_emits_one_row_per_pair() {
        let report = run_sweep(&SweepSpec::local(iv(2, 2), iv(2, 2), 4)).unwrap();
        // (2,4,4,7) only, three pairs
        assert_eq!(report.rows.len(), 3);
        assert!(report.all_hold());
        let pairs: Vec<_> = report.rows.iter().map(|r| r.pair.map(|x| (x.p(), x.q()))).collect();
        assert_eq!(pairs, vec![Some((2, 1)), Some((3, 1)), Some((3, 2))]);
    }

    #[test]
    fn trivial_edges_are_tagged() {
        let spec = SweepSpec::global(iv(1, 4), iv(0, 0), 8)
            .with_c(CRange::Interval(iv(0, 4)));
        let report = run_sweep(&spec).unwrap();
        assert!(report.all_hold());
        assert_eq!(report.summary.trivial, report.summary.examined);
    }

    #[test]
    fn counterexample_capture_is_capped() {
        let spec = SweepSpec::appendix_ki2(iv(2, 6), iv(1, 8), iv(1, 12))
            .with_constraint(ConstraintMode::Defined)
            .with_max_counterexamples(3);
        let report = run_sweep(&spec).unwrap();
        assert_eq!(report.counterexamples.len(), 3);
        assert!(report.summary.failed > 3);
        let s = report.summary;
        assert_eq!(s.examined, s.holding + s.trivial + s.failed);
    }

    #[test]
    fn reports_are_deterministic_across_parallelism() {
        let base = SweepSpec::global(iv(1, 5), iv(2, 5), 11);
        let render = |jobs| {
            let report = run_sweep(&base.clone().with_parallelism(jobs)).unwrap();
            let mut json = Vec::new();
            write_report(&report, ReportFormat::Json, &mut json, false).unwrap();
            let mut csv = Vec::new();
            write_report(&report, ReportFormat::Csv, &mut csv, false).unwrap();
            (json, csv)
        };
        assert_eq!(render(1), render(4));
    }

    #[test]
    fn empty_box_gives_header_only_csv() {
        let report = run_sweep(&SweepSpec::global(iv(1, 1), iv(2, 2), 0)).unwrap();
        assert_eq!(report.summary.examined, 0);
        let mut out = Vec::new();
        write_report(&report, ReportFormat::Csv, &mut out, false).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), format!("{}\n", CSV_HEADER.join(",")));
    }

    #[test]
    fn one_tuple_rows() {
        let report = run_sweep(&SweepSpec::global(iv(2, 2), iv(2, 2), 4)).unwrap();
        assert_eq!(report.rows.len(), 1);
        let mut out = Vec::new();
        write_report(&report, ReportFormat::Csv, &mut out, false).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert_eq!(text.lines().nth(1).unwrap(), "GLOBAL,2,4,4,7,2,3,,,GEOMETRIC,true,20,20,60,60");
        let mut out = Vec::new();
        write_report(&report, ReportFormat::Json, &mut out, false).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&out).unwrap();
        assert_eq!(v["summary"]["examined"], 1);
        assert!(v["summary"].get("wall_ms").is_none());
        assert_eq!(v["rows"][0]["lhs"], v["rows"][0]["rhs"]);
        assert_eq!(v["rows"][0]["lhs"][0], 1);
    }

    #[test]
    fn sub_box_rows_are_a_subset() {
        let big = run_sweep(&SweepSpec::global(iv(1, 5), iv(2, 4), 10)).unwrap();
        let small = run_sweep(&SweepSpec::global(iv(2, 4), iv(2, 3), 9)).unwrap();
        for row in &small.rows {
            assert!(big.rows.contains(row));
        }
    }
}
