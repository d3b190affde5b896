//! Acceptance criteria 1–8. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use schubert_core::identities::{self, ki2_params, kc2_params};
use schubert_core::ihsolver::{solve_backsub, solve_neumann};
use schubert_core::qfactor::{check_shift_identity, gauss};
use schubert_core::sweeper::{self, CRange, ConstraintMode, Interval, ReportFormat, SweepSpec};
use schubert_core::{ParamClass, SchubertParams};

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn iv(lo: i64, hi: i64) -> Interval {
    Interval::new(lo, hi)
}

fn box_one() -> SweepSpec {
    SweepSpec::global(iv(1, 10), iv(2, 10), 20).with_parallelism(jobs())
}

fn box_one_tuples() -> Vec<SchubertParams> {
    let mut out = Vec::new();
    for i in 1..=10 {
        for r in 2..=10 {
            for j in r + i..=20 {
                for c in r + 1..r + i {
                    out.push(SchubertParams::from_irjc(i, r, j, c));
                }
            }
        }
    }
    out
}

fn geometric_upto(kmax: i64, lmax: i64) -> Vec<SchubertParams> {
    let mut out = Vec::new();
    for l in 1..=lmax {
        for k in 1..=kmax.min(l) {
            for j in k..=l {
                for i in 0..=k {
                    let s = SchubertParams::new(i, j, k, l);
                    if s.classify() == ParamClass::Geometric {
                        out.push(s);
                    }
                }
            }
        }
    }
    out
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn criterion_1() -> Outcome {
    let report = sweeper::run_sweep(&box_one()).expect("sweep runs");
    let s = report.summary;
    outcome(
        s.failed == 0 && s.examined == box_one_tuples().len(),
        format!("global identity on {} band tuples, {} failed", s.examined, s.failed),
    )
}

fn criterion_2() -> Outcome {
    let spec = SweepSpec::global(iv(1, 10), iv(2, 10), 20)
        .with_c(CRange::EqualsR)
        .with_parallelism(jobs());
    let report = sweeper::run_sweep(&spec).expect("sweep runs");
    let s = report.summary;
    outcome(s.failed == 0 && s.examined > 0, format!("c = r on {} tuples, {} failed", s.examined, s.failed))
}

fn criterion_3() -> Outcome {
    let tuples = geometric_upto(10, 20);
    let checks: Vec<(usize, usize)> = tuples
        .par_iter()
        .map(|s| {
            let total = s.pairs().count();
            let held = s
                .pairs()
                .filter(|&pair| identities::check_local(s, pair).expect("local check").holds)
                .count();
            (total, held)
        })
        .collect();
    let total: usize = checks.iter().map(|c| c.0).sum();
    let held: usize = checks.iter().map(|c| c.1).sum();
    outcome(
        total == held && total > 0,
        format!("local identity on {} tuples, {held}/{total} pairs hold", tuples.len()),
    )
}

fn criterion_4() -> Outcome {
    let tuples = box_one_tuples();
    let bad: Vec<String> = tuples
        .par_iter()
        .filter_map(|s| {
            let back = solve_backsub(s).expect("back-substitution");
            let closed = (1..=s.r() + 1).all(|p| *back.get(p).unwrap() == s.ih_closed_form(p).unwrap());
            let neumann = solve_neumann(s).expect("neumann") == back;
            (!(closed && neumann)).then(|| s.to_string())
        })
        .collect();
    outcome(
        bad.is_empty(),
        format!("solvers vs closed form on {} tuples, {} mismatches {:?}", tuples.len(), bad.len(), bad.first()),
    )
}

fn criterion_5() -> Outcome {
    let f_box: Vec<(i64, i64, i64)> = (2..=10)
        .flat_map(|c| (1..=15).flat_map(move |i| (1..=25).map(move |j| (i, j, c))))
        .collect();
    let f_failures: Vec<(i64, i64, i64)> = f_box
        .par_iter()
        .copied()
        .filter(|&(i, j, c)| !identities::appendix_f(i, j, c).expect("F defined").holds)
        .collect();
    let ff_box: Vec<(i64, i64, i64)> = (0..=10)
        .flat_map(|r| (2..=15).flat_map(move |i| (i..=25).map(move |j| (i, j, r))))
        .collect();
    let ff_failures = ff_box
        .par_iter()
        .filter(|&&(i, j, r)| !identities::appendix_ff(i, j, r).expect("FF defined").holds)
        .count();
    let disagreements = f_box
        .par_iter()
        .filter(|&&(i, j, c)| {
            let s = ki2_params(i, j, c);
            s.classify().is_symbolic()
                && identities::check_global(&s).unwrap().holds
                    != identities::appendix_f(i, j, c).unwrap().holds
        })
        .count()
        + ff_box
            .par_iter()
            .filter(|&&(i, j, r)| {
                let s = kc2_params(i, j, r);
                s.classify().is_symbolic()
                    && identities::check_global(&s).unwrap().holds
                        != identities::appendix_ff(i, j, r).unwrap().holds
            })
            .count();
    outcome(
        f_failures.is_empty() && ff_failures == 0 && disagreements == 0,
        format!(
            "F fails on {}/{} tuples (first {:?}), FF fails on {ff_failures}/{}, {disagreements} disagreements with the global check",
            f_failures.len(),
            f_box.len(),
            f_failures.first(),
            ff_box.len()
        ),
    )
}

fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for m in 1..=n {
        let prev = &rows[m - 1];
        let mut row = vec![BigInt::from(1); m + 1];
        for k in 1..m {
            row[k] = &prev[k - 1] + &prev[k];
        }
        rows.push(row);
    }
    rows
}

fn criterion_6() -> Outcome {
    let tri = pascal(20);
    let mut failures = Vec::new();
    for l in 0..=20i64 {
        for k in 0..=l {
            let g = gauss(k, l);
            let deg = 2 * (k * (l - k)) as usize;
            if g != gauss(l - k, l) {
                failures.push(format!("symmetry ({k},{l})"));
            }
            if g.degree() != Some(deg) {
                failures.push(format!("degree ({k},{l})"));
            }
            if g.eval_at_one() != tri[l as usize][k as usize] {
                failures.push(format!("binomial ({k},{l})"));
            }
            if !g.is_palindromic(deg) {
                failures.push(format!("palindrome ({k},{l})"));
            }
        }
    }
    let ih_bad = geometric_upto(20, 20)
        .par_iter()
        .filter(|s| {
            let t = solve_backsub(s).unwrap();
            !(1..=s.r() + 1).all(|p| {
                let m = s.dim_stratum(p).unwrap() as usize;
                t.get(p).unwrap().is_palindromic(2 * m)
            })
        })
        .count();
    if ih_bad > 0 {
        failures.push(format!("{ih_bad} IH tables not palindromic"));
    }
    for a in 0..=30 {
        for b in 0..=30 {
            if !check_shift_identity(a, b) {
                failures.push(format!("shift ({a},{b})"));
            }
        }
    }
    for s in geometric_upto(12, 24) {
        for pair in s.pairs() {
            let lhs = 2 * s.small_d(pair);
            let rhs = s.dim_stratum(pair.p()).unwrap() - s.dim_stratum(pair.q()).unwrap() - s.delta(pair);
            if lhs != rhs {
                failures.push(format!("2d relation {s} {pair:?}"));
            }
        }
    }
    outcome(failures.is_empty(), format!("structural suite, {} failures {:?}", failures.len(), failures.first()))
}

fn is_edge(s: &SchubertParams) -> bool {
    s.r() == 0 || s.c() == s.r() + s.i || s.i == 0 || s.i == s.j
}

fn criterion_7() -> Outcome {
    let spec = SweepSpec::global(iv(0, 10), iv(0, 10), 0)
        .with_c(CRange::Interval(iv(0, 20)))
        .with_constraint(ConstraintMode::IncludeSymbolic)
        .with_parallelism(jobs());
    let spec = SweepSpec { j: sweeper::JRange::Interval(iv(0, 10)), ..spec };
    let report = sweeper::run_sweep(&spec).expect("sweep runs");
    let edges: Vec<_> = report.rows.iter().filter(|r| is_edge(&r.params)).collect();
    let direct = edges
        .iter()
        .all(|r| identities::check_global(&r.params).map(|v| v.holds).unwrap_or(false));
    let tagged = edges.iter().all(|r| r.class == ParamClass::TrivialEdge && r.holds);
    outcome(
        direct && tagged && !edges.is_empty() && report.summary.trivial == edges.len(),
        format!("{} trivial-edge tuples, all hold: {direct}, all tagged: {tagged}", edges.len()),
    )
}

fn criterion_8() -> Outcome {
    let render = |jobs: usize| {
        let report = sweeper::run_sweep(&box_one().with_parallelism(jobs)).expect("sweep runs");
        let mut out = Vec::new();
        sweeper::write_report(&report, ReportFormat::Json, &mut out, false).expect("write");
        out
    };
    let (a, b) = (render(1), render(8));
    outcome(a == b, format!("JSON report of {} bytes, --jobs 1 vs --jobs 8 identical: {}", a.len(), a == b))
}

fn main() -> ExitCode {
    let criteria: [(u8, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut all = true;
    for (n, run) in criteria {
        let start = Instant::now();
        let o = run();
        all &= o.pass;
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {n}: {verdict} {} ({:.1?})", o.detail, start.elapsed());
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
