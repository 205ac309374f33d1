//! The acceptance criteria, one line each.
//!
//! Runs without the libtest harness so the lines always print.

use std::process::ExitCode;
use std::time::Instant;

use sov_core::lax::{check_prop2_sl2, monodromy};
use sov_core::{Algebra, Limits, Outcome, Param, ParamMatrix, Scalar};
use sov_verify::concordance;
use sov_verify::config::{AlgebraName, SuiteConfig};
use sov_verify::oracle::OracleConfig;
use sov_verify::report::{is_known_anchor, Report};
use sov_verify::suites::run_suites;

struct Verdict {
    ok: bool,
    /// A failure documented as unattainable rather than a regression.
    known_gap: bool,
    detail: String,
}

impl Verdict {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Verdict { ok, known_gap: false, detail: detail.into() }
    }
}

fn jobs() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

fn run(algebra: AlgebraName, n: usize, suites: &[&str]) -> Report {
    let mut cfg = SuiteConfig::new(algebra, n);
    cfg.suites = suites.iter().map(|s| s.to_string()).collect();
    run_suites(&cfg, jobs()).expect("suite configuration")
}

/// Every record passes; skips count against the criterion.
fn all_pass(runs: &[(AlgebraName, usize, &[&str])]) -> Verdict {
    let mut total = 0;
    let mut bad = Vec::new();
    for (a, n, suites) in runs {
        let r = run(*a, *n, suites);
        for rec in &r.records {
            total += 1;
            if rec.status != "pass" || !is_known_anchor(&rec.anchor) {
                bad.push(format!(
                    "{:?} N={} {}/{}: {} {}",
                    a,
                    n,
                    rec.suite,
                    rec.check,
                    rec.status,
                    rec.residual.as_deref().unwrap_or("")
                ));
            }
        }
    }
    if total == 0 {
        return Verdict::new(false, "no records");
    }
    match bad.first() {
        None => Verdict::new(true, format!("{total} records")),
        Some(b) => Verdict::new(false, format!("{} of {total} records not passing, first: {b}", bad.len())),
    }
}

use AlgebraName::{Sl2, Sl3};

fn c1() -> Verdict {
    all_pass(&[(Sl2, 1, &["rtt"]), (Sl2, 2, &["rtt"]), (Sl3, 1, &["rtt"]), (Sl3, 2, &["rtt"])])
}

fn c2() -> Verdict {
    all_pass(&[(Sl2, 1, &["minors"]), (Sl2, 2, &["minors"]), (Sl3, 1, &["minors"]), (Sl3, 2, &["minors"])])
}

fn c3() -> Verdict {
    all_pass(&[(Sl2, 1, &["qdet-central"]), (Sl2, 2, &["qdet-central"]), (Sl3, 1, &["qdet-central"])])
}

fn c4() -> Verdict {
    all_pass(&[(Sl2, 1, &["gauss"]), (Sl2, 2, &["gauss"]), (Sl3, 1, &["gauss"]), (Sl3, 2, &["gauss"])])
}

/// The exchange relation with `A = T^1_2`, which must fail.
fn t12_control(n: usize) -> bool {
    let lim = Limits::default();
    let u = ParamMatrix::generic(Algebra::Sl2, n);
    let t = monodromy(&u, &lim).unwrap();
    let tv = t.try_map(|e| e.subst1(u.spectral, &Scalar::param(Param::v()))).unwrap();
    let c = check_prop2_sl2(&t, &tv, u.spectral, Param::v(), (1, 2), &lim);
    matches!(c.outcome, Outcome::Fail { .. })
}

fn c5() -> Verdict {
    let props = all_pass(&[(Sl2, 1, &["prop1-sl2"]), (Sl2, 2, &["prop1-sl2"])]);
    let controls: Vec<bool> = [1, 2].into_iter().map(t12_control).collect();
    let ok = props.ok && controls.iter().all(|c| *c);
    // Everything passes and only the control refuses to fail.
    if props.ok && !ok {
        return Verdict {
            ok,
            known_gap: true,
            detail: format!(
                "{}; control A = T^1_2 does not fail (N=1: {}, N=2: {}): with A = B the relation reduces to [B(u), B(v)] = 0",
                props.detail,
                if controls[0] { "fails" } else { "passes" },
                if controls[1] { "fails" } else { "passes" },
            ),
        };
    }
    props
}

fn c6() -> Verdict {
    all_pass(&[(Sl3, 1, &["prop2-sl3-B"]), (Sl3, 2, &["prop2-sl3-B"])])
}

fn c7() -> Verdict {
    all_pass(&[(Sl2, 2, &["intertwiners", "r-ops"]), (Sl3, 2, &["intertwiners", "r-ops"])])
}

fn c8() -> Verdict {
    all_pass(&[(Sl2, 1, &["eigen-sl2"]), (Sl2, 2, &["eigen-sl2"]), (Sl2, 3, &["eigen-sl2", "w-chain"])])
}

fn c9() -> Verdict {
    all_pass(&[(Sl3, 1, &["eigen-sl3-n1"])])
}

fn c10() -> Verdict {
    all_pass(&[(Sl3, 2, &["eigen-sl3", "w-chain"])])
}

fn c11() -> Verdict {
    all_pass(&[(Sl2, 1, &["separation", "momentum"]), (Sl2, 2, &["momentum"]), (Sl3, 1, &["momentum"])])
}

fn c12() -> Verdict {
    let checks = concordance::all(&OracleConfig::default(), &Limits::default());
    let bad: Vec<String> = checks.iter().filter(|c| !c.passed()).map(|c| format!("{}: {:?}", c.name, c.outcome)).collect();
    match bad.first() {
        None if !checks.is_empty() => Verdict::new(true, format!("{} identities agree", checks.len())),
        None => Verdict::new(false, "no identities"),
        Some(b) => Verdict::new(false, format!("{} divergent, first: {b}", bad.len())),
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 12] = [
        ("RTT relation", c1),
        ("quantum minors", c2),
        ("quantum determinant", c3),
        ("Gauss factorization", c4),
        ("sl2 B-operator properties", c5),
        ("sl3 B-operator commutativity", c6),
        ("intertwiners", c7),
        ("sl2 eigenfunctions", c8),
        ("sl3 one-site eigenfunction", c9),
        ("sl3 two-site eigenfunction", c10),
        ("separated equations", c11),
        ("oracle concordance", c12),
    ];
    let mut unexpected = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let v = f();
        let status = if v.ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {name} ({:.1}s): {}", k + 1, start.elapsed().as_secs_f64(), v.detail);
        if !v.ok && !v.known_gap {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
