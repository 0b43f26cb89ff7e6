//! One line per acceptance criterion; exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use proptest::test_runner::{Config, TestCaseError, TestRunner};

use localmirror::cli::{run, Command, RunConfig};
use localmirror::closed::{
    a2_genus1_check, ftt_identity_check, pf_check, verify_a2, verify_conj1_mirror, verify_conj3, verify_easyj, verify_operators, verify_prop1,
    verify_trivalent, yukawa_check, Status, Verdict, WindowOverride,
};
use localmirror::givental::Action;
use localmirror::series::DegreeBound;
use localmirror::Result;

type Criterion = (&'static str, fn() -> Result<Outcome>);

const OV: WindowOverride = WindowOverride { lambda_depth: None, hbar: None };

struct Outcome {
    verdicts: Vec<Verdict>,
    /// Per-case wall-clock limit.
    limit: Option<Duration>,
    slowest: Duration,
}

fn timed<T>(f: impl FnOnce() -> Result<T>) -> (Result<T>, Duration) {
    let start = Instant::now();
    let r = f();
    (r, start.elapsed())
}

fn collect(cases: Vec<(Result<Vec<Verdict>>, Duration)>, limit: Option<Duration>) -> Result<Outcome> {
    let slowest = cases.iter().map(|c| c.1).max().unwrap_or_default();
    let mut verdicts = Vec::new();
    for (r, _) in cases {
        verdicts.extend(r?);
    }
    Ok(Outcome { verdicts, limit, slowest })
}

fn c1() -> Result<Outcome> {
    let cases = (1..=4).map(|k| timed(|| verify_conj1_mirror(k, 6, OV).map(|v| vec![v]))).collect();
    collect(cases, Some(Duration::from_secs(60)))
}

fn c2() -> Result<Outcome> {
    collect(vec![timed(|| verify_easyj(6, OV).map(|v| vec![v]))], None)
}

fn c3() -> Result<Outcome> {
    collect((1..=4).map(|k| timed(|| Ok(vec![yukawa_check(k, 6)?.into()]))).collect(), None)
}

fn c4() -> Result<Outcome> {
    collect((1..=4).map(|k| timed(|| Ok(vec![ftt_identity_check(k, 6)?.into()]))).collect(), None)
}

fn c5() -> Result<Outcome> {
    collect((1..=4).map(|k| timed(|| Ok(pf_check(k, 6)?.into_iter().map(Verdict::from).collect()))).collect(), None)
}

fn c6() -> Result<Outcome> {
    let mut c = RunConfig::new(Command::VerifyConj2);
    c.degree = Some(vec![5]);
    collect(vec![timed(|| Ok(run(&c)?.verdicts))], None)
}

fn c7() -> Result<Outcome> {
    let mut cases = Vec::new();
    for k in 1..=2 {
        for a in [Action::Antidiagonal, Action::Diagonal] {
            cases.push(timed(|| verify_prop1(k, a, 3, OV).map(|v| vec![v])));
        }
    }
    collect(cases, Some(Duration::from_secs(600)))
}

fn c8() -> Result<Outcome> {
    collect(vec![timed(|| verify_operators(4, OV))], None)
}

fn c9() -> Result<Outcome> {
    let bound = DegreeBound::Box(vec![3, 3]);
    collect(
        vec![timed(|| {
            let mut v = verify_a2(&bound, OV)?;
            v.push(a2_genus1_check(&bound, OV)?.into());
            Ok(v)
        })],
        None,
    )
}

fn c10() -> Result<Outcome> {
    let bound = DegreeBound::Box(vec![2, 2, 2]);
    collect([Action::Diagonal, Action::Antidiagonal].into_iter().map(|a| timed(|| verify_trivalent(a, &bound, OV))).collect(), None)
}

fn c11() -> Result<Outcome> {
    collect(vec![timed(|| verify_conj3(4, OV))], None)
}

fn property(name: &str, cases: u32, check: impl Fn(&mut TestRunner) -> std::result::Result<(), String>) -> Verdict {
    let mut runner = TestRunner::new_with_rng(
        Config { cases, failure_persistence: None, ..Config::default() },
        proptest::test_runner::TestRng::deterministic_rng(proptest::test_runner::RngAlgorithm::ChaCha),
    );
    match check(&mut runner) {
        Ok(()) => Verdict::pass(name),
        Err(e) => Verdict::new(name, false, None, e),
    }
}

fn c12() -> Result<Outcome> {
    let start = Instant::now();
    let mut v = Vec::new();
    v.push(property("ring axioms", 256, |r| {
        r.run(&common::any_triple(), |(a, b, c)| common::ring_axioms(&a, &b, &c).map_err(TestCaseError::fail)).map_err(|e| e.to_string())
    }));
    v.push(property("reversion round trips", 128, |r| {
        r.run(&common::mirror_series(), |gs| common::reversion_round_trip(&gs).map_err(TestCaseError::fail)).map_err(|e| e.to_string())
    }));
    let mut birkhoff = Ok(());
    'outer: for k in 1..=4 {
        for diagonal in [false, true] {
            for degree in 1..=4 {
                birkhoff = common::birkhoff_case(k, diagonal, degree);
                if birkhoff.is_err() {
                    break 'outer;
                }
            }
        }
    }
    v.push(match birkhoff {
        Ok(()) => Verdict::pass("Birkhoff no non-negative ħ"),
        Err(e) => Verdict::new("Birkhoff no non-negative ħ", false, None, e),
    });
    for k in 1..=5 {
        let name = format!("Euler-class identity k={k}");
        v.push(match common::euler_class_identity(k) {
            Ok(()) => Verdict::pass(&name),
            Err(e) => Verdict::new(&name, false, None, e),
        });
    }
    Ok(Outcome { verdicts: v, limit: Some(Duration::from_secs(900)), slowest: start.elapsed() })
}

fn line(n: usize, title: &str, outcome: Result<Outcome>) -> bool {
    let (ok, detail) = match outcome {
        Err(e) => (false, format!("error: {e}")),
        Ok(o) => {
            let total = o.verdicts.len();
            let failed: Vec<&Verdict> = o.verdicts.iter().filter(|v| v.status == Status::Fail).collect();
            let over = o.limit.is_some_and(|l| o.slowest > l);
            let mut d = format!("{}/{} checks, slowest case {:.2}s", total - failed.len(), total, o.slowest.as_secs_f64());
            if let Some(f) = failed.first() {
                let at = f.at.as_ref().map(|e| format!(" at {e:?}")).unwrap_or_default();
                d.push_str(&format!("; first failure '{}'{at}, residual {}", f.name, f.residual));
            }
            if over {
                d.push_str("; over time limit");
            }
            (total > 0 && failed.is_empty() && !over, d)
        }
    };
    println!("criterion {n:>2}  {}  {title}: {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("mirror map of x_k_factored, k=1..4, through q^6", c1),
        ("equivariant mirror map λ log(1+q) through q^6", c2),
        ("Yukawa coupling in t, k=1..4, through e^{6t}", c3),
        ("F_tt identity, k=1..4, through degree 6", c4),
        ("Picard-Fuchs annihilation, k=1..4, through q^6", c5),
        ("genus-1 coefficients and ansatz exponents, k=1,2", c6),
        ("direct vs factored tables, k=1,2, both actions, degree 3", c7),
        ("operator suite through q^4", c8),
        ("A2 restricted W, table and genus-1 identity through (3,3)", c9),
        ("trivalent restricted W, both actions, through (2,2,2)", c10),
        ("X_0 diagonal vs Y_0 through degree 4", c11),
        ("property suites", c12),
    ];
    let mut all = true;
    for (i, (title, f)) in criteria.iter().enumerate() {
        all &= line(i + 1, title, f());
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
