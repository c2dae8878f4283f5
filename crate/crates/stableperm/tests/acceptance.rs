//! Acceptance suite: one PASS/FAIL line per criterion with its wall time
//! and budget. Criteria listed in `KNOWN_UNATTAINABLE` are expected to fail
//! and are reported as such; the run fails if the set of failing criteria
//! differs from that list in either direction.

use std::time::{Duration, Instant};

use stableperm::report::{Runner, SuiteReport};
use stableperm::suites::{apolarity, mmcpc, run_suite, Suite, SuiteParams};
use stableperm_core::apolarity::apolarity_form;
use stableperm_core::stability::{RayleighConfig, SamplingConfig};

/// Criteria that cannot pass as stated, with the reason.
const KNOWN_UNATTAINABLE: &[(u32, &str)] = &[(
    11,
    "the form equals (-1)^n a_n b_n per(w_i - z_j) / n!, not n! a_n b_n per(w_i - z_j); \
     the literal version already fails for f = t - 1, g = t + 1 (form 2, n! a_n b_n per = -2)",
)];

/// Line-sampling trials per polynomial.
const TRIALS: u64 = 64;
/// Rayleigh points per variable pair.
const POINTS: u64 = 1000;
/// Random monotone matrices in the stability corpus.
const MMCPC_RANDOM: u64 = 100;
/// Grace demo tolerance on the distance from a root to the disk.
const GRACE_TOL: f64 = 1e-8;
const SEED: u64 = 0;

struct Outcome {
    id: u32,
    name: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
    budget: Duration,
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn summary(r: &SuiteReport) -> String {
    let mut s = format!("{}/{} cases, {} checks, {} failures", r.cases_passed, r.cases_run, r.checks, r.failures.len());
    for u in &r.universe {
        s.push_str(&format!("; {}: {} (formula {})", u.description, u.enumerated, u.formula));
    }
    if let Some(f) = r.failures.first() {
        s.push_str(&format!("; first: {} {} {}", f.case, f.check, f.got));
    }
    s
}

fn suite_criterion(
    id: u32,
    name: &'static str,
    budget: u64,
    runner: &Runner,
    suite: Suite,
    params: SuiteParams,
    extra: impl FnOnce(&SuiteReport) -> Result<(), String>,
) -> Outcome {
    let start = Instant::now();
    let report = run_suite(suite, &params, runner).expect("suite runs");
    let elapsed = start.elapsed();
    let mut detail = summary(&report);
    let mut passed = report.passed();
    if let Err(e) = extra(&report) {
        passed = false;
        detail.push_str(&format!("; {e}"));
    }
    Outcome { id, name, passed, detail, elapsed, budget: secs(budget) }
}

fn expect_cases(n: u64) -> impl FnOnce(&SuiteReport) -> Result<(), String> {
    move |r| if r.cases_run == n { Ok(()) } else { Err(format!("expected {n} cases, ran {}", r.cases_run)) }
}

fn params(n: Option<usize>) -> SuiteParams {
    SuiteParams { n, seed: SEED, ..SuiteParams::default() }
}

fn mmcpc_criteria(runner: &Runner) -> [Outcome; 2] {
    let corpus = mmcpc::corpus(5, MMCPC_RANDOM, SEED);
    let start = Instant::now();
    let results = runner.map(&corpus, mmcpc::diagonal_case);
    let elapsed = start.elapsed();
    let bad = results.iter().filter(|r| !r.failures.is_empty()).count();
    let five = Outcome {
        id: 5,
        name: "diagonal real-rootedness, 252 Ferrers + 100 random 5x5",
        passed: bad == 0 && corpus.len() == 352,
        detail: format!("{} matrices, {bad} not real-rooted", corpus.len()),
        elapsed,
        budget: secs(120),
    };
    let sampling = SamplingConfig { trials: TRIALS, seed: SEED, ..SamplingConfig::default() };
    let rayleigh = RayleighConfig { points: POINTS, seed: SEED, ..RayleighConfig::default() };
    let start = Instant::now();
    let results = runner.map(&corpus, |a| {
        let s = mmcpc::sampling_case(a, &sampling);
        let r = mmcpc::rayleigh_case(a, &rayleigh);
        (s.checks + r.checks, s.failures.len() + r.failures.len())
    });
    let elapsed = start.elapsed();
    let checks: u64 = results.iter().map(|r| r.0).sum();
    let bad: usize = results.iter().map(|r| r.1).sum();
    let six = Outcome {
        id: 6,
        name: "multivariate stability: 64 lines + Rayleigh at 1000 points per pair",
        passed: bad == 0 && checks == 352 * 11,
        detail: format!("{checks} checks, {bad} refuted"),
        elapsed,
        budget: secs(300),
    };
    [five, six]
}

fn apolarity_criterion(runner: &Runner) -> Outcome {
    let start = Instant::now();
    let count = 200u64;
    // The identity exactly as stated, on the suite's corpus.
    let mut literal = 0;
    for i in 0..count {
        let p = apolarity::corpus_pair(SEED, i);
        let form = apolarity_form(&p.f(), &p.g()).expect("equal degrees");
        literal += (form == apolarity::literal_root_form(&p)) as u64;
    }
    let report =
        run_suite(Suite::Apolarity, &SuiteParams { seed: SEED, ..SuiteParams::default() }, runner).expect("suite runs");
    let elapsed = start.elapsed();
    let prefactor_failures = report.failures.iter().filter(|f| f.check == "prefactor law").count();
    let grace_failures = report.failures.iter().filter(|f| f.case.starts_with("grace")).count();
    Outcome {
        id: 11,
        name: "apolarity root form, prefactor law, Grace demo",
        passed: literal == count && report.passed(),
        detail: format!(
            "literal n! a_n b_n per identity holds in {literal}/{count}; corrected identity and remaining checks: {}; \
             prefactor failures {prefactor_failures}; Grace failures {grace_failures} (tol {GRACE_TOL:e})",
            summary(&report)
        ),
        elapsed,
        budget: secs(60),
    }
}

fn determinism_criterion() -> Outcome {
    let start = Instant::now();
    let one = Runner::new(1).expect("pool");
    let eight = Runner::new(8).expect("pool");
    let randomized = [
        Suite::ZToY,
        Suite::Mmcpc,
        Suite::KIdentities,
        Suite::KConjecture,
        Suite::Inequalities,
        Suite::Apolarity,
        Suite::Engines,
    ];
    let mut mismatched = Vec::new();
    for s in randomized {
        let p = SuiteParams { seed: 7, ..SuiteParams::default() };
        let a = run_suite(s, &p, &one).expect("suite runs").to_json();
        // Rerun from the seed echoed in the first report.
        let echoed: SuiteReport = serde_json::from_str(&a).expect("report parses");
        let q =
            SuiteParams { seed: echoed.seed.expect("seed echoed"), trials: echoed.trials, ..SuiteParams::default() };
        let b = run_suite(s, &q, &eight).expect("suite runs").to_json();
        if a != b {
            mismatched.push(s.name());
        }
    }
    Outcome {
        id: 13,
        name: "byte-identical reports at --jobs 1 and --jobs 8",
        passed: mismatched.is_empty(),
        detail: format!("{} randomized suites compared, mismatched: {mismatched:?}", randomized.len()),
        elapsed: start.elapsed(),
        budget: secs(900),
    }
}

fn main() {
    let jobs = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let runner = Runner::new(jobs).expect("pool");
    let mut outcomes = vec![
        suite_criterion(
            1,
            "recurrence, all 5x5 Ferrers shapes",
            60,
            &runner,
            Suite::Recurrence,
            params(Some(5)),
            expect_cases(252),
        ),
        suite_criterion(
            2,
            "alpha-recurrence, all 4x4 Ferrers shapes",
            60,
            &runner,
            Suite::AlphaRecurrence,
            params(Some(4)),
            expect_cases(70),
        ),
        suite_criterion(
            3,
            "dualities, all shapes m, n <= 4, every k",
            60,
            &runner,
            Suite::Duality,
            params(Some(4)),
            |_| Ok(()),
        ),
        suite_criterion(
            4,
            "z-to-y identity, all 4x4 Ferrers shapes",
            30,
            &runner,
            Suite::ZToY,
            params(Some(4)),
            expect_cases(70),
        ),
    ];
    outcomes.extend(mmcpc_criteria(&runner));
    outcomes.push(suite_criterion(
        7,
        "Eulerian identities, n <= 7",
        60,
        &runner,
        Suite::Eulerian,
        params(Some(7)),
        |r| {
            expect_cases(7)(r)?;
            // The n = 3 values, as printed by the CLI.
            let want = [(false, "y2*y3 + y2 + 3*y3 + 1"), (true, "z^2 + 4*z + 1")];
            for (diagonal, value) in want {
                let mut args = vec!["stableperm", "eulerian", "--n", "3"];
                if diagonal {
                    args.push("--diagonal");
                }
                let mut out = Vec::new();
                stableperm::cli::run_with(args, &mut out);
                let text = String::from_utf8(out).expect("utf-8");
                if text.lines().next() != Some(value) {
                    return Err(format!("n = 3: expected {value}, got {text:?}"));
                }
            }
            Ok(())
        },
    ));
    outcomes.push(suite_criterion(
        8,
        "multiset Eulerian, all compositions with sum <= 6",
        60,
        &runner,
        Suite::MultisetEulerian,
        params(Some(6)),
        expect_cases(63),
    ));
    outcomes.push(suite_criterion(
        9,
        "descent-top inequality, n <= 7",
        30,
        &runner,
        Suite::TopInequality,
        params(Some(7)),
        |_| Ok(()),
    ));
    outcomes.push(suite_criterion(
        10,
        "permanental inequalities",
        300,
        &runner,
        Suite::Inequalities,
        params(None),
        |r| {
            // 8 fixed matrices, 200 random, 1000 for the column-sum bound.
            if r.cases_run == 1208 {
                Ok(())
            } else {
                Err(format!("expected 1208 cases, ran {}", r.cases_run))
            }
        },
    ));
    outcomes.push(apolarity_criterion(&runner));
    outcomes.push(suite_criterion(
        12,
        "engine cross-validation",
        60,
        &runner,
        Suite::Engines,
        params(None),
        expect_cases(200),
    ));
    // The k-identity suite has no criterion of its own; it runs here so a
    // regression is still visible.
    let k = suite_criterion(
        0,
        "k-permanent padding identities (supplementary)",
        300,
        &runner,
        Suite::KIdentities,
        params(None),
        |_| Ok(()),
    );
    outcomes.push(determinism_criterion());

    println!();
    let mut failing = Vec::new();
    for o in &outcomes {
        let in_time = o.elapsed <= o.budget;
        let ok = o.passed && in_time;
        if !ok {
            failing.push(o.id);
        }
        let known = KNOWN_UNATTAINABLE.iter().find(|(id, _)| *id == o.id);
        let tag = match (ok, known) {
            (true, _) => "PASS",
            (false, Some(_)) => "FAIL (known)",
            (false, None) => "FAIL",
        };
        println!(
            "criterion {:>2} {tag}: {} [{:.2} s / {} s{}] {}",
            o.id,
            o.name,
            o.elapsed.as_secs_f64(),
            o.budget.as_secs(),
            if in_time { "" } else { ", over budget" },
            o.detail
        );
        if let (false, Some((_, why))) = (ok, known) {
            println!("             reason: {why}");
        }
    }
    println!(
        "supplementary {}: {} [{:.2} s] {}",
        if k.passed { "PASS" } else { "FAIL" },
        k.name,
        k.elapsed.as_secs_f64(),
        k.detail
    );
    let expected: Vec<u32> = KNOWN_UNATTAINABLE.iter().map(|(id, _)| *id).collect();
    println!("failing criteria: {failing:?}; expected: {expected:?}");
    if failing != expected || !k.passed {
        eprintln!("acceptance: failing set differs from the known-unattainable list");
        std::process::exit(1);
    }
}
