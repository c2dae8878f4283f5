//! Exact polynomial identities for `B(A)`: the differential recurrence and
//! its α-analogue, Ferrers duality, the `z`-to-`y` change of variables, and
//! the padding identities for `k`-permanents.

use std::collections::BTreeSet;

use stableperm_core::combinatorics::{binomial, factorial};
use stableperm_core::matrices::{PadMode, ValueRange};
use stableperm_core::permanent::{alpha_permanent, k_permanent, permanent_symbolic};
use stableperm_core::sampling::trial_rng;
use stableperm_core::stability::{stability_sample_test, SamplingConfig, Witness};
use stableperm_core::{
    rat, AlphaWeight, FerrersMatrix, Matrix, MonotoneColumnMatrix, Polynomial, Rational, SymbolicMatrix, VariableId,
};

use super::{choose, derive_seed, swap_xy, SuiteParams};
use crate::report::{CaseResult, Label, Runner, SuiteReport};

fn x(i: usize) -> Polynomial {
    Polynomial::var(VariableId::x(i as u32))
}

fn y(j: usize) -> Polynomial {
    Polynomial::var(VariableId::y(j as u32))
}

fn alpha() -> Polynomial {
    Polynomial::var(VariableId::alpha())
}

fn per(m: &SymbolicMatrix) -> Polynomial {
    permanent_symbolic(m).expect("square matrix within caps")
}

fn alpha_per(m: &SymbolicMatrix) -> Polynomial {
    alpha_permanent(m, &AlphaWeight::Symbolic(VariableId::alpha())).expect("square matrix within caps")
}

fn per_k(m: &SymbolicMatrix, k: usize) -> Polynomial {
    k_permanent(m, k).expect("k within range")
}

/// Every square shape of side `n`, or the single input shape.
fn square_shapes(
    params: &SuiteParams,
    default_n: usize,
    report: &mut SuiteReport,
) -> anyhow::Result<Vec<FerrersMatrix>> {
    if let Some(input) = &params.input {
        return Ok(vec![input.to_ferrers()?]);
    }
    let n = params.n.unwrap_or(default_n);
    anyhow::ensure!(n >= 1, "--n must be at least 1");
    let shapes = FerrersMatrix::enumerate(n, n);
    report.universe(&format!("{n}x{n} Ferrers shapes"), shapes.len() as u64, choose(2 * n as u64, n as u64));
    Ok(shapes)
}

/// `per(B(A))`, or the α-permanent, for the shape `a`.
fn lhs(a: &FerrersMatrix, with_alpha: bool) -> Polynomial {
    if with_alpha {
        alpha_per(&a.build_b())
    } else {
        per(&a.build_b())
    }
}

/// The right-hand side of the recurrence for a square shape with `a_nn = 0`:
/// `c x_n per(B(A°)) + x_n y_n d per(B(A°))` where `c = k` (or `alpha + k -
/// 1`) and `d` differentiates in `x_1..x_(n-k), y_1..y_(n-1)`.
pub fn recurrence_rhs(a: &FerrersMatrix, with_alpha: bool) -> Polynomial {
    let n = a.rows();
    let k = n - a.heights()[n - 1];
    let inner = match a.truncate() {
        Ok(t) => lhs(&t, with_alpha),
        // The empty permanent.
        Err(_) => Polynomial::one(),
    };
    let diff: BTreeSet<VariableId> =
        (1..=(n - k) as u32).map(VariableId::x).chain((1..n as u32).map(VariableId::y)).collect();
    let c = if with_alpha { alpha() + Polynomial::from_int(k as i64 - 1) } else { Polynomial::from_int(k as i64) };
    let body =
        inner.apply_recurrence_operator_poly(&c, VariableId::y(n as u32), &diff).expect("y_n is not differentiated");
    body * x(n)
}

fn recurrence_case(a: &FerrersMatrix, with_alpha: bool) -> CaseResult {
    let mut r = CaseResult::new(a.to_string());
    let inputs = || a.to_string();
    if a.rows() != a.cols() {
        r.fail("square", inputs(), "shape is not square");
        return r;
    }
    let n = a.rows();
    let original = lhs(a, with_alpha);
    // With a_nn = 1 the identity is checked on the dual, whose permanent is
    // the original with x and y exchanged.
    let b = if a.heights()[n - 1] == n {
        let d = a.dual();
        let dual_lhs = lhs(&d, with_alpha);
        r.check_eq("dual exchanges x and y", inputs, &swap_xy(&original), &dual_lhs);
        d
    } else {
        a.clone()
    };
    let k = n - b.heights()[n - 1];
    r.check("k >= 1", k >= 1, inputs, ">= 1", k);
    if k == 0 {
        return r;
    }
    let want = if b == *a { original } else { lhs(&b, with_alpha) };
    r.check_eq("recurrence", || b.to_string(), &want, &recurrence_rhs(&b, with_alpha));
    if with_alpha {
        // alpha = 1 gives back the ordinary permanent.
        let one = [(VariableId::alpha(), rat(1))].into_iter().collect();
        r.check_eq("alpha = 1 specialisation", || b.to_string(), &lhs(&b, false), &want.specialize(&one));
    }
    r
}

pub fn recurrence(params: &SuiteParams, runner: &Runner) -> anyhow::Result<SuiteReport> {
    let mut report = SuiteReport::new("recurrence", Label::TheoremBacked).param("n", params.n.unwrap_or(5));
    let shapes = square_shapes(params, 5, &mut report)?;
    report.absorb(runner.map(&shapes, |a| recurrence_case(a, false)));
    Ok(report)
}

pub fn alpha_recurrence(params: &SuiteParams, runner: &Runner) -> anyhow::Result<SuiteReport> {
    let mut report = SuiteReport::new("alpha-recurrence", Label::TheoremBacked).param("n", params.n.unwrap_or(4));
    let shapes = square_shapes(params, 4, &mut report)?;
    report.absorb(runner.map(&shapes, |a| recurrence_case(a, true)));
    Ok(report)
}

/// `per_k(B(A^dual; x; y)) = per_k(B(A; y; x))` for every `k`, plus the
/// full and α-permanent versions on square shapes.
pub fn duality_case(a: &FerrersMatrix) -> CaseResult {
    let mut r = CaseResult::new(format!("{}x{}:{}", a.rows(), a.cols(), a));
    let b = a.build_b();
    let d = a.dual().build_b();
    let inputs = || a.to_string();
    for k in 0..=a.rows().min(a.cols()) {
        r.check_eq(&format!("per_{k}"), inputs, &swap_xy(&per_k(&b, k)), &per_k(&d, k));
    }
    if a.rows() == a.cols() {
        r.check_eq("per", inputs, &swap_xy(&per(&b)), &per(&d));
        r.check_eq("alpha-per", inputs, &swap_xy(&alpha_per(&b)), &alpha_per(&d));
    }
    r
}

pub fn duality(params: &SuiteParams, runner: &Runner) -> anyhow::Result<SuiteReport> {
    let n = params.n.unwrap_or(4);
    let mut report = SuiteReport::new("duality", Label::TheoremBacked).param("n", n);
    let shapes: Vec<FerrersMatrix> = match &params.input {
        Some(input) => vec![input.to_ferrers()?],
        None => {
            let mut all = Vec::new();
            let mut formula = 0;
            for m in 1..=n {
                for c in 1..=n {
                    all.extend(FerrersMatrix::enumerate(m, c));
                    formula += choose((m + c) as u64, c as u64);
                }
            }
            report.universe(&format!("m x n Ferrers shapes, m, n <= {n}"), all.len() as u64, formula);
            all
        }
    };
    report.absorb(runner.map(&shapes, duality_case));
    Ok(report)
}

/// `per(z_j + a_ij) = z_1 ... z_n per(a_ij y_j + 1 - a_ij)` at
/// `y_j = (z_j + 1) / z_j`, checked by clearing denominators term by term and again by
/// exact evaluation at rational points.
pub fn z_to_y_case(a: &FerrersMatrix, seed: u64) -> CaseResult {
    let mut r = CaseResult::new(a.to_string());
    let inputs = || a.to_string();
    let n = a.cols();
    let lhs = per(&a.to_monotone().jz_plus_a());
    let p = per(&a.build_b_with(|_| Polynomial::one(), |j| y(j + 1)));
    let z = |j: usize| Polynomial::var(VariableId::z(j as u32));
    let mut cleared = Polynomial::zero();
    for (m, c) in p.terms() {
        let mut term = Polynomial::constant(c.clone());
        for j in 1..=n {
            term = match m.degree_in(VariableId::y(j as u32)) {
                0 => term * z(j),
                1 => term * (z(j) + Polynomial::one()),
                e => {
                    r.fail("multiaffine in y", inputs(), format!("y{j} has degree {e}"));
                    return r;
                }
            };
        }
        cleared += term;
    }
    r.check_eq("cleared denominators", inputs, &lhs, &cleared);
    let mut rng = trial_rng(seed, 0);
    for _ in 0..5 {
        let zs: Vec<Rational> = (0..n)
            .map(|_| loop {
                let v = stableperm_core::sampling::rational_in(&mut rng, 9, 5);
                if v != rat(0) {
                    break v;
                }
            })
            .collect();
        let zmap = (1..=n).map(|j| (VariableId::z(j as u32), zs[j - 1].clone())).collect();
        let ymap = (1..=n).map(|j| (VariableId::y(j as u32), (&zs[j - 1] + rat(1)) / &zs[j - 1])).collect();
        let left = lhs.evaluate(&zmap).expect("all z bound");
        let right = zs.iter().fold(rat(1), |acc, v| acc * v) * p.evaluate(&ymap).expect("all y bound");
        r.check_eq("rational-function value", || format!("{a} at z = {zs:?}"), &left, &right);
    }
    r
}

pub fn z_to_y(params: &SuiteParams, runner: &Runner) -> anyhow::Result<SuiteReport> {
    let mut report =
        SuiteReport::new("z-to-y", Label::TheoremBacked).seeded(params.seed, None).param("n", params.n.unwrap_or(4));
    let shapes = square_shapes(params, 4, &mut report)?;
    report.absorb(runner.map(&shapes, |a| z_to_y_case(a, params.seed)));
    Ok(report)
}

fn t() -> Polynomial {
    Polynomial::var(VariableId::t(0))
}

fn shift_by_t(m: &SymbolicMatrix) -> SymbolicMatrix {
    m.map(|p| p + &t())
}

/// Padding and `t`-expansion identities for an `m x n` Ferrers shape with
/// `m <= n`, and line sampling of every `per_k(B(A))`.
pub fn b_side_case(a: &FerrersMatrix, sampling: &SamplingConfig) -> CaseResult {
    let (m, n) = (a.rows(), a.cols());
    let mut r = CaseResult::new(format!("B {m}x{n}:{a}"));
    let inputs = || a.to_string();
    if m > n {
        r.fail("shape", inputs(), "expected m <= n");
        return r;
    }
    let b = a.build_b();
    let pers: Vec<Polynomial> = (0..=m).map(|k| per_k(&b, k)).collect();
    let padded = per(&a.pad_rows(n - m).build_b());
    let xs = (m + 1..=n).fold(Polynomial::constant(factorial(n - m)), |acc, i| acc * x(i));
    r.check_eq("row padding", inputs, &padded, &(xs * &pers[m]));
    let shifted = per_k(&shift_by_t(&b), m);
    let expansion = (0..=m).fold(Polynomial::zero(), |acc, k| {
        let c = binomial(n - k, m - k) * factorial(m - k);
        acc + pers[k].scale(&c) * t().pow((m - k) as u32)
    });
    r.check_eq("t-expansion", inputs, &shifted, &expansion);
    for (k, p) in pers.iter().enumerate() {
        let v = stability_sample_test(p, sampling);
        r.check(&format!("per_{k} stable"), v.passed(), inputs, "passes", witness_text(&v.witness));
    }
    r
}

/// The column-padding identities for an `m x n` monotone matrix with `m >=
/// n`, and line sampling of every `per_k(J Z + A)`.
pub fn jz_side_case(a: &MonotoneColumnMatrix, sampling: &SamplingConfig) -> CaseResult {
    let (m, n) = (a.rows(), a.cols());
    let mut r = CaseResult::new(format!("JZ {m}x{n}:{}", a.matrix()));
    let inputs = || a.matrix().to_string();
    if m < n {
        r.fail("shape", inputs(), "expected m >= n");
        return r;
    }
    let jz = a.jz_plus_a();
    let pers: Vec<Polynomial> = (0..=n).map(|k| per_k(&jz, k)).collect();
    let padded = per(&a.pad_cols(m - n, PadMode::Append).jz_plus_a());
    let zs = (n + 1..=m)
        .fold(Polynomial::constant(factorial(m - n)), |acc, j| acc * Polynomial::var(VariableId::z(j as u32)));
    r.check_eq("column padding", inputs, &padded, &(zs * &pers[n]));
    let shifted = per_k(&shift_by_t(&jz), n);
    let expansion = (0..=n).fold(Polynomial::zero(), |acc, k| {
        let c = binomial(m - k, n - k) * factorial(n - k);
        acc + pers[k].scale(&c) * t().pow((n - k) as u32)
    });
    r.check_eq("t-expansion", inputs, &shifted, &expansion);
    r.check_eq("per_0 = 1", inputs, &Polynomial::one(), &pers[0]);
    for (k, p) in pers.iter().enumerate() {
        let v = stability_sample_test(p, sampling);
        r.check(&format!("per_{k} stable"), v.passed(), inputs, "passes", witness_text(&v.witness));
    }
    r
}

pub fn witness_text(w: &Option<Witness>) -> String {
    match w {
        None => "passes".into(),
        Some(Witness::Line { trial, base, direction, .. }) => {
            format!("trial {trial}: base {} direction {}", rationals(base), rationals(direction))
        }
        Some(Witness::Point { index, point, .. }) => format!("point {index}: {}", rationals(point)),
        Some(Witness::Univariate) => "univariate polynomial has non-real roots".into(),
    }
}

pub fn rationals(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(|r| r.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// Random monotone integer matrices, entries in `[-9, 9]`.
pub fn random_monotone(rows: usize, cols: usize, seed: u64) -> MonotoneColumnMatrix {
    MonotoneColumnMatrix::random(rows, cols, &ValueRange::integers(-9, 9), seed)
}

pub fn k_identities(params: &SuiteParams, runner: &Runner) -> anyhow::Result<SuiteReport> {
    let n = params.n.unwrap_or(4);
    let count = params.count.unwrap_or(20);
    let sampling = SamplingConfig { trials: params.trials(), seed: params.seed, ..SamplingConfig::default() };
    let mut report = SuiteReport::new("k-identities", Label::TheoremBacked)
        .seeded(params.seed, Some(sampling.trials))
        .param("n", n)
        .param("count", count);
    let mut shapes = Vec::new();
    let mut formula = 0;
    for m in 1..=n {
        for c in m..=n {
            shapes.extend(FerrersMatrix::enumerate(m, c));
            formula += choose((m + c) as u64, c as u64);
        }
    }
    report.universe(&format!("m x n Ferrers shapes, m <= n <= {n}"), shapes.len() as u64, formula);
    report.absorb(runner.map(&shapes, |a| b_side_case(a, &sampling)));
    // Tall monotone matrices: sizes cycle through all m >= n with m <= n + 1.
    let sizes: Vec<(usize, usize)> = (1..=n).flat_map(|c| (c..=n + 1).map(move |m| (m, c))).collect();
    let mats: Vec<MonotoneColumnMatrix> = (0..count)
        .map(|i| {
            let (m, c) = sizes[i as usize % sizes.len()];
            random_monotone(m, c, derive_seed(params.seed, i))
        })
        .collect();
    report.absorb(runner.map(&mats, |a| jz_side_case(a, &sampling)));
    Ok(report)
}

/// Line sampling of `per_k(J Z + A)` for wide monotone matrices (`m < n`),
/// where stability is open. Refutations are findings, not failures.
pub fn k_conjecture_case(a: &MonotoneColumnMatrix, sampling: &SamplingConfig) -> CaseResult {
    let (m, n) = (a.rows(), a.cols());
    let mut r = CaseResult::new(format!("JZ {m}x{n}:{}", a.matrix()));
    let jz = a.jz_plus_a();
    for k in 1..=m.min(n) {
        let p = per_k(&jz, k);
        let v = stability_sample_test(&p, sampling);
        r.checks += 1;
        if !v.passed() {
            r.refute(
                &format!("per_{k} stable"),
                format!("{} k={k} seed={}", a.matrix(), sampling.seed),
                witness_text(&v.witness),
            );
        }
    }
    r
}

pub fn k_conjecture(params: &SuiteParams, runner: &Runner) -> anyhow::Result<SuiteReport> {
    let n = params.n.unwrap_or(4);
    let count = params.count.unwrap_or(200);
    let sampling = SamplingConfig { trials: params.trials(), seed: params.seed, ..SamplingConfig::default() };
    let mut report = SuiteReport::new("k-conjecture", Label::ConjectureProbe)
        .seeded(params.seed, Some(sampling.trials))
        .param("n", n)
        .param("count", count);
    let mats: Vec<MonotoneColumnMatrix> = match &params.input {
        Some(input) => vec![input.to_monotone()?],
        None => {
            let sizes: Vec<(usize, usize)> = (2..=n).flat_map(|c| (1..c).map(move |m| (m, c))).collect();
            anyhow::ensure!(!sizes.is_empty(), "--n must be at least 2");
            (0..count)
                .map(|i| {
                    let (m, c) = sizes[i as usize % sizes.len()];
                    random_monotone(m, c, derive_seed(params.seed, i))
                })
                .collect()
        }
    };
    report.absorb(runner.map(&mats, |a| k_conjecture_case(a, &sampling)));
    Ok(report)
}

/// A 2x2 sanity case with a known answer: heights `(0, 1)` give
/// `per(B; alpha) = alpha^2 x1 x2 + alpha x2 y2`.
pub fn alpha_two_by_two() -> (Polynomial, Polynomial) {
    let a = FerrersMatrix::from_heights(2, 2, vec![0, 1]).expect("valid shape");
    let got = alpha_per(&a.build_b());
    let b = Matrix::from_rows(vec![vec![x(1), y(2)], vec![x(2), x(2)]]).expect("rectangular");
    // Identity (two fixed points) and the transposition (one cycle).
    let want = alpha().pow(2) * b.get(0, 0) * b.get(1, 1) + alpha() * b.get(0, 1) * b.get(1, 0);
    (got, want)
}
