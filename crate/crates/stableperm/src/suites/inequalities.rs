//! Permanental inequalities for nonnegative monotone column matrices, all
//! phrased through the measure `mu(S) = per(A_S)`, where `A_S` replaces the
//! columns in `S` by ones.

use stableperm_core::matrices::ValueRange;
use stableperm_core::permanent::ryser;
use stableperm_core::{rat, Matrix, MonotoneColumnMatrix, Rational};

use super::{derive_seed, SuiteParams};
use crate::report::{CaseResult, Label, Runner, SuiteReport};

/// Largest `n` for the exhaustive pairwise checks.
pub const PAIRWISE_MAX_N: usize = 5;
/// Largest `n` for the lattice and association checks, which are quadratic
/// in `2^n`.
pub const LATTICE_MAX_N: usize = 4;

/// `mu(S)` for every column mask `S`.
pub fn measure(a: &MonotoneColumnMatrix) -> Vec<Rational> {
    (0..1u64 << a.cols()).map(|s| ryser(a.columns_to_ones_mask(s).matrix()).expect("square within caps")).collect()
}

/// `per(A_(S+i)) per(A_(S+j)) >= per(A_(S+i+j)) per(A_S)` for all `S` and
/// `i < j` outside `S`.
pub fn pairwise_checks(a: &MonotoneColumnMatrix, mu: &[Rational], r: &mut CaseResult) {
    let n = a.cols();
    for s in 0..1usize << n {
        for i in (0..n).filter(|&i| s >> i & 1 == 0) {
            for j in (i + 1..n).filter(|&j| s >> j & 1 == 0) {
                let lhs = &mu[s | 1 << i] * &mu[s | 1 << j];
                let rhs = &mu[s | 1 << i | 1 << j] * &mu[s];
                r.check("pairwise", lhs >= rhs, || format!("{a} S={s:#b} i={i} j={j}"), format!(">= {rhs}"), lhs);
            }
        }
    }
}

/// `mu(S) mu(T) >= mu(S | T) mu(S & T)` for all pairs.
pub fn lattice_checks(a: &MonotoneColumnMatrix, mu: &[Rational], r: &mut CaseResult) {
    let n = a.cols();
    for s in 0..1usize << n {
        for t in s + 1..1usize << n {
            let lhs = &mu[s] * &mu[t];
            let rhs = &mu[s | t] * &mu[s & t];
            r.check("log-submodular", lhs >= rhs, || format!("{a} S={s:#b} T={t:#b}"), format!(">= {rhs}"), lhs);
        }
    }
}

/// `E[fg] E[1] <= E[f] E[g]` for `f = 1[|S & U| >= u]` and `g = 1[|S & V|
/// >= v]` over disjoint nonempty `U, V` and thresholds `u, v >= 1`.
pub fn association_checks(a: &MonotoneColumnMatrix, mu: &[Rational], r: &mut CaseResult) {
    let n = a.cols();
    let full = (1usize << n) - 1;
    let total: Rational = mu.iter().sum();
    for uset in 1..=full {
        let rest = full & !uset;
        // Every nonempty submask of the complement.
        let mut vset = rest;
        while vset > 0 {
            for u in 1..=uset.count_ones() {
                for v in 1..=vset.count_ones() {
                    let f = |s: usize| (s & uset).count_ones() >= u;
                    let g = |s: usize| (s & vset).count_ones() >= v;
                    let (mut ef, mut eg, mut efg) = (rat(0), rat(0), rat(0));
                    for (s, m) in mu.iter().enumerate() {
                        if f(s) {
                            ef += m;
                        }
                        if g(s) {
                            eg += m;
                        }
                        if f(s) && g(s) {
                            efg += m;
                        }
                    }
                    let lhs = &efg * &total;
                    let rhs = &ef * &eg;
                    r.check(
                        "negative association",
                        lhs <= rhs,
                        || format!("{a} U={uset:#b} u={u} V={vset:#b} v={v}"),
                        format!("<= {rhs}"),
                        lhs,
                    );
                }
            }
            vset = (vset - 1) & rest;
        }
    }
}

/// `per(A) <= s_1 ... s_n n! / n^n` for column sums `s_j`.
pub fn column_sum_check(a: &MonotoneColumnMatrix, r: &mut CaseResult) {
    let n = a.cols();
    let per = ryser(a.matrix()).expect("square within caps");
    let bound = a.column_sums().iter().fold(rat(1), |acc, s| acc * s) * stableperm_core::combinatorics::factorial(n)
        / rat((n as i64).pow(n as u32));
    r.check("column-sum bound", per <= bound, || a.to_string(), format!("<= {bound}"), per);
}

/// A random nonnegative monotone `n x n` matrix with entries in `0..=9`.
pub fn random_nonnegative(n: usize, seed: u64) -> MonotoneColumnMatrix {
    MonotoneColumnMatrix::random(n, n, &ValueRange::integers(0, 9), seed)
}

pub fn battery_case(a: &MonotoneColumnMatrix) -> CaseResult {
    let mut r = CaseResult::new(a.to_string());
    if !a.is_nonnegative() {
        r.fail("nonnegative", a.to_string(), "negative entry");
        return r;
    }
    let mu = measure(a);
    if a.cols() <= PAIRWISE_MAX_N {
        pairwise_checks(a, &mu, &mut r);
    }
    if a.cols() <= LATTICE_MAX_N {
        lattice_checks(a, &mu, &mut r);
        association_checks(a, &mu, &mut r);
    }
    column_sum_check(a, &mut r);
    r
}

pub fn bound_case(a: &MonotoneColumnMatrix) -> CaseResult {
    let mut r = CaseResult::new(a.to_string());
    column_sum_check(a, &mut r);
    r
}

/// The fixed cases: `J_n` and the zero matrix for `n = 2..=5`.
pub fn fixed_cases() -> Vec<MonotoneColumnMatrix> {
    (2..=5)
        .flat_map(|n| {
            let ones = MonotoneColumnMatrix::new(Matrix::ones(n, n)).expect("constant columns");
            [ones, MonotoneColumnMatrix::zeros(n, n)]
        })
        .collect()
}

pub fn inequalities(params: &SuiteParams, runner: &Runner) -> anyhow::Result<SuiteReport> {
    let count = params.count.unwrap_or(200);
    let bound_count = 1000;
    let mut report = SuiteReport::new("inequalities", Label::TheoremBacked)
        .seeded(params.seed, None)
        .param("count", count)
        .param("bound-count", bound_count);
    let battery: Vec<MonotoneColumnMatrix> = match &params.input {
        Some(input) => vec![input.to_monotone()?],
        None => {
            let mut v = fixed_cases();
            v.extend((0..count).map(|i| random_nonnegative(2 + i as usize % 4, derive_seed(params.seed, i))));
            v
        }
    };
    report.absorb(runner.map(&battery, battery_case));
    if params.input.is_none() {
        let bound: Vec<MonotoneColumnMatrix> = (0..bound_count)
            .map(|i| random_nonnegative(1 + i as usize % 6, derive_seed(params.seed ^ 0xb0b0, i)))
            .collect();
        report.absorb(runner.map(&bound, bound_case));
    }
    Ok(report)
}
