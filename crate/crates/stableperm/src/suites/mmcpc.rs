//! Stability of `per(z_j + a_ij)` for monotone column matrices: the
//! diagonal is real-rooted, line restrictions are real-rooted, and every
//! pair of variables satisfies the Rayleigh inequality.

use stableperm_core::matrices::ValueRange;
use stableperm_core::permanent::mcp_polynomial;
use stableperm_core::stability::{rayleigh_check, real_rooted, stability_sample_test, RayleighConfig, SamplingConfig};
use stableperm_core::{FerrersMatrix, MonotoneColumnMatrix, Polynomial, VariableId};

use super::identities::witness_text;
use super::{choose, derive_seed, diagonal_var, z_set, SuiteParams};
use crate::report::{CaseResult, Label, Runner, SuiteReport};

/// The corpus: every `n x n` Ferrers shape followed by `count` random
/// monotone matrices with entries in `[-9, 9]`.
pub fn corpus(n: usize, count: u64, seed: u64) -> Vec<MonotoneColumnMatrix> {
    let mut out: Vec<MonotoneColumnMatrix> =
        FerrersMatrix::enumerate(n, n).iter().map(FerrersMatrix::to_monotone).collect();
    let range = ValueRange::integers(-9, 9);
    out.extend((0..count).map(|i| MonotoneColumnMatrix::random(n, n, &range, derive_seed(seed, i))));
    out
}

fn mcp(a: &MonotoneColumnMatrix) -> Polynomial {
    mcp_polynomial(a).expect("square matrix within caps")
}

/// Real-rootedness of the diagonal `per(z + a_ij)`, certified by Sturm
/// sequences.
pub fn diagonal_case(a: &MonotoneColumnMatrix) -> CaseResult {
    let mut r = CaseResult::new(a.to_string());
    let p = mcp(a);
    let diag = p.diagonalize(&z_set(a.cols()), diagonal_var()).to_univariate(diagonal_var()).expect("one variable");
    r.check("diagonal real-rooted", real_rooted(&diag), || a.to_string(), "real-rooted", &diag);
    r
}

/// Real-rootedness along sampled lines with positive directions.
pub fn sampling_case(a: &MonotoneColumnMatrix, sampling: &SamplingConfig) -> CaseResult {
    let mut r = CaseResult::new(a.to_string());
    let v = stability_sample_test(&mcp(a), sampling);
    r.check("line sampling", v.passed(), || format!("{a} seed={}", sampling.seed), "passes", witness_text(&v.witness));
    r
}

/// Both of the above.
pub fn stability_case(a: &MonotoneColumnMatrix, sampling: &SamplingConfig) -> CaseResult {
    let mut r = diagonal_case(a);
    merge(&mut r, sampling_case(a, sampling));
    r
}

fn merge(into: &mut CaseResult, other: CaseResult) {
    into.checks += other.checks;
    into.failures.extend(other.failures);
    into.refutations.extend(other.refutations);
}

/// The Rayleigh inequality for every pair `z_i, z_j`.
pub fn rayleigh_case(a: &MonotoneColumnMatrix, config: &RayleighConfig) -> CaseResult {
    let mut r = CaseResult::new(a.to_string());
    let p = mcp(a);
    let n = a.cols() as u32;
    for i in 1..=n {
        for j in i + 1..=n {
            let name = format!("Rayleigh z{i} z{j}");
            let inputs = || format!("{a} seed={}", config.seed);
            match rayleigh_check(&p, VariableId::z(i), VariableId::z(j), config) {
                Ok(v) => r.check(&name, v.passed(), inputs, "non-negative", witness_text(&v.witness)),
                Err(e) => r.fail(&name, inputs(), e),
            }
        }
    }
    r
}

pub fn mmcpc(params: &SuiteParams, runner: &Runner) -> anyhow::Result<SuiteReport> {
    let n = params.n.unwrap_or(5);
    let count = params.count.unwrap_or(100);
    let sampling = SamplingConfig { trials: params.trials(), seed: params.seed, ..SamplingConfig::default() };
    let rayleigh = RayleighConfig { points: params.points(), seed: params.seed, ..RayleighConfig::default() };
    let mut report = SuiteReport::new("mmcpc", Label::TheoremBacked)
        .seeded(params.seed, Some(sampling.trials))
        .param("n", n)
        .param("count", count)
        .param("points", rayleigh.points);
    let cases = match &params.input {
        Some(input) => vec![input.to_monotone()?],
        None => {
            let shapes = FerrersMatrix::enumerate(n, n).len() as u64;
            report.universe(&format!("{n}x{n} Ferrers shapes"), shapes, choose(2 * n as u64, n as u64));
            corpus(n, count, params.seed)
        }
    };
    let results = runner.map(&cases, |a| {
        let mut r = stability_case(a, &sampling);
        merge(&mut r, rayleigh_case(a, &rayleigh));
        r
    });
    report.absorb(results);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_layout() {
        let c = corpus(3, 5, 1);
        assert_eq!(c.len(), 20 + 5);
        assert_eq!(corpus(3, 5, 1), c);
    }

    #[test]
    fn small_cases_pass() {
        let sampling = SamplingConfig { trials: 8, ..SamplingConfig::default() };
        let rayleigh = RayleighConfig { points: 50, ..RayleighConfig::default() };
        for a in corpus(3, 4, 2) {
            let r = stability_case(&a, &sampling);
            assert!(r.failures.is_empty(), "{:?}", r.failures);
            let r = rayleigh_case(&a, &rayleigh);
            assert!(r.failures.is_empty(), "{:?}", r.failures);
            assert_eq!(r.checks, 3);
        }
    }

    #[test]
    fn non_monotone_matrix_fails_the_diagonal_check() {
        // Columns of [[0, 1], [1, 0]] are not ordered alike; the diagonal is 2z^2 + 2z + 1.
        let a =
            stableperm_core::Matrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap().map(|&v| stableperm_core::rat(v));
        assert!(MonotoneColumnMatrix::new(a.clone()).is_err());
        let m = stableperm_core::matrices::build_jz_plus_a(&a);
        let p = stableperm_core::permanent::permanent_symbolic(&m).unwrap();
        let d = p.diagonalize(&z_set(2), diagonal_var()).to_univariate(diagonal_var()).unwrap();
        assert!(!real_rooted(&d));
    }
}
