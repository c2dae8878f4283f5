//! Cross-validation of the permanent engines on random matrices.

use rand::Rng;
use stableperm_core::permanent::{alpha_permanent, enumerate, k_permanent, ryser, subset_dp};
use stableperm_core::sampling::{rational_in, trial_rng};
use stableperm_core::{rat, AlphaWeight, Matrix, Polynomial, RationalMatrix, SymbolicMatrix, VariableId};

use super::{derive_seed, SuiteParams};
use crate::report::{CaseResult, Label, Runner, SuiteReport};

/// An `n x n` matrix whose entries are sparse integer combinations of
/// `1, x_1, x_2, y_1, y_2`.
pub fn random_symbolic(n: usize, seed: u64) -> SymbolicMatrix {
    let mut rng = trial_rng(seed, 0);
    let basis = [
        Polynomial::one(),
        Polynomial::var(VariableId::x(1)),
        Polynomial::var(VariableId::x(2)),
        Polynomial::var(VariableId::y(1)),
        Polynomial::var(VariableId::y(2)),
    ];
    Matrix::from_fn(n, n, |_, _| {
        basis.iter().fold(Polynomial::zero(), |acc, b| {
            if rng.gen_bool(0.4) {
                acc + b.scale(&rat(rng.gen_range(-3..=3)))
            } else {
                acc
            }
        })
    })
}

/// An `n x n` matrix of rationals in `[-5, 5]` with denominators up to 4.
pub fn random_numeric(n: usize, seed: u64) -> RationalMatrix {
    let mut rng = trial_rng(seed, 0);
    Matrix::from_fn(n, n, |_, _| rational_in(&mut rng, 5, 4))
}

pub fn symbolic_case(m: &SymbolicMatrix) -> CaseResult {
    let mut r = CaseResult::new(format!("{}x{} symbolic", m.rows(), m.cols()));
    let inputs = || m.to_string();
    let naive = enumerate(m).expect("within caps");
    r.check_eq("subset DP = enumeration", inputs, &naive, &subset_dp(m).expect("within caps"));
    r.check_eq("Ryser = enumeration", inputs, &naive, &ryser(m).expect("within caps"));
    r.check_eq("per_n = per", inputs, &naive, &k_permanent(m, m.rows()).expect("within caps"));
    let one = alpha_permanent(m, &AlphaWeight::Value(rat(1))).expect("within caps");
    r.check_eq("alpha = 1 gives per", inputs, &naive, &one);
    r
}

pub fn numeric_case(m: &RationalMatrix) -> CaseResult {
    let mut r = CaseResult::new(format!("{}x{} numeric", m.rows(), m.cols()));
    let inputs = || m.to_string();
    let naive = enumerate(m).expect("within caps");
    r.check_eq("Ryser = enumeration", inputs, &naive, &ryser(m).expect("within caps"));
    r.check_eq("subset DP = enumeration", inputs, &naive, &subset_dp(m).expect("within caps"));
    r.check_eq("per_n = per", inputs, &naive, &k_permanent(m, m.rows()).expect("within caps"));
    r
}

pub fn engines(params: &SuiteParams, runner: &Runner) -> anyhow::Result<SuiteReport> {
    let count = params.count.unwrap_or(100);
    let mut report = SuiteReport::new("engines", Label::TheoremBacked).seeded(params.seed, None).param("count", count);
    let symbolic: Vec<SymbolicMatrix> =
        (0..count).map(|i| random_symbolic(1 + i as usize % 6, derive_seed(params.seed, i))).collect();
    report.absorb(runner.map(&symbolic, symbolic_case));
    let numeric: Vec<RationalMatrix> =
        (0..count).map(|i| random_numeric(1 + i as usize % 8, derive_seed(params.seed ^ 0x5eed, i))).collect();
    report.absorb(runner.map(&numeric, numeric_case));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_random_cases_agree() {
        for i in 0..12 {
            let r = symbolic_case(&random_symbolic(1 + i % 4, i as u64));
            assert!(r.failures.is_empty(), "{:?}", r.failures);
            let r = numeric_case(&random_numeric(1 + i % 6, i as u64));
            assert!(r.failures.is_empty(), "{:?}", r.failures);
        }
    }

    #[test]
    fn corpus_is_reproducible() {
        assert_eq!(random_symbolic(4, 9), random_symbolic(4, 9));
        assert_ne!(random_numeric(4, 9), random_numeric(4, 10));
    }
}
