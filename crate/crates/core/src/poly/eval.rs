use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{PolyError, Polynomial, VariableId};
use crate::Rational;

/// Integer coefficient, `(variable index, exponent)` factors and total
/// degree of one term.
type ScaledTerm = (BigInt, Vec<(usize, u32)>, u32);

/// Exact sign evaluation of a fixed polynomial at many rational points.
///
/// Coefficients are cleared to integers once. A point is brought to a common
/// denominator `D` and the polynomial is evaluated homogenised to its total
/// degree, so the sign of `p(x)` is the sign of an integer sum. The sum is
/// attempted in checked `i128` and redone in `BigInt` on overflow.
#[derive(Clone, Debug)]
pub struct SignEvaluator {
    vars: Vec<VariableId>,
    degree: u32,
    terms: Vec<ScaledTerm>,
    small: Option<Vec<i128>>,
    max_exp: Vec<u32>,
}

impl SignEvaluator {
    /// `vars` must be sorted and include every variable of `p`.
    pub fn new(p: &Polynomial, vars: &[VariableId]) -> Result<Self, PolyError> {
        let lcm = p.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut max_exp = alloc::vec![0u32; vars.len()];
        let mut terms = Vec::with_capacity(p.num_terms());
        for (m, c) in &p.terms {
            let coeff = c.numer() * (&lcm / c.denom());
            let mut idx = Vec::with_capacity(m.factors().len());
            for &(v, e) in m.factors() {
                let i = vars.binary_search(&v).map_err(|_| PolyError::UnboundVariable(v))?;
                max_exp[i] = max_exp[i].max(e);
                idx.push((i, e));
            }
            terms.push((coeff, idx, m.degree()));
        }
        let small = terms.iter().map(|(c, _, _)| c.to_i128()).collect::<Option<Vec<_>>>();
        Ok(SignEvaluator { vars: vars.to_vec(), degree: p.total_degree(), terms, small, max_exp })
    }

    pub fn variables(&self) -> &[VariableId] {
        &self.vars
    }

    pub fn sign_at(&self, point: &[Rational]) -> Result<Ordering, PolyError> {
        if point.len() != self.vars.len() {
            return Err(PolyError::DimensionMismatch { expected: self.vars.len(), got: point.len() });
        }
        let den = point.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let nums: Vec<BigInt> = point.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        if let (Some(d), Some(ns)) = (den.to_i64(), nums.iter().map(|n| n.to_i64()).collect::<Option<Vec<_>>>()) {
            return Ok(self.sign_scaled(&ns, d));
        }
        Ok(self.sign_big(&nums, &den))
    }

    /// Sign of `p(numerators / denominator)`; `denominator` must be positive.
    pub fn sign_scaled(&self, numerators: &[i64], denominator: i64) -> Ordering {
        debug_assert!(denominator > 0);
        if let Some(s) = self.sign_small(numerators, denominator) {
            return s;
        }
        let nums: Vec<BigInt> = numerators.iter().map(|&n| BigInt::from(n)).collect();
        self.sign_big(&nums, &BigInt::from(denominator))
    }

    fn sign_small(&self, nums: &[i64], den: i64) -> Option<Ordering> {
        let coeffs = self.small.as_ref()?;
        let mut dpow = alloc::vec![1i128; self.degree as usize + 1];
        for k in 1..dpow.len() {
            dpow[k] = dpow[k - 1].checked_mul(den as i128)?;
        }
        let mut pows: Vec<Vec<i128>> = Vec::with_capacity(nums.len());
        for (i, &n) in nums.iter().enumerate() {
            let mut row = alloc::vec![1i128; self.max_exp[i] as usize + 1];
            for k in 1..row.len() {
                row[k] = row[k - 1].checked_mul(n as i128)?;
            }
            pows.push(row);
        }
        let mut acc: i128 = 0;
        for (c, (_, idx, deg)) in coeffs.iter().zip(&self.terms) {
            let mut t = c.checked_mul(dpow[(self.degree - deg) as usize])?;
            for &(i, e) in idx {
                t = t.checked_mul(pows[i][e as usize])?;
            }
            acc = acc.checked_add(t)?;
        }
        Some(acc.cmp(&0))
    }

    fn sign_big(&self, nums: &[BigInt], den: &BigInt) -> Ordering {
        let mut acc = BigInt::zero();
        for (c, idx, deg) in &self.terms {
            let mut t = c * num_traits::pow(den.clone(), (self.degree - deg) as usize);
            for &(i, e) in idx {
                t *= num_traits::pow(nums[i].clone(), e as usize);
            }
            acc += t;
        }
        if acc.is_positive() {
            Ordering::Greater
        } else if acc.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }
}
