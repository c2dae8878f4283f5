//! Permanent engines.
//!
//! * [`ryser`]: inclusion-exclusion over column subsets in Gray-code order.
//! * [`subset_dp`]: dynamic program over (rows done, columns used).
//! * [`enumerate`]: depth-first walk over permutations with prefix products.
//!
//! All engines are generic over the entry ring so they serve rational and
//! polynomial matrices alike. The α-permanent has its own enumeration that
//! tracks cycles incrementally.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::{AddAssign, Mul, Sub};

use num_traits::{One, Zero};

use crate::matrices::{Matrix, MonotoneColumnMatrix, RationalMatrix, SymbolicMatrix};
use crate::poly::{Monomial, Polynomial, VariableId};
use crate::Rational;

/// Largest `n` for the α-permanent enumeration.
pub const PERM_ENUMERATION_CAP: usize = 10;
/// Largest `n` for subset-indexed engines, which allocate `2^n` slots.
pub const SUBSET_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PermError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("k = {k} exceeds min(rows, cols) = {max}")]
    KOutOfRange { k: usize, max: usize },
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    OverCap { n: usize, cap: usize },
    #[error("the inclusion-exclusion engine does not support this mode")]
    Unsupported,
}

/// Entry types the engines accept: exact commutative rings.
pub trait Ring: Clone + Zero + One + for<'a> AddAssign<&'a Self>
where
    for<'a> &'a Self: Mul<&'a Self, Output = Self> + Sub<&'a Self, Output = Self>,
{
}

impl<T> Ring for T
where
    T: Clone + Zero + One + for<'a> AddAssign<&'a T>,
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
}

fn check_square<T: Clone>(m: &Matrix<T>) -> Result<usize, PermError> {
    if m.is_square() {
        Ok(m.rows())
    } else {
        Err(PermError::NotSquare { rows: m.rows(), cols: m.cols() })
    }
}

fn check_subset_cap(n: usize) -> Result<(), PermError> {
    if n > SUBSET_CAP {
        Err(PermError::OverCap { n, cap: SUBSET_CAP })
    } else {
        Ok(())
    }
}

/// Ryser's formula, `per(M) = (-1)^n sum_S (-1)^|S| prod_i sum_{j in S} m_ij`,
/// visiting subsets in Gray-code order so each step adds or removes one
/// column from the running row sums.
pub fn ryser<T: Ring>(m: &Matrix<T>) -> Result<T, PermError>
where
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    let n = check_square(m)?;
    check_subset_cap(n)?;
    let mut sums = alloc::vec![T::zero(); n];
    let mut positive = T::zero();
    let mut negative = T::zero();
    let mut in_set = alloc::vec![false; n];
    for g in 1u64..(1u64 << n) {
        let j = g.trailing_zeros() as usize;
        in_set[j] = !in_set[j];
        for (i, s) in sums.iter_mut().enumerate() {
            if in_set[j] {
                *s += m.get(i, j);
            } else {
                *s = &*s - m.get(i, j);
            }
        }
        let mut prod = sums[0].clone();
        for s in &sums[1..] {
            if prod.is_zero() {
                break;
            }
            prod = &prod * s;
        }
        // Gray code parity: |S| = popcount(g ^ (g >> 1)).
        let size = (g ^ (g >> 1)).count_ones() as usize;
        if (n - size).is_multiple_of(2) {
            positive += &prod;
        } else {
            negative += &prod;
        }
    }
    Ok(&positive - &negative)
}

/// Dynamic program over column subsets: `dp[S]` is the permanent of the
/// first `|S|` rows restricted to columns `S`.
pub fn subset_dp<T: Ring>(m: &Matrix<T>) -> Result<T, PermError>
where
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    let n = check_square(m)?;
    check_subset_cap(n)?;
    let full = (1usize << n) - 1;
    let mut dp: Vec<Option<T>> = alloc::vec![None; 1 << n];
    dp[0] = Some(T::one());
    for mask in 0..full {
        let Some(cur) = dp[mask].take() else {
            continue;
        };
        let row = mask.count_ones() as usize;
        for j in 0..n {
            if mask >> j & 1 == 1 {
                continue;
            }
            let e = m.get(row, j);
            if e.is_zero() {
                continue;
            }
            let t = &cur * e;
            match &mut dp[mask | 1 << j] {
                Some(acc) => *acc += &t,
                slot @ None => *slot = Some(t),
            }
        }
    }
    Ok(dp[full].take().unwrap_or_else(T::zero))
}

/// Sum over all permutations, depth first with shared prefix products.
pub fn enumerate<T: Ring>(m: &Matrix<T>) -> Result<T, PermError>
where
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    let n = check_square(m)?;
    let mut acc = T::zero();
    let mut used = alloc::vec![false; n];
    enumerate_rec(m, 0, &T::one(), &mut used, &mut acc);
    Ok(acc)
}

fn enumerate_rec<T: Ring>(m: &Matrix<T>, row: usize, prefix: &T, used: &mut [bool], acc: &mut T)
where
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    if row == m.rows() {
        *acc += prefix;
        return;
    }
    for j in 0..m.cols() {
        if used[j] || m.get(row, j).is_zero() {
            continue;
        }
        used[j] = true;
        let next = prefix * m.get(row, j);
        enumerate_rec(m, row + 1, &next, used, acc);
        used[j] = false;
    }
}

/// `per_k`: the sum of permanents of all `k x k` submatrices. One pass over
/// the rows, each row either skipped or matched to a fresh column; `dp[S]`
/// accumulates the partial injections onto column set `S`.
pub fn k_permanent<T: Ring>(m: &Matrix<T>, k: usize) -> Result<T, PermError>
where
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    let max = m.rows().min(m.cols());
    if k > max {
        return Err(PermError::KOutOfRange { k, max });
    }
    let n = m.cols();
    check_subset_cap(n)?;
    let mut dp: Vec<Option<T>> = alloc::vec![None; 1 << n];
    dp[0] = Some(T::one());
    // Masks grouped by popcount so one row never reuses its own update.
    let mut by_size: Vec<Vec<usize>> = alloc::vec![Vec::new(); n + 1];
    for mask in 0..1usize << n {
        let c = mask.count_ones() as usize;
        if c <= k {
            by_size[c].push(mask);
        }
    }
    for row in 0..m.rows() {
        for size in (0..k).rev() {
            for &mask in &by_size[size] {
                let Some(cur) = dp[mask].clone() else {
                    continue;
                };
                for j in 0..n {
                    if mask >> j & 1 == 1 || m.get(row, j).is_zero() {
                        continue;
                    }
                    let t = &cur * m.get(row, j);
                    match &mut dp[mask | 1 << j] {
                        Some(acc) => *acc += &t,
                        slot @ None => *slot = Some(t),
                    }
                }
            }
        }
    }
    let mut out = T::zero();
    for &mask in &by_size[k] {
        if let Some(v) = &dp[mask] {
            out += v;
        }
    }
    Ok(out)
}

/// The weight of a cycle in the α-permanent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlphaWeight {
    Symbolic(VariableId),
    Value(Rational),
}

/// `sum_sigma alpha^cyc(sigma) prod_i m_{i, sigma(i)}`, grouped by cycle
/// count: entry `c` of the result is the coefficient of `alpha^c`.
pub fn alpha_permanent_by_cycles<T: Ring>(m: &Matrix<T>) -> Result<Vec<T>, PermError>
where
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    let n = check_square(m)?;
    if n > PERM_ENUMERATION_CAP {
        return Err(PermError::OverCap { n, cap: PERM_ENUMERATION_CAP });
    }
    let mut state = CycleState {
        start_of_end: (0..n).collect(),
        end_of_start: (0..n).collect(),
        used: alloc::vec![false; n],
        out: alloc::vec![T::zero(); n + 1],
    };
    alpha_rec(m, 0, &T::one(), 0, &mut state);
    Ok(state.out)
}

struct CycleState<T> {
    // The partial map i -> sigma(i) for i < row is a union of closed cycles
    // and open paths; paths are tracked by their two endpoints.
    start_of_end: Vec<usize>,
    end_of_start: Vec<usize>,
    used: Vec<bool>,
    out: Vec<T>,
}

fn alpha_rec<T: Ring>(m: &Matrix<T>, row: usize, prefix: &T, cycles: usize, st: &mut CycleState<T>)
where
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    let n = m.rows();
    if row == n {
        st.out[cycles] += prefix;
        return;
    }
    for j in 0..n {
        if st.used[j] || m.get(row, j).is_zero() {
            continue;
        }
        let next = prefix * m.get(row, j);
        st.used[j] = true;
        // Row `row` is the open end of its path; `j` is the open start of its own.
        let s = st.start_of_end[row];
        if s == j {
            alpha_rec(m, row + 1, &next, cycles + 1, st);
        } else {
            let e = st.end_of_start[j];
            let (old_se, old_es) = (st.start_of_end[e], st.end_of_start[s]);
            st.start_of_end[e] = s;
            st.end_of_start[s] = e;
            alpha_rec(m, row + 1, &next, cycles, st);
            st.start_of_end[e] = old_se;
            st.end_of_start[s] = old_es;
        }
        st.used[j] = false;
    }
}

/// The α-permanent of a symbolic matrix as a polynomial.
pub fn alpha_permanent(m: &SymbolicMatrix, alpha: &AlphaWeight) -> Result<Polynomial, PermError> {
    let by_cycles = alpha_permanent_by_cycles(m)?;
    Ok(combine_cycles(by_cycles, alpha))
}

/// The α-permanent of a rational matrix.
pub fn alpha_permanent_numeric(m: &RationalMatrix, alpha: &AlphaWeight) -> Result<Polynomial, PermError> {
    let by_cycles = alpha_permanent_by_cycles(m)?;
    Ok(combine_cycles(by_cycles.into_iter().map(Polynomial::constant).collect(), alpha))
}

fn combine_cycles(by_cycles: Vec<Polynomial>, alpha: &AlphaWeight) -> Polynomial {
    let mut out = Polynomial::zero();
    for (c, coeff) in by_cycles.into_iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        match alpha {
            AlphaWeight::Symbolic(v) => {
                out += coeff.mul_monomial(&Monomial::from_factors([(*v, c as u32)]));
            }
            AlphaWeight::Value(a) => out += coeff.scale(&num_traits::pow(a.clone(), c)),
        }
    }
    out
}

/// Engine selection for [`PermanentRequest`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Engine {
    /// Ryser for rational matrices, subset DP for symbolic ones.
    #[default]
    Auto,
    Enumerate,
    SubsetDp,
    InclusionExclusion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Full,
    KSub(usize),
    Alpha(AlphaWeight),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RequestMatrix {
    Numeric(RationalMatrix),
    Symbolic(SymbolicMatrix),
}

/// A permanent computation: matrix, mode and engine hint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermanentRequest {
    pub matrix: RequestMatrix,
    pub mode: Mode,
    pub engine: Engine,
}

impl PermanentRequest {
    /// Runs the request. Numeric results come back as constant polynomials.
    pub fn compute(&self) -> Result<Polynomial, PermError> {
        match (&self.matrix, &self.mode) {
            (RequestMatrix::Numeric(m), Mode::Full) => Ok(Polynomial::constant(full_with(m, self.engine, true)?)),
            (RequestMatrix::Symbolic(m), Mode::Full) => full_with(m, self.engine, false),
            (RequestMatrix::Numeric(m), Mode::KSub(k)) => {
                self.reject_ie()?;
                Ok(Polynomial::constant(k_permanent(m, *k)?))
            }
            (RequestMatrix::Symbolic(m), Mode::KSub(k)) => {
                self.reject_ie()?;
                k_permanent(m, *k)
            }
            (RequestMatrix::Numeric(m), Mode::Alpha(a)) => {
                self.reject_ie()?;
                alpha_permanent_numeric(m, a)
            }
            (RequestMatrix::Symbolic(m), Mode::Alpha(a)) => {
                self.reject_ie()?;
                alpha_permanent(m, a)
            }
        }
    }

    fn reject_ie(&self) -> Result<(), PermError> {
        if self.engine == Engine::InclusionExclusion {
            Err(PermError::Unsupported)
        } else {
            Ok(())
        }
    }
}

fn full_with<T: Ring>(m: &Matrix<T>, engine: Engine, numeric: bool) -> Result<T, PermError>
where
    for<'a> &'a T: Mul<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    match engine {
        Engine::Enumerate => enumerate(m),
        Engine::SubsetDp => subset_dp(m),
        Engine::InclusionExclusion => ryser(m),
        Engine::Auto if numeric => ryser(m),
        Engine::Auto => subset_dp(m),
    }
}

/// `per(M)` for a square rational matrix (Ryser).
pub fn permanent_numeric(m: &RationalMatrix) -> Result<Rational, PermError> {
    ryser(m)
}

/// `per(M)` for a square symbolic matrix (subset DP).
pub fn permanent_symbolic(m: &SymbolicMatrix) -> Result<Polynomial, PermError> {
    subset_dp(m)
}

/// `per(J Z + A) = per(z_j + a_ij)`.
pub fn mcp_polynomial(a: &MonotoneColumnMatrix) -> Result<Polynomial, PermError> {
    permanent_symbolic(&a.jz_plus_a())
}

/// `per_k(J_{m,n} Z_n + A)`.
pub fn k_sub_mcp_polynomial(a: &MonotoneColumnMatrix, k: usize) -> Result<Polynomial, PermError> {
    k_permanent(&a.jz_plus_a(), k)
}

/// Coefficients of `alpha^c` as a map, dropping zero classes. Used by
/// reports that print cycle distributions.
pub fn cycle_distribution(m: &SymbolicMatrix) -> Result<BTreeMap<usize, Polynomial>, PermError> {
    Ok(alpha_permanent_by_cycles(m)?.into_iter().enumerate().filter(|(_, p)| !p.is_zero()).collect())
}
