//! Permutation statistics, the cycle-to-word map, and generating
//! polynomials computed by brute-force enumeration. These serve as oracles
//! for the permanent identities.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::Zero;

use crate::poly::{Monomial, Polynomial, VariableId};
use crate::univariate::UnivariatePolynomial;
use crate::{rat, Rational};

/// Largest `n` for which `S_n` is enumerated.
pub const FACTORIAL_CAP: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CombError {
    #[error("not a permutation of 1..{0}")]
    NotAPermutation(usize),
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    OverCap { n: usize, cap: usize },
    #[error("operation needs n >= {0}")]
    TooSmall(usize),
    #[error("composition must be nonempty with positive parts")]
    BadComposition,
    #[error("cannot parse permutation {0:?}")]
    Parse(String),
}

fn check_cap(n: usize) -> Result<(), CombError> {
    if n > FACTORIAL_CAP {
        Err(CombError::OverCap { n, cap: FACTORIAL_CAP })
    } else {
        Ok(())
    }
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: Vec<usize>,
}

/// Statistics of a permutation. Descent tops are values, not positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermStats {
    pub exc: usize,
    pub des: usize,
    pub cyc: usize,
    pub descent_tops: BTreeSet<usize>,
    pub lr_minima: usize,
    pub rl_minima: usize,
}

impl Permutation {
    pub fn new(word: Vec<usize>) -> Result<Self, CombError> {
        let n = word.len();
        let mut seen = alloc::vec![false; n + 1];
        for &x in &word {
            if x == 0 || x > n || seen[x] {
                return Err(CombError::NotAPermutation(n));
            }
            seen[x] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { word: (1..=n).collect() }
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// `sigma(i)` for 1-based `i`.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.len()];
        for (i, &x) in self.word.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { word: inv }
    }

    /// Cycles, each starting from its smallest element, ordered by that
    /// element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = alloc::vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.at(x);
            }
            out.push(c);
        }
        out
    }

    pub fn exc(&self) -> usize {
        self.word.iter().enumerate().filter(|&(i, &x)| x > i + 1).count()
    }

    /// `#{i : sigma(i) < i}`.
    pub fn deficiencies(&self) -> usize {
        self.word.iter().enumerate().filter(|&(i, &x)| x < i + 1).count()
    }

    pub fn des(&self) -> usize {
        self.word.windows(2).filter(|w| w[0] > w[1]).count()
    }

    pub fn descent_tops(&self) -> BTreeSet<usize> {
        self.word.windows(2).filter(|w| w[0] > w[1]).map(|w| w[0]).collect()
    }

    /// Values `sigma(i)` at exceedances `sigma(i) > i`.
    pub fn exceedance_tops(&self) -> BTreeSet<usize> {
        self.word.iter().enumerate().filter(|&(i, &x)| x > i + 1).map(|(_, &x)| x).collect()
    }

    pub fn lr_minima(&self) -> usize {
        let mut min = usize::MAX;
        self.word
            .iter()
            .filter(|&&x| {
                if x < min {
                    min = x;
                    true
                } else {
                    false
                }
            })
            .count()
    }

    pub fn rl_minima(&self) -> usize {
        let mut min = usize::MAX;
        self.word
            .iter()
            .rev()
            .filter(|&&x| {
                if x < min {
                    min = x;
                    true
                } else {
                    false
                }
            })
            .count()
    }

    pub fn stats(&self) -> PermStats {
        PermStats {
            exc: self.exc(),
            des: self.des(),
            cyc: self.cycles().len(),
            descent_tops: self.descent_tops(),
            lr_minima: self.lr_minima(),
            rl_minima: self.rl_minima(),
        }
    }

    /// Writes every cycle with its smallest element last, cycles in
    /// increasing order of their smallest elements, and concatenates.
    pub fn riordan_linear_map(&self) -> Permutation {
        let mut word = Vec::with_capacity(self.len());
        for c in self.cycles() {
            word.extend_from_slice(&c[1..]);
            word.push(c[0]);
        }
        Permutation { word }
    }

    /// Replaces the largest letter by the last letter and drops the last
    /// position; when the largest letter is last it is simply deleted.
    pub fn pi_map(&self) -> Result<Permutation, CombError> {
        let n = self.len();
        if n < 2 {
            return Err(CombError::TooSmall(2));
        }
        let mut word = self.word[..n - 1].to_vec();
        let last = self.word[n - 1];
        if let Some(pos) = word.iter().position(|&x| x == n) {
            word[pos] = last;
        }
        Ok(Permutation { word })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() > 9 { "," } else { "" };
        for (i, x) in self.word.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            write!(f, "{}", x)?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = CombError;

    /// Either comma separated (`3,1,2`) or, for `n <= 9`, bare digits (`312`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || CombError::Parse(s.into());
        let word: Vec<usize> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad)).collect::<Result<_, _>>()?
        };
        Permutation::new(word)
    }
}

/// Advances `w` to its lexicographic successor; false at the last
/// arrangement. Works for words with repeated letters.
pub fn next_permutation<T: Ord>(w: &mut [T]) -> bool {
    if w.len() < 2 {
        return false;
    }
    let Some(i) = (0..w.len() - 1).rev().find(|&i| w[i] < w[i + 1]) else {
        return false;
    };
    let j = (i + 1..w.len()).rev().find(|&j| w[j] > w[i]).unwrap();
    w.swap(i, j);
    w[i + 1..].reverse();
    true
}

/// Calls `f` on every permutation of `1..=n` in lexicographic order.
pub fn for_each_permutation<F: FnMut(&Permutation)>(n: usize, mut f: F) -> Result<(), CombError> {
    check_cap(n)?;
    let mut p = Permutation::identity(n);
    loop {
        f(&p);
        if !next_permutation(&mut p.word) {
            return Ok(());
        }
    }
}

/// All permutations of `1..=n`.
pub fn permutations(n: usize) -> Result<Vec<Permutation>, CombError> {
    let mut out = Vec::new();
    for_each_permutation(n, |p| out.push(p.clone()))?;
    Ok(out)
}

fn y_product(tops: impl IntoIterator<Item = usize>) -> Monomial {
    Monomial::from_factors(tops.into_iter().map(|v| (VariableId::y(v as u32), 1)))
}

/// `sum_sigma t^des(sigma)`.
pub fn eulerian_poly_direct(n: usize) -> Result<UnivariatePolynomial, CombError> {
    let mut counts = alloc::vec![0i64; n.max(1)];
    for_each_permutation(n, |p| counts[p.des()] += 1)?;
    Ok(UnivariatePolynomial::from_i64s(&counts))
}

/// `sum_sigma t^exc(sigma)`.
pub fn exceedance_poly_direct(n: usize) -> Result<UnivariatePolynomial, CombError> {
    let mut counts = alloc::vec![0i64; n.max(1)];
    for_each_permutation(n, |p| counts[p.exc()] += 1)?;
    Ok(UnivariatePolynomial::from_i64s(&counts))
}

/// `sum_sigma prod_{sigma(i) > sigma(i+1)} y_{sigma(i)}`.
pub fn descent_top_poly_direct(n: usize) -> Result<Polynomial, CombError> {
    shifted_descent_poly_direct(n, 1)
}

/// `sum_sigma prod_{sigma(i) > i} y_{sigma(i)}`.
pub fn exceedance_top_poly_direct(n: usize) -> Result<Polynomial, CombError> {
    let mut terms = Vec::new();
    for_each_permutation(n, |p| terms.push((y_product(p.exceedance_tops()), rat(1))))?;
    Ok(Polynomial::from_terms(terms))
}

/// `sum_sigma alpha^LRmin(sigma) prod_{descents} y_{sigma(i)}`.
pub fn lrmin_descent_poly_direct(n: usize) -> Result<Polynomial, CombError> {
    minima_descent_poly(n, Permutation::lr_minima)
}

/// `sum_sigma alpha^RLmin(sigma) prod_{descents} y_{sigma(i)}`.
pub fn rlmin_descent_poly_direct(n: usize) -> Result<Polynomial, CombError> {
    minima_descent_poly(n, Permutation::rl_minima)
}

fn minima_descent_poly(n: usize, stat: fn(&Permutation) -> usize) -> Result<Polynomial, CombError> {
    let mut terms = Vec::new();
    for_each_permutation(n, |p| {
        let m = y_product(p.descent_tops()).mul(&Monomial::from_factors([(VariableId::alpha(), stat(p) as u32)]));
        terms.push((m, rat(1)));
    })?;
    Ok(Polynomial::from_terms(terms))
}

/// `sum_sigma prod_{sigma(i) > sigma(i+1) + j - 1} y_{sigma(i)}`; `j = 1`
/// gives ordinary descents.
pub fn shifted_descent_poly_direct(n: usize, j: usize) -> Result<Polynomial, CombError> {
    if j == 0 {
        return Err(CombError::TooSmall(1));
    }
    let mut terms = Vec::new();
    for_each_permutation(n, |p| {
        let tops = p.word.windows(2).filter(|w| w[0] > w[1] + j - 1).map(|w| w[0]);
        terms.push((y_product(tops), rat(1)));
    })?;
    Ok(Polynomial::from_terms(terms))
}

/// Distinct rearrangements of `1^v1 2^v2 ... t^vt` in lexicographic order.
pub fn multiset_permutations(v: &[usize]) -> Result<Vec<Vec<usize>>, CombError> {
    if v.is_empty() || v.contains(&0) {
        return Err(CombError::BadComposition);
    }
    check_cap(v.iter().sum())?;
    let mut w: Vec<usize> = v.iter().enumerate().flat_map(|(i, &c)| core::iter::repeat_n(i + 1, c)).collect();
    let mut out = alloc::vec![w.clone()];
    while next_permutation(&mut w) {
        out.push(w.clone());
    }
    Ok(out)
}

/// `sum_{w in M(v)} prod_{w_i > w_{i+1}} y_{w_i}`.
pub fn multiset_descent_poly_direct(v: &[usize]) -> Result<Polynomial, CombError> {
    let words = multiset_permutations(v)?;
    Ok(Polynomial::from_terms(
        words.iter().map(|w| (y_product(w.windows(2).filter(|p| p[0] > p[1]).map(|p| p[0])), rat(1))),
    ))
}

/// `Top(i; n)` and `Top(i, j; n)`: how many permutations have `i` (and `j`)
/// as descent tops. Indexed by value, entries for `0` unused.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopCounts {
    pub n: usize,
    pub total: u64,
    pub single: Vec<u64>,
    pub pair: Vec<Vec<u64>>,
}

impl TopCounts {
    pub fn top(&self, i: usize) -> u64 {
        self.single[i]
    }

    pub fn top2(&self, i: usize, j: usize) -> u64 {
        self.pair[i.min(j)][i.max(j)]
    }
}

pub fn top_counts(n: usize) -> Result<TopCounts, CombError> {
    let mut single = alloc::vec![0u64; n + 1];
    let mut pair = alloc::vec![alloc::vec![0u64; n + 1]; n + 1];
    let mut total = 0u64;
    for_each_permutation(n, |p| {
        total += 1;
        let tops: Vec<usize> = p.descent_tops().into_iter().collect();
        for (a, &i) in tops.iter().enumerate() {
            single[i] += 1;
            for &j in &tops[a + 1..] {
                pair[i][j] += 1;
            }
        }
    })?;
    Ok(TopCounts { n, total, single, pair })
}

/// `n!` as a rational.
pub fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(rat(1), |acc, k| acc * rat(k))
}

/// `C(n, k)` as a rational; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    (0..k).fold(rat(1), |acc, i| acc * rat((n - i) as i64) / rat(i as i64 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn statistics() {
        let s = perm("341526978");
        assert_eq!(s.stats().cyc, 4);
        assert_eq!(
            s.cycles(),
            alloc::vec![alloc::vec![1, 3], alloc::vec![2, 4, 5], alloc::vec![6], alloc::vec![7, 9, 8]]
        );
        let id = Permutation::identity(5).stats();
        assert_eq!((id.exc, id.des, id.cyc), (0, 0, 5));
        let t = perm("21").stats();
        assert_eq!((t.exc, t.des), (1, 1));
        assert_eq!(t.descent_tops.into_iter().collect::<Vec<_>>(), alloc::vec![2]);
        assert!(Permutation::new(alloc::vec![1, 1]).is_err());
    }

    #[test]
    fn linear_map() {
        assert_eq!(perm("341526978").riordan_linear_map(), perm("314526987"));
        assert_eq!(Permutation::identity(6).riordan_linear_map(), Permutation::identity(6));
    }

    #[test]
    fn linear_map_transports_deficiencies_and_cycles() {
        for_each_permutation(6, |s| {
            let l = s.riordan_linear_map();
            assert_eq!(s.deficiencies(), l.des());
            assert_eq!(s.cycles().len(), l.rl_minima());
            // Cycle minima become the right-to-left minima of L(sigma), and
            // the descent tops of L(sigma) are the points with sigma(i) < i.
            let tops: BTreeSet<usize> = (1..=6).filter(|&i| s.at(i) < i).collect();
            assert_eq!(l.descent_tops(), tops);
        })
        .unwrap();
    }

    #[test]
    fn literal_exceedance_transport_has_counterexamples() {
        let s = perm("231");
        let l = s.riordan_linear_map();
        assert_eq!(l, perm("231"));
        assert_eq!((s.exc(), l.des()), (2, 1));
        let l = perm("341526978").riordan_linear_map();
        assert_eq!((l.lr_minima(), perm("341526978").cycles().len()), (2, 4));
    }

    #[test]
    fn equidistribution_up_to_seven() {
        for n in 1..=7 {
            assert_eq!(eulerian_poly_direct(n).unwrap(), exceedance_poly_direct(n).unwrap());
        }
    }

    #[test]
    fn pi_map_examples_and_fibers() {
        assert_eq!(perm("316524").pi_map().unwrap(), perm("31452"));
        assert_eq!(perm("31524").pi_map().unwrap().to_string(), "3142");
        assert_eq!(perm("3142").pi_map().unwrap(), perm("312"));
        let mut fibers = alloc::collections::BTreeMap::new();
        for_each_permutation(5, |s| *fibers.entry(s.pi_map().unwrap()).or_insert(0) += 1).unwrap();
        assert_eq!(fibers.len(), 24);
        assert!(fibers.values().all(|&c| c == 5));
    }

    #[test]
    fn generating_polynomials() {
        assert_eq!(eulerian_poly_direct(3).unwrap(), UnivariatePolynomial::from_i64s(&[1, 4, 1]));
        assert_eq!(descent_top_poly_direct(3).unwrap().to_string(), "y2*y3 + y2 + 3*y3 + 1");
        assert_eq!(exceedance_top_poly_direct(3).unwrap(), descent_top_poly_direct(3).unwrap());
        assert_eq!(shifted_descent_poly_direct(4, 1).unwrap(), descent_top_poly_direct(4).unwrap());
        assert!(matches!(eulerian_poly_direct(10), Err(CombError::OverCap { .. })));
        let lr = lrmin_descent_poly_direct(3).unwrap();
        let alpha = VariableId::alpha();
        let one: alloc::collections::BTreeMap<_, _> = [(alpha, rat(1))].into_iter().collect();
        assert_eq!(lr.specialize(&one), descent_top_poly_direct(3).unwrap());
    }

    #[test]
    fn multisets() {
        let words = multiset_permutations(&[2, 1]).unwrap();
        assert_eq!(words, alloc::vec![alloc::vec![1, 1, 2], alloc::vec![1, 2, 1], alloc::vec![2, 1, 1]]);
        assert_eq!(multiset_descent_poly_direct(&[2, 1]).unwrap().to_string(), "2*y2 + 1");
        assert_eq!(multiset_descent_poly_direct(&[4]).unwrap(), Polynomial::one());
        assert_eq!(multiset_permutations(&[2, 2, 2]).unwrap().len(), 90);
        assert_eq!(multiset_permutations(&[]), Err(CombError::BadComposition));
    }

    #[test]
    fn top_count_table() {
        let t = top_counts(3).unwrap();
        assert_eq!(t.top(2), 2);
        assert_eq!(t.top(1), 0);
        for n in 2..=6 {
            let t = top_counts(n).unwrap();
            for i in 2..=n {
                for j in i + 1..=n {
                    assert!(t.top2(i, j) <= t.top(i).min(t.top(j)));
                }
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), rat(10));
        assert_eq!(binomial(2, 5), rat(0));
        assert_eq!(factorial(5), rat(120));
    }
}
