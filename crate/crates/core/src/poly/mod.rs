//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic over variables sorted namespace-major
//! (`x < y < z < t < alpha`, then by index). Equality of two polynomials is
//! therefore a structural comparison, and rendering is byte-stable.

mod eval;
mod parse;

pub use eval::SignEvaluator;
pub use parse::ParsePolyError;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::univariate::UnivariatePolynomial;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("direction entry {index} is not strictly positive")]
    NonPositiveDirection { index: usize },
    #[error("multiplier {0} is also a differentiation variable")]
    MultiplierInDiffVars(VariableId),
    #[error("no value bound for variable {0}")]
    UnboundVariable(VariableId),
    #[error("polynomial involves {found}, expected only {expected}")]
    NotUnivariate { expected: VariableId, found: VariableId },
}

/// Variable families. The declaration order is the printing order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Namespace {
    /// Row variables `x_i`.
    X,
    /// Column variables `y_j`.
    Y,
    /// Generic variables `z_j`.
    Z,
    /// Auxiliary variables such as `t`.
    T,
    Alpha,
}

impl Namespace {
    pub fn prefix(self) -> &'static str {
        match self {
            Namespace::X => "x",
            Namespace::Y => "y",
            Namespace::Z => "z",
            Namespace::T => "t",
            Namespace::Alpha => "alpha",
        }
    }
}

/// A variable: a namespace plus an index. Index 0 renders as the bare
/// prefix (`t`, `z`, `alpha`); the matrix constructors use indices from 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VariableId {
    pub namespace: Namespace,
    pub index: u32,
}

impl VariableId {
    pub const fn new(namespace: Namespace, index: u32) -> Self {
        VariableId { namespace, index }
    }
    pub const fn x(index: u32) -> Self {
        Self::new(Namespace::X, index)
    }
    pub const fn y(index: u32) -> Self {
        Self::new(Namespace::Y, index)
    }
    pub const fn z(index: u32) -> Self {
        Self::new(Namespace::Z, index)
    }
    pub const fn t(index: u32) -> Self {
        Self::new(Namespace::T, index)
    }
    pub const fn alpha() -> Self {
        Self::new(Namespace::Alpha, 0)
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.namespace.prefix())?;
        if self.index != 0 {
            write!(f, "{}", self.index)?;
        }
        Ok(())
    }
}

/// A power product. Factors are sorted by variable and no exponent is zero;
/// the empty product is the monomial 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(VariableId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VariableId) -> Self {
        Monomial { factors: alloc::vec![(v, 1)] }
    }

    pub fn from_factors<I: IntoIterator<Item = (VariableId, u32)>>(factors: I) -> Self {
        let mut map: BTreeMap<VariableId, u32> = BTreeMap::new();
        for (v, e) in factors {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial { factors: map.into_iter().filter(|&(_, e)| e > 0).collect() }
    }

    pub fn factors(&self) -> &[(VariableId, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree_in(&self, v: VariableId) -> u32 {
        match self.factors.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) => self.factors[i].1,
            Err(_) => 0,
        }
    }

    /// Same monomial with the exponent of `v` replaced by `exp`.
    pub fn with_exponent(&self, v: VariableId, exp: u32) -> Monomial {
        let mut factors = self.factors.clone();
        match factors.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(i) if exp == 0 => {
                factors.remove(i);
            }
            Ok(i) => factors[i].1 = exp,
            Err(_) if exp == 0 => {}
            Err(i) => factors.insert(i, (v, exp)),
        }
        Monomial { factors }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then lex with the smallest
    /// variable most significant.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (&(va, ea), &(vb, eb)) in self.factors.iter().zip(other.factors.iter()) {
                if va != vb {
                    return if va < vb { Ordering::Greater } else { Ordering::Less };
                }
                if ea != eb {
                    return ea.cmp(&eb);
                }
            }
            self.factors.len().cmp(&other.factors.len())
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{}", v)?;
            if *e > 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial over the rationals. Immutable in spirit: every
/// operation returns a new value and no zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Rational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: VariableId) -> Self {
        Self::monomial(Monomial::var(v), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: VariableId) -> u32 {
        self.terms.keys().map(|m| m.degree_in(v)).max().unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<VariableId> {
        self.terms.keys().flat_map(|m| m.factors.iter().map(|&(v, _)| v)).collect()
    }

    /// Degree at most one in every variable.
    pub fn is_multiaffine(&self) -> bool {
        self.terms.keys().all(|m| m.factors.iter().all(|&(_, e)| e <= 1))
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, v: VariableId) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.degree_in(v);
            if e > 0 {
                out.add_term(m.with_exponent(v, e - 1), c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Simultaneous substitution; unbound variables are left in place.
    pub fn substitute(&self, bindings: &BTreeMap<VariableId, Polynomial>) -> Polynomial {
        let mut powers: BTreeMap<(VariableId, u32), Polynomial> = BTreeMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut image = Polynomial::constant(c.clone());
            for &(v, e) in &m.factors {
                match bindings.get(&v) {
                    Some(b) => {
                        let pw = powers.entry((v, e)).or_insert_with(|| b.pow(e));
                        image = &image * &*pw;
                    }
                    None => kept.push((v, e)),
                }
            }
            let kept = Monomial { factors: kept };
            for (k, a) in image.terms {
                out.add_term(k.mul(&kept), a);
            }
        }
        out
    }

    /// Substitutes rational values for some variables.
    pub fn specialize(&self, values: &BTreeMap<VariableId, Rational>) -> Polynomial {
        let bindings = values.iter().map(|(v, c)| (*v, Polynomial::constant(c.clone()))).collect();
        self.substitute(&bindings)
    }

    /// Renames variables through `f`. Colliding images merge exponents.
    pub fn rename<F: Fn(VariableId) -> VariableId>(&self, f: F) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let m2 = Monomial::from_factors(m.factors.iter().map(|&(v, e)| (f(v), e)));
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Replaces every variable in `vars` by `target`.
    pub fn diagonalize(&self, vars: &BTreeSet<VariableId>, target: VariableId) -> Polynomial {
        self.rename(|v| if vars.contains(&v) { target } else { v })
    }

    /// `t -> p(a + t b)` where `a`, `b` are indexed by the sorted variable
    /// list of `p`. Every entry of `b` must be strictly positive.
    pub fn restrict_line(&self, base: &[Rational], direction: &[Rational]) -> Result<UnivariatePolynomial, PolyError> {
        let vars: Vec<VariableId> = self.variables().into_iter().collect();
        self.restrict_line_on(&vars, base, direction)
    }

    /// [`Polynomial::restrict_line`] against an explicit variable ordering,
    /// which must cover every variable of `p`.
    pub fn restrict_line_on(
        &self,
        vars: &[VariableId],
        base: &[Rational],
        direction: &[Rational],
    ) -> Result<UnivariatePolynomial, PolyError> {
        for len in [base.len(), direction.len()] {
            if len != vars.len() {
                return Err(PolyError::DimensionMismatch { expected: vars.len(), got: len });
            }
        }
        if let Some(index) = direction.iter().position(|b| !b.is_positive()) {
            return Err(PolyError::NonPositiveDirection { index });
        }
        let mut powers: Vec<Vec<UnivariatePolynomial>> = vars
            .iter()
            .enumerate()
            .map(|(i, _)| {
                alloc::vec![
                    UnivariatePolynomial::one(),
                    UnivariatePolynomial::new(alloc::vec![base[i].clone(), direction[i].clone()])
                ]
            })
            .collect();
        let mut out = UnivariatePolynomial::zero();
        for (m, c) in &self.terms {
            let mut term = UnivariatePolynomial::constant(c.clone());
            for &(v, e) in &m.factors {
                let i = vars.binary_search(&v).map_err(|_| PolyError::UnboundVariable(v))?;
                let table = &mut powers[i];
                while table.len() <= e as usize {
                    let next = &table[table.len() - 1] * &table[1];
                    table.push(next);
                }
                term = &term * &table[e as usize];
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Coefficient of `v^power`, as a polynomial in the remaining variables.
    pub fn coefficient_in(&self, v: VariableId, power: u32) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            if m.degree_in(v) == power {
                out.add_term(m.with_exponent(v, 0), c.clone());
            }
        }
        out
    }

    /// All coefficients in `v`, lowest power first.
    pub fn coefficients_in(&self, v: VariableId) -> Vec<Polynomial> {
        (0..=self.degree_in(v)).map(|k| self.coefficient_in(v, k)).collect()
    }

    /// `c * p + multiplier * sum_{v in diff_vars} dp/dv`.
    pub fn apply_recurrence_operator(
        &self,
        c: &Rational,
        multiplier: VariableId,
        diff_vars: &BTreeSet<VariableId>,
    ) -> Result<Polynomial, PolyError> {
        if diff_vars.contains(&multiplier) {
            return Err(PolyError::MultiplierInDiffVars(multiplier));
        }
        let mut grad = Polynomial::zero();
        for &v in diff_vars {
            grad += self.partial_derivative(v);
        }
        Ok(self.scale(c) + grad.mul_monomial(&Monomial::var(multiplier)))
    }

    /// Same as [`Polynomial::apply_recurrence_operator`] with a polynomial
    /// scalar (used with a symbolic `alpha`).
    pub fn apply_recurrence_operator_poly(
        &self,
        c: &Polynomial,
        multiplier: VariableId,
        diff_vars: &BTreeSet<VariableId>,
    ) -> Result<Polynomial, PolyError> {
        let base = self.apply_recurrence_operator(&Rational::zero(), multiplier, diff_vars)?;
        Ok(c * self + base)
    }

    pub fn evaluate(&self, values: &BTreeMap<VariableId, Rational>) -> Result<Rational, PolyError> {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in &m.factors {
                let x = values.get(&v).ok_or(PolyError::UnboundVariable(v))?;
                t *= num_traits::pow(x.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluation at a point indexed by `vars` (which must be sorted).
    pub fn evaluate_on(&self, vars: &[VariableId], point: &[Rational]) -> Result<Rational, PolyError> {
        if vars.len() != point.len() {
            return Err(PolyError::DimensionMismatch { expected: vars.len(), got: point.len() });
        }
        let values = vars.iter().cloned().zip(point.iter().cloned()).collect();
        self.evaluate(&values)
    }

    /// Converts a polynomial in (at most) the single variable `v`.
    pub fn to_univariate(&self, v: VariableId) -> Result<UnivariatePolynomial, PolyError> {
        if let Some(&found) = self.variables().iter().find(|&&w| w != v) {
            return Err(PolyError::NotUnivariate { expected: v, found });
        }
        let d = self.degree_in(v) as usize;
        let mut coeffs = alloc::vec![Rational::zero(); d + 1];
        for (m, c) in &self.terms {
            coeffs[m.degree_in(v) as usize] = c.clone();
        }
        Ok(UnivariatePolynomial::new(coeffs))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", mag, m)?;
            }
        }
        Ok(())
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<VariableId> for Polynomial {
    fn from(v: VariableId) -> Self {
        Polynomial::var(v)
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        if self.terms.len() < rhs.terms.len() {
            return rhs + self;
        }
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<'a> AddAssign<&'a Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &'a Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for Polynomial {
    fn add_assign(&mut self, rhs: Polynomial) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl<'a> SubAssign<&'a Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &'a Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.clone().neg()
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        // Constant factors are common in permanent expansions.
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut out = Polynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl<'a> Mul<&'a Polynomial> for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        &self * rhs
    }
}

impl<'a> Add<&'a Polynomial> for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: &'a Polynomial) -> Polynomial {
        self += rhs;
        self
    }
}

impl Zero for Polynomial {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Polynomial {
    fn one() -> Self {
        Polynomial::one()
    }
}

impl core::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |a, b| a + b)
    }
}
