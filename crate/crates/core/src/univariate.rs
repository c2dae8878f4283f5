//! Dense univariate polynomials over the rationals.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{Monomial, Polynomial, VariableId};
use crate::Rational;

/// Coefficients stored constant term first. The leading coefficient is
/// nonzero; the zero polynomial is the empty sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UnivariatePolynomial {
    coeffs: Vec<Rational>,
}

fn int(c: i64) -> Rational {
    Rational::from_integer(BigInt::from(c))
}

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UnivariatePolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero() -> Self {
        UnivariatePolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(alloc::vec![c])
    }

    /// The polynomial `t`.
    pub fn identity() -> Self {
        Self::new(alloc::vec![Rational::zero(), Rational::one()])
    }

    /// `c * t^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = alloc::vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `leading * prod (t - r)`.
    pub fn from_roots(leading: &Rational, roots: &[Rational]) -> Self {
        roots
            .iter()
            .fold(Self::constant(leading.clone()), |acc, r| &acc * &Self::new(alloc::vec![-r.clone(), Rational::one()]))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * int(k as i64)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Euclidean division. Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = alloc::vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / lead;
            if !q.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] -= &q * d;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Exact quotient; panics if `divisor` is zero.
    pub fn exact_div(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).0
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        while !b.is_zero() {
            let r = a.rem(&b).primitive();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Positive rescaling to integer coefficients with content 1 and a
    /// positive leading coefficient. Zero stays zero.
    pub fn primitive(&self) -> Self {
        let Some(lead) = self.leading() else {
            return Self::zero();
        };
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let nums: Vec<BigInt> = self.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let mut g = nums.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
        if lead.is_negative() {
            g = -g;
        }
        Self::new(nums.into_iter().map(|n| Rational::from_integer(n / &g)).collect())
    }

    /// Same polynomial rescaled by a positive factor so that the
    /// coefficients are coprime integers. Signs are preserved.
    pub fn positive_primitive(&self) -> Self {
        match self.leading() {
            Some(l) if l.is_negative() => -self.primitive(),
            _ => self.primitive(),
        }
    }

    pub fn to_polynomial(&self, v: VariableId) -> Polynomial {
        Polynomial::from_terms(self.coeffs.iter().enumerate().map(|(k, c)| {
            let m = if k == 0 { Monomial::one() } else { Monomial::from_factors([(v, k as u32)]) };
            (m, c.clone())
        }))
    }

    /// `sum c_k (alpha t + beta)^k (gamma t + delta)^(n-k)` for `n` at least
    /// the degree; the homogenised composition with a linear fraction.
    pub fn homogeneous_compose(&self, n: usize, num: (&Rational, &Rational), den: (&Rational, &Rational)) -> Self {
        let lin = |a: &Rational, b: &Rational| Self::new(alloc::vec![b.clone(), a.clone()]);
        let p = lin(num.0, num.1);
        let q = lin(den.0, den.1);
        let mut out = Self::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = &p.pow(k as u32) * &q.pow((n - k) as u32);
            out = &out + &term.scale(c);
        }
        out
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial(VariableId::t(0)))
    }
}

impl<'a> Add<&'a UnivariatePolynomial> for &'a UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn add(self, rhs: &'a UnivariatePolynomial) -> UnivariatePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UnivariatePolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a UnivariatePolynomial> for &'a UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn sub(self, rhs: &'a UnivariatePolynomial) -> UnivariatePolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UnivariatePolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a UnivariatePolynomial> for &'a UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn mul(self, rhs: &'a UnivariatePolynomial) -> UnivariatePolynomial {
        if self.is_zero() || rhs.is_zero() {
            return UnivariatePolynomial::zero();
        }
        let mut out = alloc::vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UnivariatePolynomial::new(out)
    }
}

impl Neg for UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn neg(self) -> UnivariatePolynomial {
        UnivariatePolynomial { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Neg for &UnivariatePolynomial {
    type Output = UnivariatePolynomial;
    fn neg(self) -> UnivariatePolynomial {
        self.clone().neg()
    }
}
