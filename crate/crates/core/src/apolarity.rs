//! The apolarity pairing of two degree-`n` polynomials, its permanent form
//! in terms of roots, and Möbius transforms.
//!
//! Coefficients are read in binomial form, `f = sum C(n, k) a_k t^k`.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::combinatorics::{binomial, factorial};
use crate::matrices::Matrix;
use crate::permanent::ryser;
use crate::univariate::UnivariatePolynomial;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ApolarError {
    #[error("degrees differ: {0} and {1}")]
    DegreeMismatch(usize, usize),
    #[error("polynomial must have degree at least 1")]
    DegreeTooLow,
    #[error("expected {expected} free parameters, got {got}")]
    ParameterCount { expected: usize, got: usize },
    #[error("leading coefficient vanishes")]
    ZeroLeading,
    #[error("Möbius map is degenerate (ad - bc = 0)")]
    Degenerate,
    #[error("transform drops degree from {from} to {to}")]
    DegreeDrop { from: usize, to: usize },
}

/// `a_k = c_k / C(n, k)` for `k = 0..=n`.
pub fn to_binomial(f: &UnivariatePolynomial, n: usize) -> Vec<Rational> {
    (0..=n).map(|k| f.coeff(k) / binomial(n, k)).collect()
}

/// `sum C(n, k) a_k t^k` with `n = a.len() - 1`.
pub fn from_binomial(a: &[Rational]) -> UnivariatePolynomial {
    let n = a.len().saturating_sub(1);
    UnivariatePolynomial::new(a.iter().enumerate().map(|(k, x)| x * binomial(n, k)).collect())
}

fn common_degree(f: &UnivariatePolynomial, g: &UnivariatePolynomial) -> Result<usize, ApolarError> {
    let (df, dg) = (f.degree().ok_or(ApolarError::DegreeTooLow)?, g.degree().ok_or(ApolarError::DegreeTooLow)?);
    if df != dg {
        return Err(ApolarError::DegreeMismatch(df, dg));
    }
    Ok(df)
}

/// `sum_k C(n, k) (-1)^(n-k) a_k b_(n-k)`. Zero means apolar (both
/// polynomials have degree exactly `n`, so `a_n b_n != 0`).
pub fn apolarity_form(f: &UnivariatePolynomial, g: &UnivariatePolynomial) -> Result<Rational, ApolarError> {
    let n = common_degree(f, g)?;
    let (a, b) = (to_binomial(f, n), to_binomial(g, n));
    let mut acc = Rational::zero();
    for k in 0..=n {
        let t = binomial(n, k) * &a[k] * &b[n - k];
        if (n - k) % 2 == 0 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    Ok(acc)
}

/// `f` apolar to `g` with `a_n = 1`, `a_1..a_(n-1) = free`, and `a_0` solved
/// from the single linear condition.
pub fn apolar_complement(g: &UnivariatePolynomial, free: &[Rational]) -> Result<UnivariatePolynomial, ApolarError> {
    let n = g.degree().ok_or(ApolarError::DegreeTooLow)?;
    if n == 0 {
        return Err(ApolarError::DegreeTooLow);
    }
    if free.len() != n - 1 {
        return Err(ApolarError::ParameterCount { expected: n - 1, got: free.len() });
    }
    let b = to_binomial(g, n);
    let mut a = alloc::vec![Rational::zero(); n + 1];
    a[1..n].clone_from_slice(free);
    a[n] = Rational::one();
    let sign = |k: usize| if (n - k).is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    let rest = (1..=n).fold(Rational::zero(), |acc, k| acc + binomial(n, k) * sign(k) * &a[k] * &b[n - k]);
    // The k = 0 term is (-1)^n a_0 b_n.
    a[0] = -rest / (sign(0) * &b[n]);
    Ok(from_binomial(&a))
}

/// `per(w_i - z_j)`.
pub fn root_difference_permanent(z: &[Rational], w: &[Rational]) -> Rational {
    let m = Matrix::from_fn(w.len(), z.len(), |i, j| &w[i] - &z[j]);
    ryser(&m).expect("square")
}

/// The pairing of `lead_f prod (t - z_j)` and `lead_g prod (t - w_i)`
/// expressed through roots: `(-1)^n a_n b_n per(w_i - z_j) / n!`.
pub fn apolarity_form_from_roots(lead_f: &Rational, z: &[Rational], lead_g: &Rational, w: &[Rational]) -> Rational {
    let n = z.len();
    let sign = if n.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    sign * lead_f * lead_g * root_difference_permanent(z, w) / factorial(n)
}

/// `t -> (a t + b) / (c t + d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusMap {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl MobiusMap {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Result<Self, ApolarError> {
        let m = MobiusMap { a, b, c, d };
        if m.determinant().is_zero() {
            return Err(ApolarError::Degenerate);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        MobiusMap { a: Rational::one(), b: Rational::zero(), c: Rational::zero(), d: Rational::one() }
    }

    pub fn determinant(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    /// `(d, -b, -c, a)`, the inverse up to scaling.
    pub fn inverse(&self) -> Self {
        MobiusMap { a: self.d.clone(), b: -self.b.clone(), c: -self.c.clone(), d: self.a.clone() }
    }

    /// `None` at the pole.
    pub fn apply(&self, t: &Rational) -> Option<Rational> {
        let den = &self.c * t + &self.d;
        if den.is_zero() {
            None
        } else {
            Some((&self.a * t + &self.b) / den)
        }
    }
}

/// `f^(t) = (gamma t + delta)^n f(phi^-1(t))` where `phi^-1 = (alpha t + beta)
/// / (gamma t + delta)`. Errors if the result has degree below `n`.
pub fn mobius_transform(f: &UnivariatePolynomial, phi: &MobiusMap) -> Result<UnivariatePolynomial, ApolarError> {
    let n = f.degree().ok_or(ApolarError::DegreeTooLow)?;
    let inv = phi.inverse();
    let out = f.homogeneous_compose(n, (&inv.a, &inv.b), (&inv.c, &inv.d));
    match out.degree() {
        Some(d) if d == n => Ok(out),
        d => Err(ApolarError::DegreeDrop { from: n, to: d.unwrap_or(0) }),
    }
}

/// `(ad - bc)^n / prod_h (c w_h + d)(c z_h + d)`, the factor relating
/// `per(phi(w_i) - phi(z_j))` to `per(w_i - z_j)`. `None` at a pole.
pub fn mobius_permanent_prefactor(phi: &MobiusMap, z: &[Rational], w: &[Rational]) -> Option<Rational> {
    let mut den = Rational::one();
    for x in z.iter().chain(w) {
        let v = &phi.c * x + &phi.d;
        if v.is_zero() {
            return None;
        }
        den *= v;
    }
    Some(num_traits::pow(phi.determinant(), z.len()) / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, ratio};

    fn u(c: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_i64s(c)
    }

    fn rooted(roots: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_roots(&rat(1), &roots.iter().map(|&r| rat(r)).collect::<Vec<_>>())
    }

    #[test]
    fn form_examples() {
        assert_eq!(apolarity_form(&u(&[0, 1]), &u(&[0, 1])).unwrap(), rat(0));
        assert_eq!(apolarity_form(&u(&[-1, 1]), &u(&[1, 1])).unwrap(), rat(2));
        assert_eq!(apolarity_form(&u(&[0, 1]), &u(&[0, 0, 1])), Err(ApolarError::DegreeMismatch(1, 2)));
    }

    #[test]
    fn binomial_round_trip() {
        let f = u(&[3, -4, 6, 2]);
        assert_eq!(from_binomial(&to_binomial(&f, 3)), f);
    }

    #[test]
    fn root_form_normalisation() {
        // n = 1: f = t - 1, g = t + 1, form 2, per(w - z) = -2.
        assert_eq!(root_difference_permanent(&[rat(1)], &[rat(-1)]), rat(-2));
        assert_eq!(apolarity_form_from_roots(&rat(1), &[rat(1)], &rat(1), &[rat(-1)]), rat(2));
        // n = 2: z = (1, 2), w = (3, 4).
        let (z, w) = ([rat(1), rat(2)], [rat(3), rat(4)]);
        assert_eq!(root_difference_permanent(&z, &w), rat(7));
        assert_eq!(apolarity_form(&rooted(&[1, 2]), &rooted(&[3, 4])).unwrap(), ratio(7, 2));
        // The normalisation n! a_n b_n per(w - z) does not match.
        assert_ne!(rat(2) * rat(7), ratio(7, 2));
    }

    #[test]
    fn complement_is_apolar() {
        let g = rooted(&[1, -2, 3]);
        let f = apolar_complement(&g, &[rat(5), ratio(-1, 3)]).unwrap();
        assert_eq!(f.degree(), Some(3));
        assert_eq!(apolarity_form(&f, &g).unwrap(), rat(0));
        // n = 1, g = t - w: the complement is t - w itself.
        let g1 = u(&[-7, 1]);
        assert_eq!(apolar_complement(&g1, &[]).unwrap(), g1);
        assert_eq!(apolar_complement(&u(&[4]), &[]), Err(ApolarError::DegreeTooLow));
        assert!(matches!(apolar_complement(&g, &[]), Err(ApolarError::ParameterCount { .. })));
    }

    #[test]
    fn mobius_basics() {
        let f = rooted(&[1, 2, 5]);
        assert_eq!(mobius_transform(&f, &MobiusMap::identity()).unwrap(), f);
        let phi = MobiusMap::new(rat(2), rat(1), rat(1), rat(3)).unwrap();
        let fh = mobius_transform(&f, &phi).unwrap();
        for r in [1, 2, 5] {
            assert!(fh.eval(&phi.apply(&rat(r)).unwrap()).is_zero());
        }
        assert!(MobiusMap::new(rat(1), rat(2), rat(2), rat(4)).is_err());
        // phi sends the root -3 of (t + 3) to infinity: degree drops.
        assert!(matches!(mobius_transform(&rooted(&[-3]), &phi), Err(ApolarError::DegreeDrop { .. })));
    }

    #[test]
    fn mobius_inverse_law() {
        let f = rooted(&[1, 2, 5]);
        let phi = MobiusMap::new(rat(2), rat(1), rat(1), rat(3)).unwrap();
        let back = mobius_transform(&mobius_transform(&f, &phi).unwrap(), &phi.inverse()).unwrap();
        assert_eq!(back, f.scale(&num_traits::pow(phi.determinant(), 3)));
    }
}
