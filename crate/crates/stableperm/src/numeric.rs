//! Floating-point polynomial roots: companion-matrix eigenvalues from a
//! complex Schur decomposition, each polished by Newton's method.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use stableperm_core::UnivariatePolynomial;

const SCHUR_EPS: f64 = 1e-14;
const SCHUR_MAX_ITER: usize = 10_000;
const NEWTON_STEPS: usize = 60;
/// Largest accepted backward error `|p(z)| / sum |c_k| max(1, |z|)^k`.
const RESIDUAL_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum RootError {
    #[error("polynomial has no roots (degree 0 or zero)")]
    Degenerate,
    #[error("Schur iteration did not converge")]
    NoConvergence,
    #[error("root {index} has backward error {residual:e}")]
    Inaccurate { index: usize, residual: f64 },
}

/// `(p(z), p'(z))` by Horner, coefficients constant term first.
fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn backward_error(c: &[Complex64], z: Complex64) -> f64 {
    let (p, _) = horner(c, z);
    // Floored at |z| = 1 so a root at a vanishing constant term is not
    // measured against that term alone.
    let r = z.norm().max(1.0);
    let scale: f64 = c.iter().rev().fold(0.0, |acc, a| acc * r + a.norm());
    if scale == 0.0 {
        0.0
    } else {
        p.norm() / scale
    }
}

/// Coefficients of `p(t + s)`, by repeated synthetic division.
fn shifted(c: &[Complex64], s: Complex64) -> Vec<Complex64> {
    let mut c = c.to_vec();
    let n = c.len();
    for i in 0..n {
        for k in (i..n - 1).rev() {
            let next = c[k + 1];
            c[k] += s * next;
        }
    }
    c
}

fn schur_eigenvalues(c: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = c.len() - 1;
    let lead = c[n];
    let companion = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -c[i] / lead
        } else if i == j + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::zero()
        }
    });
    let schur = companion.try_schur(SCHUR_EPS, SCHUR_MAX_ITER)?;
    schur.eigenvalues().map(|e| e.iter().copied().collect())
}

/// Companion eigenvalues; symmetric root sets can stall the Schur shifts,
/// so a failed run is retried on `p(t + s)` for a few fixed `s`.
fn companion_eigenvalues(c: &[Complex64]) -> Result<Vec<Complex64>, RootError> {
    for s in [0.0, 0.371, -0.529, 1.237] {
        let s = Complex64::new(s, 0.0);
        let c = if s.is_zero() { c.to_vec() } else { shifted(c, s) };
        if let Some(e) = schur_eigenvalues(&c) {
            return Ok(e.into_iter().map(|z| z + s).collect());
        }
    }
    Err(RootError::NoConvergence)
}

/// All complex roots of `sum c_k t^k`, with multiplicity.
pub fn roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>, RootError> {
    let mut c: Vec<Complex64> = coeffs.to_vec();
    while c.last().is_some_and(|a| a.is_zero()) {
        c.pop();
    }
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Err(RootError::Degenerate);
    }
    let eig = companion_eigenvalues(&c)?;
    let mut out = Vec::with_capacity(n);
    for (index, &z0) in eig.iter().enumerate() {
        let mut z = z0;
        for _ in 0..NEWTON_STEPS {
            let (p, dp) = horner(&c, z);
            if dp.is_zero() {
                break;
            }
            let step = p / dp;
            let next = z - step;
            // Keep the eigenvalue estimate if Newton wanders off (multiple roots).
            if !next.is_finite() || backward_error(&c, next) > backward_error(&c, z) {
                break;
            }
            z = next;
            if step.norm() <= 1e-15 * z.norm().max(1.0) {
                break;
            }
        }
        let residual = backward_error(&c, z);
        if !z.is_finite() || residual > RESIDUAL_TOL {
            return Err(RootError::Inaccurate { index, residual });
        }
        out.push(z);
    }
    Ok(out)
}

/// Roots of an exact polynomial after rounding its coefficients.
pub fn roots_of(u: &UnivariatePolynomial) -> Result<Vec<Complex64>, RootError> {
    let c: Vec<Complex64> = u.coeffs().iter().map(|a| Complex64::new(a.to_f64().unwrap_or(f64::NAN), 0.0)).collect();
    roots(&c)
}

/// Number of roots with `|Im z| <= tol`.
pub fn count_near_real(roots: &[Complex64], tol: f64) -> usize {
    roots.iter().filter(|z| z.im.abs() <= tol).count()
}

/// Coefficients of `lead * prod (t - r)`, constant term first.
pub fn poly_from_roots(lead: Complex64, roots: &[Complex64]) -> Vec<Complex64> {
    let mut c = vec![lead];
    for &r in roots {
        let mut next = vec![Complex64::zero(); c.len() + 1];
        for (k, &a) in c.iter().enumerate() {
            next[k + 1] += a;
            next[k] -= a * r;
        }
        c = next;
    }
    c
}
