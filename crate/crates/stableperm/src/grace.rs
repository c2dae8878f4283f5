//! Numerical demonstration of the apolarity root-location theorem: when every
//! root of `g` lies in a disk or half-plane, every polynomial apolar to `g`
//! has a root there too.

use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use serde::Serialize;
use stableperm_core::sampling::trial_rng;

use crate::numeric::{poly_from_roots, roots, RootError};

/// Relative size of the apolarity form below which a pair counts as apolar.
pub const APOLAR_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Region {
    Disk {
        center: (f64, f64),
        radius: f64,
    },
    /// `{z : Re((z - point) conj(normal)) >= 0}`.
    HalfPlane {
        point: (f64, f64),
        normal: (f64, f64),
    },
}

fn c(p: (f64, f64)) -> Complex64 {
    Complex64::new(p.0, p.1)
}

impl Region {
    pub fn unit_disk() -> Self {
        Region::Disk { center: (0.0, 0.0), radius: 1.0 }
    }

    /// Distance from `z` to the region, zero inside.
    pub fn excess(&self, z: Complex64) -> f64 {
        match *self {
            Region::Disk { center, radius } => ((z - c(center)).norm() - radius).max(0.0),
            Region::HalfPlane { point, normal } => {
                let n = c(normal);
                (-((z - c(point)) * n.conj()).re / n.norm()).max(0.0)
            }
        }
    }

    /// A random point of the region (within distance 3 of `point` for a
    /// half-plane).
    pub fn sample<R: Rng>(&self, rng: &mut R) -> Complex64 {
        match *self {
            Region::Disk { center, radius } => {
                let r = radius * rng.gen::<f64>().sqrt();
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                c(center) + Complex64::from_polar(r, theta)
            }
            Region::HalfPlane { point, normal } => {
                let u = c(normal) / c(normal).norm();
                let depth = rng.gen_range(0.0..3.0);
                let along = rng.gen_range(-3.0..3.0);
                c(point) + u * depth + u * Complex64::i() * along
            }
        }
    }
}

fn binomials(n: usize) -> Vec<f64> {
    let mut row = vec![1.0; n + 1];
    for k in 1..n {
        row[k] = row[k - 1] * (n - k + 1) as f64 / k as f64;
    }
    row
}

/// `sum_k C(n, k) (-1)^(n-k) a_k b_(n-k)` for plain coefficient vectors of
/// equal degree `n`.
pub fn complex_form(f: &[Complex64], g: &[Complex64]) -> Complex64 {
    let n = f.len() - 1;
    let b = binomials(n);
    let (a, bb): (Vec<_>, Vec<_>) = (0..=n).map(|k| (f[k] / b[k], g[k] / b[k])).unzip();
    (0..=n).fold(Complex64::zero(), |acc, k| {
        let t = a[k] * bb[n - k] * b[k];
        if (n - k).is_multiple_of(2) {
            acc + t
        } else {
            acc - t
        }
    })
}

/// The monic `f` apolar to `g` with binomial coefficients `a_1..a_(n-1) =
/// free`, `a_0` solved.
pub fn complex_complement(g: &[Complex64], free: &[Complex64]) -> Vec<Complex64> {
    let n = g.len() - 1;
    assert_eq!(free.len(), n - 1, "n - 1 free parameters");
    let b = binomials(n);
    let bb: Vec<Complex64> = (0..=n).map(|k| g[k] / b[k]).collect();
    let mut a = vec![Complex64::zero(); n + 1];
    a[1..n].copy_from_slice(free);
    a[n] = Complex64::new(1.0, 0.0);
    let sign = |k: usize| if (n - k).is_multiple_of(2) { 1.0 } else { -1.0 };
    let rest = (1..=n).fold(Complex64::zero(), |acc, k| acc + a[k] * bb[n - k] * (b[k] * sign(k)));
    a[0] = -rest / (bb[n] * sign(0));
    (0..=n).map(|k| a[k] * b[k]).collect()
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum GraceError {
    #[error("degrees differ or are zero")]
    Degree,
    #[error("pair is not apolar (relative form {0:e})")]
    NotApolar(f64),
    #[error(transparent)]
    Roots(#[from] RootError),
}

/// The smallest distance from a root of `f` to `region`, after checking
/// that `f` and `g` are apolar. The conclusion holds when this is zero, up
/// to rounding.
pub fn check_pair(f: &[Complex64], g: &[Complex64], region: &Region) -> Result<f64, GraceError> {
    if f.len() != g.len()
        || f.len() < 2
        || f.last().is_some_and(|x| x.is_zero())
        || g.last().is_some_and(|x| x.is_zero())
    {
        return Err(GraceError::Degree);
    }
    let scale = f.iter().map(|x| x.norm()).sum::<f64>() * g.iter().map(|x| x.norm()).sum::<f64>();
    let form = complex_form(f, g).norm() / scale;
    if form > APOLAR_TOL {
        return Err(GraceError::NotApolar(form));
    }
    let rs = roots(f)?;
    Ok(rs.iter().map(|&z| region.excess(z)).fold(f64::INFINITY, f64::min))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraceConfig {
    pub trials: u64,
    pub seed: u64,
    pub tol: f64,
    pub min_degree: usize,
    pub max_degree: usize,
    pub region: Region,
}

impl Default for GraceConfig {
    fn default() -> Self {
        GraceConfig { trials: 100, seed: 0, tol: 1e-8, min_degree: 1, max_degree: 6, region: Region::unit_disk() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraceTrial {
    pub trial: u64,
    pub degree: usize,
    /// `None` when root finding failed; the trial is then skipped.
    pub excess: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraceReport {
    pub config: GraceConfig,
    pub violations: Vec<GraceTrial>,
    pub skipped: Vec<GraceTrial>,
    pub worst_excess: f64,
}

impl GraceReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.skipped.is_empty()
    }
}

/// One seeded trial: roots of `g` drawn in the region, free parameters in
/// `[-2, 2] + [-2, 2] i`.
pub fn grace_trial(config: &GraceConfig, trial: u64) -> GraceTrial {
    let mut rng = trial_rng(config.seed, trial);
    let degree = rng.gen_range(config.min_degree..=config.max_degree);
    let w: Vec<Complex64> = (0..degree).map(|_| config.region.sample(&mut rng)).collect();
    let lead = Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU));
    let g = poly_from_roots(lead, &w);
    let free: Vec<Complex64> =
        (1..degree).map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect();
    let f = complex_complement(&g, &free);
    match check_pair(&f, &g, &config.region) {
        Ok(excess) => GraceTrial { trial, degree, excess: Some(excess), error: None },
        Err(e) => GraceTrial { trial, degree, excess: None, error: Some(e.to_string()) },
    }
}

pub fn grace_demo(config: &GraceConfig, trials: Vec<GraceTrial>) -> GraceReport {
    let mut report =
        GraceReport { config: config.clone(), violations: Vec::new(), skipped: Vec::new(), worst_excess: 0.0 };
    for t in trials {
        match t.excess {
            Some(e) => {
                report.worst_excess = report.worst_excess.max(e);
                if e > config.tol {
                    report.violations.push(t);
                }
            }
            None => report.skipped.push(t),
        }
    }
    report
}

/// Runs every trial sequentially.
pub fn run_grace_demo(config: &GraceConfig) -> GraceReport {
    grace_demo(config, (0..config.trials).map(|t| grace_trial(config, t)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn form_matches_exact_values() {
        // f = t - 1, g = t + 1 gives 2; t with itself gives 0.
        assert!((complex_form(&[cx(-1.0), cx(1.0)], &[cx(1.0), cx(1.0)]) - cx(2.0)).norm() < 1e-15);
        assert!(complex_form(&[cx(0.0), cx(1.0)], &[cx(0.0), cx(1.0)]).norm() < 1e-15);
    }

    #[test]
    fn complement_is_apolar() {
        let g = poly_from_roots(Complex64::new(1.0, 2.0), &[cx(0.5), Complex64::new(0.1, -0.3), cx(-0.9)]);
        let f = complex_complement(&g, &[Complex64::new(1.0, 1.0), cx(-0.5)]);
        assert!(complex_form(&f, &g).norm() < 1e-12);
    }

    #[test]
    fn roots_at_origin_force_a_root_at_origin() {
        let g = poly_from_roots(cx(1.0), &[cx(0.0); 4]);
        let f = complex_complement(&g, &[cx(1.0), cx(-2.0), cx(0.5)]);
        assert!(f[0].norm() < 1e-15);
        let excess = check_pair(&f, &g, &Region::Disk { center: (0.0, 0.0), radius: 0.0 }).unwrap();
        assert!(excess < 1e-8);
    }

    #[test]
    fn refuses_non_apolar_pairs() {
        let g = poly_from_roots(cx(1.0), &[cx(0.0); 3]);
        let f = poly_from_roots(cx(1.0), &[cx(5.0); 3]);
        assert!(matches!(check_pair(&f, &g, &Region::unit_disk()), Err(GraceError::NotApolar(_))));
    }

    #[test]
    fn demo_disk_and_half_plane() {
        let disk = run_grace_demo(&GraceConfig { trials: 40, ..GraceConfig::default() });
        assert!(disk.passed(), "{disk:?}");
        let half = GraceConfig {
            trials: 40,
            seed: 7,
            region: Region::HalfPlane { point: (0.5, -1.0), normal: (1.0, 2.0) },
            ..GraceConfig::default()
        };
        let report = run_grace_demo(&half);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn region_geometry() {
        let d = Region::unit_disk();
        assert_eq!(d.excess(Complex64::new(0.3, 0.4)), 0.0);
        assert!((d.excess(cx(3.0)) - 2.0).abs() < 1e-15);
        let h = Region::HalfPlane { point: (0.0, 0.0), normal: (0.0, 1.0) };
        assert_eq!(h.excess(Complex64::new(5.0, 1.0)), 0.0);
        assert!((h.excess(Complex64::new(5.0, -2.0)) - 2.0).abs() < 1e-15);
        let mut rng = trial_rng(1, 2);
        for _ in 0..100 {
            assert_eq!(h.excess(h.sample(&mut rng)), 0.0);
        }
    }
}
