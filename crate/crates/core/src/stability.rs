//! Real-rootedness, interlacing and stability testing.
//!
//! Univariate questions are decided exactly with Sturm sequences over the
//! rationals. Multivariate stability is only ever falsified: a real
//! polynomial is stable iff every restriction `t -> p(a + t b)` with `b > 0`
//! is real-rooted, so random rational lines either find a witness or the
//! polynomial passes the sample. Multiaffine polynomials can also be probed
//! with the Rayleigh differences `p_i p_j - p p_ij`.

use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::poly::{PolyError, Polynomial, SignEvaluator, VariableId};
use crate::sampling::{positive_rational_in, rational_in, scaled_point, trial_rng};
use crate::univariate::UnivariatePolynomial;
use crate::{ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StabilityError {
    #[error("the zero polynomial has no square-free part or root count")]
    ZeroPolynomial,
    #[error("argument {0} is not real-rooted")]
    NotRealRooted(&'static str),
    #[error("polynomial is not multiaffine")]
    NotMultiaffine,
    #[error("Rayleigh pair needs two distinct variables")]
    SameVariable,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `u / gcd(u, u')`, scaled to coprime integer coefficients with positive
/// leading coefficient.
pub fn square_free_part(u: &UnivariatePolynomial) -> Result<UnivariatePolynomial, StabilityError> {
    if u.is_zero() {
        return Err(StabilityError::ZeroPolynomial);
    }
    let g = u.gcd(&u.derivative());
    Ok(u.exact_div(&g).primitive())
}

/// Sturm sequence of the square-free part of a polynomial. Every element is
/// rescaled by a positive factor, which leaves sign patterns unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmChain {
    chain: Vec<UnivariatePolynomial>,
}

impl SturmChain {
    pub fn new(u: &UnivariatePolynomial) -> Result<Self, StabilityError> {
        let p0 = square_free_part(u)?;
        let mut chain = alloc::vec![p0.clone()];
        let p1 = p0.derivative().positive_primitive();
        if !p1.is_zero() {
            chain.push(p1);
            loop {
                let n = chain.len();
                let r = chain[n - 2].rem(&chain[n - 1]);
                if r.is_zero() {
                    break;
                }
                chain.push((-r).positive_primitive());
            }
        }
        Ok(SturmChain { chain })
    }

    pub fn polynomials(&self) -> &[UnivariatePolynomial] {
        &self.chain
    }

    fn variations<I: Iterator<Item = Ordering>>(signs: I) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs.filter(|s| *s != Ordering::Equal) {
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Sign variations at `x`, zeros dropped.
    pub fn variations_at(&self, x: &Rational) -> usize {
        Self::variations(self.chain.iter().map(|p| p.eval(x).cmp(&Rational::zero())))
    }

    /// Sign variations at `+inf` or `-inf`.
    pub fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let lead = p.leading().map_or(Ordering::Equal, |c| c.cmp(&Rational::zero()));
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                lead.reverse()
            } else {
                lead
            }
        }))
    }

    /// Distinct real roots.
    pub fn count_real_roots(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Distinct roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &Rational, b: &Rational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }
}

/// Number of distinct real roots.
pub fn count_real_roots(u: &UnivariatePolynomial) -> Result<usize, StabilityError> {
    Ok(SturmChain::new(u)?.count_real_roots())
}

/// True when `u` is zero, constant, or has only real roots.
pub fn real_rooted(u: &UnivariatePolynomial) -> bool {
    match u.degree() {
        None | Some(0) => true,
        Some(_) => {
            let chain = SturmChain::new(u).expect("nonzero");
            let d = chain.chain[0].degree().unwrap_or(0);
            chain.count_real_roots() == d
        }
    }
}

/// An isolating interval `(lo, hi]` holding exactly one root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rational,
    pub hi: Rational,
}

/// `1 + max |c_k / c_n|`, a bound on the absolute value of every root.
pub fn cauchy_bound(u: &UnivariatePolynomial) -> Rational {
    let lead = u.leading().cloned().unwrap_or_else(Rational::one).abs();
    let max = u.coeffs().iter().map(|c| c.abs() / &lead).max().unwrap_or_else(Rational::zero);
    max + Rational::one()
}

/// Isolating intervals for the distinct real roots of `u`, left to right.
pub fn isolate_real_roots(u: &UnivariatePolynomial) -> Result<Vec<RootInterval>, StabilityError> {
    let chain = SturmChain::new(u)?;
    let b = cauchy_bound(&chain.chain[0]);
    let mut out = Vec::new();
    let mut stack = alloc::vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match chain.count_in(&lo, &hi) {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

/// Halves an isolating interval, keeping the half that holds the root.
fn refine(chain: &SturmChain, iv: &mut RootInterval) {
    let mid = (&iv.lo + &iv.hi) / Rational::from_integer(2.into());
    if chain.count_in(&iv.lo, &mid) == 1 {
        iv.hi = mid;
    } else {
        iv.lo = mid;
    }
}

/// Outcome of [`interlace_check`]. `HProperG` means `h << g`, i.e.
/// `g + t h` is stable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Interlacing {
    HProperG,
    GProperH,
    Both,
    Neither,
}

/// Decides proper position of two real-rooted polynomials.
///
/// The common factor `d = gcd(g, h)` is split off; the cofactors must be
/// square-free, differ in degree by at most one and have strictly
/// alternating roots. The orientation is then the sign of the Wronskian
/// `h' g - h g'`, which is constant on the real line for such a pair:
/// negative means `h << g`, positive means `g << h`, and zero means the
/// cofactors are proportional.
pub fn interlace_check(g: &UnivariatePolynomial, h: &UnivariatePolynomial) -> Result<Interlacing, StabilityError> {
    if !real_rooted(g) {
        return Err(StabilityError::NotRealRooted("g"));
    }
    if !real_rooted(h) {
        return Err(StabilityError::NotRealRooted("h"));
    }
    if g.is_zero() || h.is_zero() {
        return Ok(Interlacing::Both);
    }
    let d = g.gcd(h);
    let g1 = g.exact_div(&d);
    let h1 = h.exact_div(&d);
    let w = &(&h1.derivative() * &g1) - &(&h1 * &g1.derivative());
    let orientation = match w.leading().map(|c| c.cmp(&Rational::zero())) {
        None => return Ok(Interlacing::Both),
        Some(Ordering::Less) => Interlacing::HProperG,
        _ => Interlacing::GProperH,
    };
    let (dg, dh) = (g1.degree().unwrap(), h1.degree().unwrap());
    if dg.abs_diff(dh) > 1 {
        return Ok(Interlacing::Neither);
    }
    let is_square_free = |p: &UnivariatePolynomial| p.gcd(&p.derivative()).degree() == Some(0);
    if (dg > 1 && !is_square_free(&g1)) || (dh > 1 && !is_square_free(&h1)) {
        return Ok(Interlacing::Neither);
    }
    if dg == 0 || dh == 0 {
        // One cofactor is constant and the other has at most one root.
        return Ok(orientation);
    }
    let (cg, ch) = (SturmChain::new(&g1)?, SturmChain::new(&h1)?);
    let mut rg = isolate_real_roots(&g1)?;
    let mut rh = isolate_real_roots(&h1)?;
    // The cofactors are coprime, so refinement separates every pair.
    loop {
        let mut overlapped = false;
        for a in rg.iter_mut() {
            for b in rh.iter_mut() {
                if a.lo < b.hi && b.lo < a.hi {
                    overlapped = true;
                    refine(&cg, a);
                    refine(&ch, b);
                }
            }
        }
        if !overlapped {
            break;
        }
    }
    let mut labels: Vec<(Rational, bool)> = rg.into_iter().map(|iv| (iv.lo, true)).collect();
    labels.extend(rh.into_iter().map(|iv| (iv.lo, false)));
    labels.sort_by(|a, b| a.0.cmp(&b.0));
    if labels.windows(2).all(|w| w[0].1 != w[1].1) {
        Ok(orientation)
    } else {
        Ok(Interlacing::Neither)
    }
}

/// Falsification parameters for line sampling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingConfig {
    pub trials: u64,
    pub seed: u64,
    /// Base points lie in `[-bound, bound]^n`, directions in `(0, bound]^n`.
    pub bound: i64,
    pub max_den: i64,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig { trials: 64, seed: 0, bound: 100, max_den: 16 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictKind {
    CertifiedRealRooted,
    PassedSampling,
    Refuted,
}

/// Where a stability test failed. Replaying the recorded trial reproduces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The restriction `t -> p(base + t direction)` is not real-rooted.
    Line { trial: u64, variables: Vec<VariableId>, base: Vec<Rational>, direction: Vec<Rational> },
    /// A Rayleigh difference is negative at `point`.
    Point { index: u64, variables: Vec<VariableId>, point: Vec<Rational>, value_sign: i8 },
    /// The univariate input itself has non-real roots.
    Univariate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub kind: VerdictKind,
    pub trials: u64,
    pub seed: u64,
    pub witness: Option<Witness>,
}

impl StabilityVerdict {
    pub fn passed(&self) -> bool {
        self.kind != VerdictKind::Refuted
    }
}

/// The line drawn for `trial` in a space of dimension `dim`.
pub fn sample_line(config: &SamplingConfig, trial: u64, dim: usize) -> (Vec<Rational>, Vec<Rational>) {
    let mut rng = trial_rng(config.seed, trial);
    let base = (0..dim).map(|_| rational_in(&mut rng, config.bound, config.max_den)).collect();
    let dir = (0..dim).map(|_| positive_rational_in(&mut rng, config.bound, config.max_den)).collect();
    (base, dir)
}

/// Runs one trial; `Some(witness)` when the restriction is not real-rooted.
pub fn run_trial(p: &Polynomial, vars: &[VariableId], config: &SamplingConfig, trial: u64) -> Option<Witness> {
    let (base, direction) = sample_line(config, trial, vars.len());
    let u = p.restrict_line_on(vars, &base, &direction).expect("dimensions match");
    if real_rooted(&u) {
        None
    } else {
        Some(Witness::Line { trial, variables: vars.to_vec(), base, direction })
    }
}

/// Stability by line sampling. Polynomials in at most one variable are
/// decided exactly.
pub fn stability_sample_test(p: &Polynomial, config: &SamplingConfig) -> StabilityVerdict {
    let vars: Vec<VariableId> = p.variables().into_iter().collect();
    if vars.len() <= 1 {
        let u = match vars.first() {
            Some(&v) => p.to_univariate(v).expect("single variable"),
            None => UnivariatePolynomial::constant(p.constant_term()),
        };
        let ok = real_rooted(&u);
        return StabilityVerdict {
            kind: if ok { VerdictKind::CertifiedRealRooted } else { VerdictKind::Refuted },
            trials: 0,
            seed: config.seed,
            witness: if ok { None } else { Some(Witness::Univariate) },
        };
    }
    for trial in 0..config.trials {
        if let Some(w) = run_trial(p, &vars, config, trial) {
            return StabilityVerdict {
                kind: VerdictKind::Refuted,
                trials: trial + 1,
                seed: config.seed,
                witness: Some(w),
            };
        }
    }
    StabilityVerdict { kind: VerdictKind::PassedSampling, trials: config.trials, seed: config.seed, witness: None }
}

/// Rayleigh sampling parameters. Points share a denominator in
/// `1..=max_den` and have coordinates in `[-bound, bound]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayleighConfig {
    pub points: u64,
    pub seed: u64,
    pub bound: i64,
    pub max_den: i64,
}

impl Default for RayleighConfig {
    fn default() -> Self {
        RayleighConfig { points: 1000, seed: 0, bound: 100, max_den: 16 }
    }
}

/// `p_i p_j - p p_ij`.
pub fn rayleigh_difference(p: &Polynomial, i: VariableId, j: VariableId) -> Polynomial {
    let pi = p.partial_derivative(i);
    let pj = p.partial_derivative(j);
    let pij = pi.partial_derivative(j);
    &(&pi * &pj) - &(p * &pij)
}

/// Stream index for point `k` of the Rayleigh check on pair `(i, j)`.
fn rayleigh_stream(i: VariableId, j: VariableId, k: u64) -> u64 {
    let tag = |v: VariableId| (v.namespace as u64) << 12 | u64::from(v.index & 0xfff);
    (tag(i) << 48) ^ (tag(j) << 32) ^ k
}

/// The `k`-th Rayleigh sample point over `vars`.
pub fn rayleigh_point(config: &RayleighConfig, i: VariableId, j: VariableId, k: u64, dim: usize) -> (Vec<i64>, i64) {
    let mut rng = trial_rng(config.seed, rayleigh_stream(i, j, k));
    scaled_point(&mut rng, dim, config.bound, config.max_den)
}

/// Checks `p_i p_j - p p_ij >= 0` at sampled points. Variables absent from
/// `p` are allowed; the difference is then identically zero.
pub fn rayleigh_check(
    p: &Polynomial,
    i: VariableId,
    j: VariableId,
    config: &RayleighConfig,
) -> Result<StabilityVerdict, StabilityError> {
    if !p.is_multiaffine() {
        return Err(StabilityError::NotMultiaffine);
    }
    if i == j {
        return Err(StabilityError::SameVariable);
    }
    let vars: Vec<VariableId> = p.variables().into_iter().collect();
    let delta = rayleigh_difference(p, i, j);
    let eval = SignEvaluator::new(&delta, &vars)?;
    for k in 0..config.points {
        let (nums, den) = rayleigh_point(config, i, j, k, vars.len());
        if eval.sign_scaled(&nums, den) == Ordering::Less {
            let point = nums.iter().map(|&n| ratio(n, den)).collect();
            return Ok(StabilityVerdict {
                kind: VerdictKind::Refuted,
                trials: k + 1,
                seed: config.seed,
                witness: Some(Witness::Point { index: k, variables: vars, point, value_sign: -1 }),
            });
        }
    }
    Ok(StabilityVerdict { kind: VerdictKind::PassedSampling, trials: config.points, seed: config.seed, witness: None })
}

/// Re-runs the failing trial of a refuted verdict on `p`; true when it still
/// fails.
pub fn replay_witness(p: &Polynomial, witness: &Witness) -> bool {
    match witness {
        Witness::Line { variables, base, direction, .. } => {
            let u = p.restrict_line_on(variables, base, direction).expect("witness dimensions");
            !real_rooted(&u)
        }
        Witness::Point { .. } => false,
        Witness::Univariate => {
            let vars: Vec<VariableId> = p.variables().into_iter().collect();
            match vars.as_slice() {
                [v] => !real_rooted(&p.to_univariate(*v).expect("univariate")),
                _ => false,
            }
        }
    }
}

/// Re-evaluates a Rayleigh witness; true when the difference is negative.
pub fn replay_rayleigh(p: &Polynomial, i: VariableId, j: VariableId, witness: &Witness) -> bool {
    match witness {
        Witness::Point { variables, point, .. } => {
            let delta = rayleigh_difference(p, i, j);
            delta.evaluate_on(variables, point).map(|v| v.is_negative()).unwrap_or(false)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn u(c: &[i64]) -> UnivariatePolynomial {
        UnivariatePolynomial::from_i64s(c)
    }

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn square_free_examples() {
        assert_eq!(square_free_part(&u(&[0, 0, 1])).unwrap(), u(&[0, 1]));
        assert_eq!(square_free_part(&u(&[2, -3, 1])).unwrap(), u(&[2, -3, 1]));
        assert_eq!(square_free_part(&u(&[0, 2, 2])).unwrap(), u(&[0, 1, 1]));
        assert_eq!(square_free_part(&u(&[])), Err(StabilityError::ZeroPolynomial));
    }

    #[test]
    fn root_counts() {
        assert_eq!(count_real_roots(&u(&[1, 0, 1])).unwrap(), 0);
        assert_eq!(count_real_roots(&u(&[-1, 0, 1])).unwrap(), 2);
        assert_eq!(count_real_roots(&u(&[1, 4, 1])).unwrap(), 2);
        // (t - 1)^3 (t + 2): two distinct roots.
        let q = UnivariatePolynomial::from_roots(&rat(1), &[rat(1), rat(1), rat(1), rat(-2)]);
        assert_eq!(count_real_roots(&q).unwrap(), 2);
    }

    #[test]
    fn real_rootedness() {
        assert!(real_rooted(&u(&[0, 2, 2])));
        assert!(!real_rooted(&u(&[1, 0, 1])));
        assert!(real_rooted(&u(&[])));
        assert!(real_rooted(&u(&[5])));
        assert!(real_rooted(&UnivariatePolynomial::from_roots(&rat(3), &[rat(2), rat(2), rat(-1)])));
    }

    #[test]
    fn interlacing_examples() {
        assert_eq!(interlace_check(&u(&[-1, 0, 1]), &u(&[0, 1])).unwrap(), Interlacing::HProperG);
        assert_eq!(interlace_check(&u(&[0, 1]), &u(&[-1, 0, 1])).unwrap(), Interlacing::GProperH);
        assert_eq!(interlace_check(&u(&[0, 1]), &u(&[0, 1])).unwrap(), Interlacing::Both);
        assert_eq!(interlace_check(&u(&[2, -3, 1]), &u(&[30, -11, 1])).unwrap(), Interlacing::Neither);
        assert_eq!(interlace_check(&u(&[1, 0, 1]), &u(&[0, 1])), Err(StabilityError::NotRealRooted("g")));
    }

    #[test]
    fn interlacing_with_common_factor_and_exact_midpoints() {
        // g = t (t - 2)(t - 4), h = t (t - 1)(t - 3): cofactors interlace.
        let t = |r: &[i64]| UnivariatePolynomial::from_roots(&rat(1), &r.iter().map(|&x| rat(x)).collect::<Vec<_>>());
        let g = t(&[0, 2, 4]);
        let h = t(&[0, 1, 3]);
        assert_eq!(interlace_check(&g, &h).unwrap(), Interlacing::HProperG);
        assert_eq!(interlace_check(&h, &g).unwrap(), Interlacing::GProperH);
        // A repeated root not shared by h breaks interlacing.
        assert_eq!(interlace_check(&t(&[1, 1]), &t(&[0])).unwrap(), Interlacing::Neither);
    }

    #[test]
    fn interlacing_agrees_with_sampled_stability() {
        let t = |r: &[i64]| UnivariatePolynomial::from_roots(&rat(1), &r.iter().map(|&x| rat(x)).collect::<Vec<_>>());
        let cases = [
            (t(&[-1, 1]), t(&[0])),
            (t(&[0]), t(&[-1, 1])),
            (t(&[1, 3, 5]), t(&[2, 4])),
            (t(&[1, 3, 5]), t(&[0, 2, 4])),
            (t(&[1, 2]), t(&[5, 6])),
            (t(&[1, 2]), t(&[3])),
            (t(&[0, 2]), t(&[1]).scale(&rat(-1))),
        ];
        let cfg = SamplingConfig { trials: 300, ..SamplingConfig::default() };
        for (g, h) in cases {
            let z = VariableId::z(1);
            let tv = VariableId::t(0);
            let f = g.to_polynomial(z) + h.to_polynomial(z) * Polynomial::var(tv);
            let stable = stability_sample_test(&f, &cfg).passed();
            let verdict = interlace_check(&g, &h).unwrap();
            let h_proper_g = matches!(verdict, Interlacing::HProperG | Interlacing::Both);
            assert_eq!(stable, h_proper_g, "g = {}, h = {}", g, h);
        }
    }

    #[test]
    fn sampling_examples() {
        let cfg = SamplingConfig::default();
        let v = stability_sample_test(&p("z1*z2"), &cfg);
        assert_eq!(v.kind, VerdictKind::PassedSampling);
        let bad = p("z1^2 + z2^2");
        let r = stability_sample_test(&bad, &cfg);
        assert_eq!(r.kind, VerdictKind::Refuted);
        assert!(replay_witness(&bad, r.witness.as_ref().unwrap()));
        assert_eq!(r, stability_sample_test(&bad, &cfg));
        // The explicit witness from the hand computation.
        let w = bad.restrict_line(&[rat(1), rat(-1)], &[rat(1), rat(1)]).unwrap();
        assert_eq!(w, u(&[2, 0, 2]));
        assert!(!real_rooted(&w));
        assert_eq!(stability_sample_test(&p("t^2 + 1"), &cfg).kind, VerdictKind::Refuted);
        assert_eq!(stability_sample_test(&p("t^2 - 1"), &cfg).kind, VerdictKind::CertifiedRealRooted);
        assert_eq!(stability_sample_test(&Polynomial::zero(), &cfg).kind, VerdictKind::CertifiedRealRooted);
    }

    #[test]
    fn rayleigh_examples() {
        let cfg = RayleighConfig { points: 200, ..RayleighConfig::default() };
        let (z1, z2) = (VariableId::z(1), VariableId::z(2));
        assert_eq!(rayleigh_difference(&p("z1*z2"), z1, z2), Polynomial::zero());
        assert_eq!(rayleigh_difference(&p("z1 + z2"), z1, z2), Polynomial::one());
        assert!(rayleigh_check(&p("z1*z2"), z1, z2, &cfg).unwrap().passed());
        assert!(rayleigh_check(&p("z1 + z2"), z1, z2, &cfg).unwrap().passed());
        // 1 + z1 z2 is not stable: the difference is -1 everywhere.
        let bad = p("z1*z2 + 1");
        let r = rayleigh_check(&bad, z1, z2, &cfg).unwrap();
        assert_eq!(r.kind, VerdictKind::Refuted);
        assert!(replay_rayleigh(&bad, z1, z2, r.witness.as_ref().unwrap()));
        assert_eq!(rayleigh_check(&p("z1^2"), z1, z2, &cfg), Err(StabilityError::NotMultiaffine));
    }
}
