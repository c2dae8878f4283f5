//! The apolarity pairing: its root-difference permanent form, Möbius
//! invariance, complements, and the root-location demonstration.

use rand::Rng;
use stableperm_core::apolarity::{
    apolar_complement, apolarity_form, apolarity_form_from_roots, mobius_permanent_prefactor, mobius_transform,
    root_difference_permanent, MobiusMap,
};
use stableperm_core::combinatorics::factorial;
use stableperm_core::sampling::{rational_in, trial_rng};
use stableperm_core::{rat, Rational, UnivariatePolynomial};

use super::derive_seed;
use super::SuiteParams;
use crate::grace::{run_grace_demo, GraceConfig, Region};
use crate::report::{CaseResult, Label, Runner, SuiteReport};

/// A pair of rational-rooted polynomials `lead_f prod (t - z_j)` and
/// `lead_g prod (t - w_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootPair {
    pub lead_f: Rational,
    pub z: Vec<Rational>,
    pub lead_g: Rational,
    pub w: Vec<Rational>,
}

impl RootPair {
    pub fn f(&self) -> UnivariatePolynomial {
        UnivariatePolynomial::from_roots(&self.lead_f, &self.z)
    }

    pub fn g(&self) -> UnivariatePolynomial {
        UnivariatePolynomial::from_roots(&self.lead_g, &self.w)
    }

    fn describe(&self) -> String {
        format!("lead_f={} z={:?} lead_g={} w={:?}", self.lead_f, strs(&self.z), self.lead_g, strs(&self.w))
    }
}

fn strs(v: &[Rational]) -> Vec<String> {
    v.iter().map(|r| r.to_string()).collect()
}

fn nonzero<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Rational {
    loop {
        let v = rational_in(rng, bound, max_den);
        if v != rat(0) {
            return v;
        }
    }
}

/// Case `index` of the corpus: degree `1 + index % 5`; odd cases are made
/// apolar by solving for the last root of `g`, on which the permanent
/// depends affinely.
pub fn corpus_pair(seed: u64, index: u64) -> RootPair {
    let mut rng = trial_rng(seed, index);
    let n = 1 + index as usize % 5;
    let z: Vec<Rational> = (0..n).map(|_| rational_in(&mut rng, 5, 4)).collect();
    let mut w: Vec<Rational> = (0..n).map(|_| rational_in(&mut rng, 5, 4)).collect();
    let lead_f = nonzero(&mut rng, 3, 2);
    let lead_g = nonzero(&mut rng, 3, 2);
    if index % 2 == 1 {
        w[n - 1] = rat(0);
        let p0 = root_difference_permanent(&z, &w);
        w[n - 1] = rat(1);
        let slope = root_difference_permanent(&z, &w) - &p0;
        if slope != rat(0) {
            w[n - 1] = -p0 / slope;
        }
    }
    RootPair { lead_f, z, lead_g, w }
}

/// A Möbius map with small integer entries and nonzero determinant.
pub fn random_mobius(seed: u64, index: u64) -> MobiusMap {
    let mut rng = trial_rng(seed, index);
    loop {
        let mut e = || rat(rng.gen_range(-4..=4));
        if let Ok(m) = MobiusMap::new(e(), e(), e(), e()) {
            return m;
        }
    }
}

/// The value `n! a_n b_n per(w_i - z_j)` taken literally.
pub fn literal_root_form(p: &RootPair) -> Rational {
    factorial(p.z.len()) * &p.lead_f * &p.lead_g * root_difference_permanent(&p.z, &p.w)
}

/// Checks on one pair. Returns whether the literal normalisation agreed.
pub fn pair_case(p: &RootPair, phi: &MobiusMap) -> (CaseResult, bool) {
    let mut r = CaseResult::new(p.describe());
    let inputs = || p.describe();
    let (f, g) = (p.f(), p.g());
    let n = p.z.len();
    let form = match apolarity_form(&f, &g) {
        Ok(v) => v,
        Err(e) => {
            r.fail("form", inputs(), e);
            return (r, false);
        }
    };
    let literal = form == literal_root_form(p);
    r.check_eq("root form", inputs, &form, &apolarity_form_from_roots(&p.lead_f, &p.z, &p.lead_g, &p.w));
    let per = root_difference_permanent(&p.z, &p.w);
    r.check(
        "apolar iff permanent vanishes",
        (form == rat(0)) == (per == rat(0)),
        inputs,
        format!("per = {per}"),
        format!("form = {form}"),
    );

    let mobius_inputs = || format!("{} map=({}, {}, {}, {})", p.describe(), phi.a, phi.b, phi.c, phi.d);
    let Some(pre) = mobius_permanent_prefactor(phi, &p.z, &p.w) else {
        // A root sits on the pole; the transform drops degree.
        return (r, literal);
    };
    let img = |v: &[Rational]| -> Vec<Rational> { v.iter().map(|x| phi.apply(x).expect("pole excluded")).collect() };
    let (fz, fw) = (img(&p.z), img(&p.w));
    r.check_eq("prefactor law", mobius_inputs, &(pre * &per), &root_difference_permanent(&fz, &fw));
    let (fh, gh) = match (mobius_transform(&f, phi), mobius_transform(&g, phi)) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            r.fail("transform", mobius_inputs(), e);
            return (r, literal);
        }
    };
    let roots_ok = fh.degree() == Some(n) && fz.iter().all(|t| fh.eval(t) == rat(0));
    r.check("transformed roots", roots_ok, mobius_inputs, "phi(z_j) are roots", &fh);
    let det_n = num_traits::pow(phi.determinant(), n);
    let scaled = apolarity_form(&fh, &gh).map(|v| v.to_string()).unwrap_or_else(|e| e.to_string());
    r.check_eq("form scales by det^n", mobius_inputs, &(&det_n * &form).to_string(), &scaled);
    match mobius_transform(&fh, &phi.inverse()) {
        Ok(back) => r.check_eq("inverse returns det^n f", mobius_inputs, &f.scale(&det_n), &back),
        Err(e) => r.fail("inverse", mobius_inputs(), e),
    }
    (r, literal)
}

/// Random `g` with integer coefficients and exact degree `n`, and `n - 1`
/// free parameters.
pub fn complement_input(seed: u64, index: u64) -> (UnivariatePolynomial, Vec<Rational>) {
    let mut rng = trial_rng(seed, index);
    let n = 1 + index as usize % 5;
    let mut c: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-9..=9))).collect();
    c.push(nonzero(&mut rng, 9, 1));
    let free = (1..n).map(|_| rational_in(&mut rng, 5, 4)).collect();
    (UnivariatePolynomial::new(c), free)
}

pub fn complement_case(g: &UnivariatePolynomial, free: &[Rational]) -> CaseResult {
    let mut r = CaseResult::new(format!("g={g}"));
    let inputs = || format!("g={g} free={:?}", strs(free));
    match apolar_complement(g, free) {
        Ok(f) => {
            let n = g.degree().expect("nonzero");
            r.check_eq("leading coefficient", inputs, &rat(1), &f.coeff(n));
            match apolarity_form(&f, g) {
                Ok(v) => r.check_eq("complement is apolar", inputs, &rat(0), &v),
                Err(e) => r.fail("complement is apolar", inputs(), e),
            }
        }
        Err(e) => r.fail("complement", inputs(), e),
    }
    r
}

/// `t` is apolar to itself; `t - 1` and `t + 1` pair to 2.
pub fn smoke_case() -> CaseResult {
    let mut r = CaseResult::new("degree 1");
    let form = |f: &[i64], g: &[i64]| {
        apolarity_form(&UnivariatePolynomial::from_i64s(f), &UnivariatePolynomial::from_i64s(g)).expect("degree 1")
    };
    r.check_eq("t with t", String::new, &rat(0), &form(&[0, 1], &[0, 1]));
    r.check_eq("t - 1 with t + 1", String::new, &rat(2), &form(&[-1, 1], &[1, 1]));
    let p = RootPair { lead_f: rat(1), z: vec![rat(1)], lead_g: rat(1), w: vec![rat(-1)] };
    r.check_eq("root form", String::new, &rat(2), &apolarity_form_from_roots(&p.lead_f, &p.z, &p.lead_g, &p.w));
    r
}

pub fn apolarity(params: &SuiteParams, runner: &Runner) -> anyhow::Result<SuiteReport> {
    let count = params.count.unwrap_or(200);
    let trials = params.trials.unwrap_or(100);
    let mut report =
        SuiteReport::new("apolarity", Label::TheoremBacked).seeded(params.seed, Some(trials)).param("count", count);
    let indices: Vec<u64> = (0..count).collect();
    let results = runner.map(&indices, |&i| {
        let p = corpus_pair(params.seed, i);
        pair_case(&p, &random_mobius(derive_seed(params.seed, i), i))
    });
    let literal = results.iter().filter(|(_, ok)| *ok).count();
    report.notes.push(format!(
        "n! a_n b_n per(w_i - z_j) matched the form in {literal} of {count} pairs; (-1)^n a_n b_n per(w_i - z_j) / n! is the identity checked"
    ));
    report.absorb(results.into_iter().map(|(r, _)| r).collect());
    let complements: Vec<u64> = (0..50).collect();
    report.absorb(runner.map(&complements, |&i| {
        let (g, free) = complement_input(derive_seed(params.seed, 1 << 20), i);
        complement_case(&g, &free)
    }));
    report.absorb(vec![smoke_case()]);
    let regions = [
        ("unit disk", Region::unit_disk()),
        ("half-plane", Region::HalfPlane { point: (0.5, -1.0), normal: (1.0, 2.0) }),
    ];
    for (name, region) in regions {
        let cfg = GraceConfig { trials, seed: params.seed, region, ..GraceConfig::default() };
        let demo = run_grace_demo(&cfg);
        let mut r = CaseResult::new(format!("grace {name}"));
        r.check(
            "apolar f has a root in the region",
            demo.passed(),
            || format!("seed={} trials={trials}", params.seed),
            format!("excess <= {:e}", cfg.tol),
            format!(
                "{} violations, {} skipped, worst excess {:e}",
                demo.violations.len(),
                demo.skipped.len(),
                demo.worst_excess
            ),
        );
        report.absorb(vec![r]);
    }
    Ok(report)
}
