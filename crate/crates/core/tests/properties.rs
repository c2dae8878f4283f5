//! Property tests across modules: Möbius invariance of the apolarity form,
//! stability of `per(B(A))` and `per(zJ + A)`, and refutation of known
//! unstable polynomials.

use proptest::prelude::*;
use stableperm_core::apolarity::{
    apolarity_form, apolarity_form_from_roots, mobius_permanent_prefactor, mobius_transform, root_difference_permanent,
    MobiusMap,
};
use stableperm_core::permanent::subset_dp;
use stableperm_core::stability::{
    rayleigh_check, real_rooted, stability_sample_test, RayleighConfig, SamplingConfig, VerdictKind,
};
use stableperm_core::{
    rat, ratio, FerrersMatrix, Matrix, MonotoneColumnMatrix, Polynomial, Rational, UnivariatePolynomial, VariableId,
};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-8i64..=8, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    small_rational().prop_filter("nonzero", |r| *r != rat(0))
}

fn mobius() -> impl Strategy<Value = MobiusMap> {
    (-4i64..=4, -4i64..=4, -4i64..=4, -4i64..=4)
        .prop_filter_map("invertible", |(a, b, c, d)| MobiusMap::new(rat(a), rat(b), rat(c), rat(d)).ok())
}

/// Equal-degree root lists.
fn root_pair() -> impl Strategy<Value = (Rational, Vec<Rational>, Rational, Vec<Rational>)> {
    (1usize..=4).prop_flat_map(|n| {
        (
            nonzero_rational(),
            proptest::collection::vec(small_rational(), n),
            nonzero_rational(),
            proptest::collection::vec(small_rational(), n),
        )
    })
}

fn ferrers(n: usize) -> impl Strategy<Value = FerrersMatrix> {
    proptest::collection::vec(0..=n, n).prop_map(move |mut h| {
        h.sort_unstable();
        FerrersMatrix::from_heights(n, n, h).unwrap()
    })
}

fn monotone(n: usize) -> impl Strategy<Value = MonotoneColumnMatrix> {
    proptest::collection::vec(proptest::collection::vec(-6i64..=6, n), n).prop_map(move |cols| {
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut c = cols[j].clone();
                        c.sort_unstable_by(|a, b| b.cmp(a));
                        rat(c[i])
                    })
                    .collect()
            })
            .collect();
        MonotoneColumnMatrix::from_rows(rows).unwrap()
    })
}

fn diagonal(p: &Polynomial, n: usize) -> UnivariatePolynomial {
    let z = VariableId::z(0);
    let vars = (1..=n).map(|j| VariableId::z(j as u32)).collect();
    p.diagonalize(&vars, z).to_univariate(z).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn root_form_matches_coefficient_form((lf, z, lg, w) in root_pair()) {
        let f = UnivariatePolynomial::from_roots(&lf, &z);
        let g = UnivariatePolynomial::from_roots(&lg, &w);
        prop_assert_eq!(apolarity_form(&f, &g).unwrap(), apolarity_form_from_roots(&lf, &z, &lg, &w));
    }

    #[test]
    fn form_scales_by_determinant_power((lf, z, lg, w) in root_pair(), phi in mobius()) {
        let n = z.len();
        let f = UnivariatePolynomial::from_roots(&lf, &z);
        let g = UnivariatePolynomial::from_roots(&lg, &w);
        // A root on the pole drops the degree; the law is stated without it.
        let (fh, gh) = match (mobius_transform(&f, &phi), mobius_transform(&g, &phi)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Err(TestCaseError::reject("root on the pole")),
        };
        let det_n = (0..n).fold(rat(1), |acc, _| acc * phi.determinant());
        prop_assert_eq!(apolarity_form(&fh, &gh).unwrap(), &det_n * apolarity_form(&f, &g).unwrap());
        prop_assert_eq!(mobius_transform(&fh, &phi.inverse()).unwrap(), f.scale(&det_n));
    }

    #[test]
    fn prefactor_law((_lf, z, _lg, w) in root_pair(), phi in mobius()) {
        if let Some(pre) = mobius_permanent_prefactor(&phi, &z, &w) {
            let img = |v: &[Rational]| -> Vec<Rational> { v.iter().map(|t| phi.apply(t).unwrap()).collect() };
            prop_assert_eq!(pre * root_difference_permanent(&z, &w), root_difference_permanent(&img(&z), &img(&w)));
        }
    }

    #[test]
    fn ferrers_permanents_pass_line_sampling(a in ferrers(3), seed in 0u64..1000) {
        let p = subset_dp(&a.build_b()).unwrap();
        let v = stability_sample_test(&p, &SamplingConfig { trials: 8, seed, ..SamplingConfig::default() });
        prop_assert!(v.passed(), "{:?}", v.witness);
    }

    #[test]
    fn monotone_diagonals_are_real_rooted(a in monotone(4)) {
        let p = subset_dp(&a.jz_plus_a()).unwrap();
        prop_assert!(real_rooted(&diagonal(&p, 4)));
    }

    #[test]
    fn monotone_permanents_are_rayleigh(a in monotone(3), seed in 0u64..1000) {
        let p = subset_dp(&a.jz_plus_a()).unwrap();
        let cfg = RayleighConfig { points: 20, seed, ..RayleighConfig::default() };
        let v = rayleigh_check(&p, VariableId::z(1), VariableId::z(2), &cfg).unwrap();
        prop_assert!(v.passed(), "{:?}", v.witness);
    }
}

#[test]
fn unstable_polynomials_are_refuted() {
    let x = |i| Polynomial::var(VariableId::x(i));
    // x1^2 + x2^2 + 1 has no real zeros along most lines.
    let p = &(&x(1) * &x(1)) + &(&(&x(2) * &x(2)) + &Polynomial::one());
    let v = stability_sample_test(&p, &SamplingConfig { trials: 16, ..SamplingConfig::default() });
    assert_eq!(v.kind, VerdictKind::Refuted);
    // 1 + x1 x2 is multiaffine but fails the Rayleigh inequality: p_1 p_2 - p p_12 = -1.
    let q = &Polynomial::one() + &(&x(1) * &x(2));
    let v = rayleigh_check(
        &q,
        VariableId::x(1),
        VariableId::x(2),
        &RayleighConfig { points: 5, ..RayleighConfig::default() },
    )
    .unwrap();
    assert_eq!(v.kind, VerdictKind::Refuted);
}

#[test]
fn non_monotone_diagonal_is_not_real_rooted() {
    let a = Matrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(1), rat(0)]]).unwrap();
    let p = subset_dp(&stableperm_core::matrices::build_jz_plus_a(&a)).unwrap();
    assert!(!real_rooted(&diagonal(&p, 2)));
}
