use num_complex::Complex64;
use proptest::prelude::*;
use transgression_core::charforms::{phi_form, phi_form_oracle};
use transgression_core::csforms::{cs_form, exactness_checks, swap_residual};
use transgression_core::exactscalar::{QSeries, Rational, Scalar};
use transgression_core::formcalc::generate::{random_one_form, random_poly, rng_for};
use transgression_core::formcalc::*;
use transgression_core::numericheck::{series_consistency, NumericConfig};
use transgression_core::thetalib::modular::weight_basis;
use transgression_core::thetalib::{decompose_gamma0_2, modular_table, reconstruct, theta_expand, GenusKind, ThetaKind};

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
}

/// r·π^k·ζ₂₄^z, a unit whenever r ≠ 0.
fn monomial_scalar() -> impl Strategy<Value = Scalar> {
    (rational(), -2i32..=2, 0i64..24).prop_map(|(r, k, z)| Scalar::rat_pi(r, k).mul(&Scalar::zeta_pow(z)))
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec(monomial_scalar(), 1..=3).prop_map(|v| v.iter().fold(Scalar::zero(), |a, s| a.add(s)))
}

fn qseries(trunc: i64) -> impl Strategy<Value = QSeries> {
    prop::collection::vec((0..trunc, scalar()), 0..=6).prop_map(move |raw| QSeries::from_terms(trunc, raw))
}

fn qseries_triple() -> impl Strategy<Value = (QSeries, QSeries, QSeries)> {
    (1i64..=60).prop_flat_map(|n| (qseries(n), qseries(n), qseries(n)))
}

fn invertible() -> impl Strategy<Value = QSeries> {
    (1i64..=48)
        .prop_flat_map(|n| (Just(n), monomial_scalar().prop_filter("unit", |s| !s.is_zero()), qseries(n)))
        .prop_map(|(n, c, f)| {
            let tail = QSeries::from_terms(n, f.terms().iter().filter(|t| t.0 > 0).cloned().collect());
            QSeries::constant(c).truncate(n).add(&tail)
        })
}

/// A homogeneous p-form: a polynomial times a wedge of p random 1-forms.
fn homogeneous(seed: u64, m: usize, p: usize) -> Form<Rational> {
    let mut rng = rng_for(seed);
    let mut f = random_poly(&mut rng, m, 2, 3);
    for _ in 0..p {
        f = f.wedge(&random_one_form(&mut rng, m, 2, 3), Truncation::None);
    }
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn qseries_ring_axioms((f, g, h) in qseries_triple()) {
        prop_assert_eq!(f.mul(&g).mul(&h), f.mul(&g.mul(&h)));
        prop_assert_eq!(f.mul(&g.add(&h)), f.mul(&g).add(&f.mul(&h)));
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert_eq!(f.add(&g).add(&h), f.add(&g.add(&h)));
    }

    #[test]
    fn tshift_is_a_ring_homomorphism_of_order_24((f, g, _) in qseries_triple()) {
        prop_assert_eq!(f.mul(&g).tshift(), f.tshift().mul(&g.tshift()));
        prop_assert_eq!(f.add(&g).tshift(), f.tshift().add(&g.tshift()));
        let mut t = f.clone();
        for _ in 0..24 {
            t = t.tshift();
        }
        prop_assert_eq!(t, f);
    }

    #[test]
    fn scalar_field_axioms(a in scalar(), b in scalar(), c in scalar(), u in monomial_scalar()) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        if !u.is_zero() {
            prop_assert_eq!(u.mul(&u.inv().unwrap()), Scalar::one());
        }
    }

    #[test]
    fn decomposition_inverts_reconstruction(w in prop::sample::select(vec![4u32, 6, 8]), cs in prop::collection::vec(scalar(), 3)) {
        let t = modular_table(97);
        let dec: Vec<_> = weight_basis(w).unwrap().into_iter().zip(cs).collect();
        let f = reconstruct(&dec, &t.delta[1], &t.eps[1]).truncate(97);
        let back = decompose_gamma0_2(&f, w).unwrap();
        for (m, c) in &dec {
            let got = back.iter().find(|(b, _)| b == m).map(|(_, s)| s.clone()).unwrap_or_else(Scalar::zero);
            prop_assert_eq!(&got, c);
        }
    }

    #[test]
    fn theta_parity(kind in prop::sample::select(ThetaKind::ALL.to_vec()), d in 1usize..=8, n in 1i64..=120) {
        let f = theta_expand(kind, d, n);
        let wrong = if kind == ThetaKind::Theta { 0 } else { 1 };
        for (k, c) in f.coeffs().iter().enumerate() {
            if k % 2 == wrong {
                prop_assert!(c.is_zero(), "{:?} w^{}", kind, k);
            }
        }
    }

    #[test]
    fn d_squared_and_leibniz(seed in any::<u64>(), m in 2usize..=6, p in 0usize..=2, q in 0usize..=2) {
        let a = homogeneous(seed, m, p);
        let b = homogeneous(seed ^ 0x5555, m, q);
        prop_assert!(a.d().d().is_zero());
        let lhs = a.wedge(&b, Truncation::None).d();
        let sign = if p % 2 == 0 { Rational::ONE } else { -Rational::ONE };
        let rhs = a.d().wedge(&b, Truncation::None).add(&a.wedge(&b.d(), Truncation::None).scale_rational(&sign));
        prop_assert_eq!(lhs, rhs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn invert_is_two_sided(f in invertible()) {
        let g = f.invert().unwrap();
        let one = QSeries::one().truncate(f.trunc());
        prop_assert_eq!(f.mul(&g), one.clone());
        prop_assert_eq!(g.mul(&f), one);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn bianchi_along_the_family(seed in any::<u64>(), m in 2usize..=5, n in 1usize..=3) {
        let p = random_pair(&ConnectionShape::new(m, n, 1), seed, false).unwrap();
        let trunc = p.weight_truncation(1);
        let rt = curvature_family(&p, trunc).unwrap();
        let lhs = rt.d().truncate(trunc).add(&p.interpolated().supercommutator(&rt, trunc).unwrap()).unwrap();
        prop_assert!(lhs.is_zero());
    }

    #[test]
    fn maurer_cartan_forms_are_flat(seed in any::<u64>(), m in 2usize..=5, n in 2usize..=4, shears in 1usize..=6) {
        let p = flat_pair_from_seed(m, n, shears, 1, seed).unwrap();
        let a = p.difference();
        // [∇₀, A] = −A∧A with ∇₀ = d
        let lhs = a.d().add(&a.mul(&a, Truncation::None).unwrap()).unwrap();
        prop_assert!(lhs.is_zero());
    }

    #[test]
    fn transgression_is_exact(seed in any::<u64>(), m in prop::sample::select(vec![3usize, 5]), n in 1usize..=3) {
        let p = random_pair(&ConnectionShape::new(m, n, 1), seed, false).unwrap();
        for c in exactness_checks(&p, 25, p.weight_truncation(1)).unwrap() {
            prop_assert!(!c.failed(), "{}", c.id);
        }
    }

    #[test]
    fn cs_forms_are_odd_and_pi_homogeneous(seed in any::<u64>(), kind in prop::sample::select(GenusKind::ALL.to_vec())) {
        let p = random_pair(&ConnectionShape::new(5, 2, 1), seed, false).unwrap();
        let trunc = p.weight_truncation(1);
        let cs = cs_form(kind, &p, 25, trunc).unwrap().form;
        for d in cs.degrees() {
            prop_assert_eq!(d % 4, 3);
            prop_assert_eq!(cs.component(d).pi_degree(), Some(Some(-((d as i32 + 1) / 2))));
        }
        prop_assert!(swap_residual(kind, &p, 25, trunc).unwrap().is_zero());
    }

    #[test]
    fn phi_forms_two_routes_and_weight_scaling(seed in any::<u64>(), num in 1i64..=5, den in 1i64..=3) {
        let trunc = Truncation::Weight(9);
        let p = random_pair(&ConnectionShape::new(8, 2, 1).skew(true).terms(3), seed, true).unwrap();
        let r = curvature(p.a1(), trunc).unwrap();
        let lambda = Rational::new(num, den);
        let mut data = CurvatureData::new(r.clone(), 8, trunc);
        let mut scaled = CurvatureData::new(r.scale_rational(&lambda), 8, trunc);
        for kind in GenusKind::ALL {
            let a = phi_form(kind, &mut data, 13).unwrap();
            prop_assert_eq!(&a, &phi_form_oracle(kind, &mut data, 13).unwrap());
            prop_assert!(a.d().truncate(trunc).is_zero());
            let b = phi_form(kind, &mut scaled, 13).unwrap();
            for i in 1..=2u32 {
                prop_assert_eq!(b.component(4 * i), a.component(4 * i).scale_rational(&lambda.pow(2 * i)));
            }
        }
    }

    #[test]
    fn numeric_thetas_match_series(re in -0.5f64..0.5, im in 1.0f64..3.0, vr in -0.3f64..0.3, vi in -0.1f64..0.1) {
        let cfg = NumericConfig {
            tau_samples: vec![Complex64::new(re, im)],
            v_samples: vec![Complex64::new(vr, vi)],
            series_trunc: 193,
            ..NumericConfig::default()
        };
        for c in series_consistency(&cfg, 30).unwrap() {
            prop_assert!(!c.failed(), "{} {:?}", c.id, c.residual);
        }
    }
}
