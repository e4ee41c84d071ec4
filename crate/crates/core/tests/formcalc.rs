use transgression_core::exactscalar::{QSeries, Rational};
use transgression_core::formcalc::generate::{adjugate, determinant, rng_for, shear_product};
use transgression_core::formcalc::*;
use transgression_core::thetalib::WSeries;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn exp_series(d: usize) -> WSeries {
    let mut c = vec![Rational::ONE];
    for k in 1..=d {
        c.push(&c[k - 1] / &Rational::from_int(k as i64));
    }
    WSeries::from_rationals(&c)
}

/// 1 + x²/3 − x⁴/5 + x⁶/7, even with constant term 1.
fn even_series() -> WSeries {
    WSeries::from_rationals(&[Rational::ONE, Rational::ZERO, r(1, 3), Rational::ZERO, r(-1, 5), Rational::ZERO, r(1, 7)])
}

fn pair(m: usize, n: usize, seed: u64) -> ConnectionPair {
    random_pair(&ConnectionShape::new(m, n, 1), seed, false).unwrap()
}

#[test]
fn bianchi_identity_along_family() {
    let p = pair(5, 3, 11);
    let trunc = p.weight_truncation(1);
    let rt = curvature_family(&p, trunc).unwrap();
    let at = p.interpolated();
    let lhs = rt.d().truncate(trunc).add(&at.supercommutator(&rt, trunc).unwrap()).unwrap();
    assert!(lhs.is_zero());
}

#[test]
fn curvature_endpoints() {
    let p = pair(4, 2, 3);
    let rt = curvature_family(&p, Truncation::None).unwrap();
    assert_eq!(rt.eval_t(&Rational::ZERO), curvature(p.a0(), Truncation::None).unwrap());
    assert_eq!(rt.eval_t(&Rational::ONE), curvature(p.a1(), Truncation::None).unwrap());
}

#[test]
fn maurer_cartan_is_flat_and_adjugate_inverts() {
    let mut rng = rng_for(5);
    let (g, g_inv) = shear_product(&mut rng, 4, 3, 4, 1);
    assert_eq!(determinant(&g), Form::one());
    assert_eq!(adjugate(&g), g_inv);
    assert!(g.mul(&g_inv, Truncation::None).unwrap() == MatrixForm::identity(3));
    let p = flat_pair_from_seed(5, 3, 5, 1, 9).unwrap();
    assert!(curvature(p.a1(), Truncation::None).unwrap().is_zero());
    // zero shears give the trivial connection
    let p0 = flat_pair_from_seed(5, 3, 0, 1, 9).unwrap();
    assert!(p0.a1().is_zero());
}

#[test]
fn closedness_of_trace_forms() {
    let p = pair(6, 3, 21);
    let trunc = p.weight_truncation(1);
    let r1 = curvature(p.a1(), trunc).unwrap();
    let f = tr_f(&exp_series(3), &r1, 6, trunc);
    assert!(f.d().truncate(trunc).is_zero());
    let dh = det_half(&even_series(), &r1, 6, trunc).unwrap();
    assert!(dh.d().truncate(trunc).is_zero());
}

#[test]
fn transgression_exactness_tr_and_det_half() {
    for (m, n, seed) in [(3, 2, 1), (5, 3, 2), (6, 2, 3)] {
        let p = pair(m, n, seed);
        let trunc = p.weight_truncation(1);
        let (r0, r1) = endpoint_curvatures(&p, trunc).unwrap();
        let f = exp_series(m / 2 + 1);
        let cs = transgress_tr(&f, &p, trunc).unwrap();
        let diff = tr_f(&f, &r1, m as u32, trunc).sub(&tr_f(&f, &r0, m as u32, trunc));
        assert_eq!(cs.d().truncate(trunc), diff, "tr, m = {}", m);

        let g = even_series();
        let cs = transgress_det_half(&g, &p, trunc).unwrap();
        let diff = det_half(&g, &r1, m as u32, trunc).unwrap().sub(&det_half(&g, &r0, m as u32, trunc).unwrap());
        assert_eq!(cs.d().truncate(trunc), diff, "det_half, m = {}", m);
        assert!(transgress_tr(&f, &ConnectionPair::new(m, p.a0().clone(), p.a0().clone(), false).unwrap(), trunc)
            .unwrap()
            .is_zero());
    }
}

#[test]
fn linear_transgression_is_half_classic_cs() {
    let p = random_pair(&ConnectionShape::new(3, 3, 2), 7, true).unwrap();
    // f(x) = x²/2, so f'(x) = x
    let f = WSeries::from_rationals(&[Rational::ZERO, Rational::ZERO, r(1, 2)]);
    let cs = transgress_tr(&f, &p, Truncation::None).unwrap();
    let classic = cs_classic(p.a1(), Truncation::None).unwrap().scale_rational(&r(1, 2));
    assert_eq!(cs, classic.to_series());
    assert!(!classic.is_zero());
}

#[test]
fn det_half_squared_is_determinant() {
    let p = pair(4, 2, 17);
    let rr = curvature(p.a1(), Truncation::None).unwrap();
    let f = even_series();
    let dh = det_half(&f, &rr, 4, Truncation::None).unwrap();
    let fr = apply_series(&f, &rr, Truncation::None).unwrap();
    let t = Truncation::None;
    let det = fr.get(0, 0).wedge(fr.get(1, 1), t).sub(&fr.get(0, 1).wedge(fr.get(1, 0), t));
    assert_eq!(dh.wedge(&dh, t), det);
    assert!(!dh.component(4).is_zero());
}

#[test]
fn exp_of_matrix_has_inverse() {
    let p = pair(4, 2, 4);
    let x = curvature(p.a1(), Truncation::None).unwrap();
    let e = exp_series(2);
    let a = apply_series(&e, &x, Truncation::None).unwrap();
    let b = apply_series(&e, &x.neg(), Truncation::None).unwrap();
    assert_eq!(a.mul(&b, Truncation::None).unwrap(), MatrixForm::identity(2).to_series());
    // a 0-form part cannot be fed to a non-affine series
    assert!(apply_series(&e, &MatrixForm::identity(2), Truncation::None).is_err());
    // the identity series returns its argument
    let id = WSeries::from_rationals(&[Rational::ZERO, Rational::ONE]);
    assert_eq!(apply_series(&id, &x, Truncation::None).unwrap(), x.to_series());
}

#[test]
fn trace_of_zero_curvature_is_rank() {
    let f = WSeries::from_coeffs(vec![QSeries::from_int(5), QSeries::from_int(1)]);
    let z = tr_f(&f, &MatrixForm::zero(3), 4, Truncation::None);
    assert_eq!(z, Form::constant(QSeries::from_int(15)));
}
