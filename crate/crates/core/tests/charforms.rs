use transgression_core::charforms::*;
use transgression_core::exactscalar::{QSeries, Rational, Scalar};
use transgression_core::formcalc::*;
use transgression_core::thetalib::GenusKind;

fn curvature_data(m: usize, n: usize, seed: u64, skew: bool, trunc: Truncation) -> CurvatureData {
    let shape = ConnectionShape::new(m, n, 1).skew(skew).terms(4);
    let p = random_pair(&shape, seed, true).unwrap();
    let r = curvature(p.a1(), trunc).unwrap();
    CurvatureData::new(r, m as u32, trunc)
}

#[test]
fn flat_curvature_gives_rank_and_one() {
    let mut data = CurvatureData::new(MatrixForm::zero(3), 8, Truncation::None);
    assert_eq!(a_hat(&mut data).unwrap(), FormSeries::one());
    assert_eq!(l_form(&mut data).unwrap(), FormSeries::one());
    assert_eq!(ch(&mut data), FormSeries::constant(QSeries::from_int(3)));
    for kind in GenusKind::ALL {
        assert_eq!(phi_form(kind, &mut data, 48).unwrap(), FormSeries::constant(QSeries::one().truncate(48)));
    }
}

/// Four-form parts against the Taylor coefficients x/sin x = 1 + x²/6 + …
/// and x/tan x = 1 − x²/3 − …: Â⁽⁴⁾ = tr R²/192π², L⁽⁴⁾ = −tr R²/24π².
#[test]
fn four_form_components() {
    let trunc = Truncation::Weight(5);
    let mut data = curvature_data(4, 3, 2, false, trunc);
    let tr2 = data.power_sum(2);
    assert!(!tr2.is_zero());
    let ahat4 = a_hat(&mut data).unwrap().component(4);
    let l4 = l_form(&mut data).unwrap().component(4);
    let lift = |c: Rational| tr2.to_series().scale(&QSeries::constant(Scalar::rat_pi(c, -2)));
    assert_eq!(ahat4, lift(Rational::new(1, 192)));
    assert_eq!(l4, lift(Rational::new(-1, 24)));
    // p₁ = −tr R²/8π²: Â⁽⁴⁾ = −p₁/24, L⁽⁴⁾ = p₁/3
    let p1 = lift(Rational::new(-1, 8));
    assert_eq!(ahat4, p1.scale_rational(&Rational::new(-1, 24)));
    assert_eq!(l4, p1.scale_rational(&Rational::new(1, 3)));
}

#[test]
fn ch_tilde_doubles_curvature() {
    let trunc = Truncation::Weight(7);
    let mut data = curvature_data(6, 2, 4, false, trunc);
    let doubled = data.curvature().scale_rational(&Rational::from_int(2));
    let mut data2 = CurvatureData::new(doubled, 6, trunc);
    assert_eq!(ch_tilde(&mut data), ch(&mut data2));
}

#[test]
fn two_routes_agree_for_all_kinds() {
    let trunc = Truncation::Weight(9);
    let mut data = curvature_data(8, 4, 6, true, trunc);
    for kind in GenusKind::ALL {
        let theta = phi_form(kind, &mut data, 48).unwrap();
        let oracle = phi_form_oracle(kind, &mut data, 48).unwrap();
        assert_eq!(theta, oracle, "{:?}", kind);
        assert!(!theta.component(8).is_zero());
    }
}

#[test]
fn phi_w_degenerates_to_a_hat() {
    let trunc = Truncation::Weight(9);
    let mut data = curvature_data(8, 3, 8, false, trunc);
    let phi = phi_form(GenusKind::PhiW, &mut data, 48).unwrap();
    let ahat = a_hat(&mut data).unwrap();
    assert_eq!(phi.q_coeff(0), ahat.q_coeff(0));
    // B₀ = C: the q⁰ term of ch(Θ₂) is 1
    let c = theta_bundle_ch(ThetaBundle::Theta2, &mut data, 48, false);
    assert_eq!(c.q_coeff(0), FormSeries::one().q_coeff(0));
}

#[test]
fn phi_forms_closed_even_and_pi_homogeneous() {
    let trunc = Truncation::Weight(9);
    let mut data = curvature_data(8, 3, 10, false, trunc);
    for kind in GenusKind::ALL {
        let phi = phi_form(kind, &mut data, 48).unwrap();
        assert!(phi.d().truncate(trunc).is_zero());
        for d in phi.degrees() {
            assert_eq!(d % 4, 0, "degree {} in {:?}", d, kind);
            let c = phi.component(d);
            assert_eq!(c.pi_degree(), Some(Some(-(d as i32) / 2)));
        }
    }
}

#[test]
fn weight_scaling() {
    let trunc = Truncation::Weight(9);
    let mut data = curvature_data(8, 2, 12, false, trunc);
    let lambda = Rational::new(3, 2);
    let mut scaled = CurvatureData::new(data.curvature().scale_rational(&lambda), 8, trunc);
    let a = phi_form(GenusKind::PhiWPrime, &mut data, 48).unwrap();
    let b = phi_form(GenusKind::PhiWPrime, &mut scaled, 48).unwrap();
    for i in 1..=2u32 {
        let f = lambda.pow(2 * i);
        assert_eq!(b.component(4 * i), a.component(4 * i).scale_rational(&f));
    }
}

#[test]
fn anomaly_cancellation_and_sharpness() {
    let mut zero = CurvatureData::new(MatrixForm::zero(12), 12, Truncation::None);
    assert!(anomaly_residual_12(&mut zero, 32).unwrap().is_zero());
    let mut data = curvature_data(12, 12, 1, false, Truncation::PolyDegree(0));
    assert!(anomaly_residual_12(&mut data, 32).unwrap().is_zero());
    assert!(!anomaly_residual_12(&mut data, 31).unwrap().is_zero());
}
