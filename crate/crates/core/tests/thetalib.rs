use transgression_core::exactscalar::{QSeries, Rational, Scalar};
use transgression_core::thetalib::*;

fn qs(trunc: i64, terms: &[(i64, i64, i64)]) -> QSeries {
    QSeries::from_terms(
        trunc,
        terms.iter().map(|&(k, n, d)| (k, Scalar::from_rational(Rational::new(n, d)))).collect(),
    )
}

/// Π(1 − q^j)³ = Σ_{n ≥ 0} (−1)ⁿ (2n+1) q^{n(n+1)/2}.
fn eta_cube_oracle(trunc: i64) -> QSeries {
    let mut terms = Vec::new();
    let mut n = 0i64;
    while 24 * n * (n + 1) / 2 < trunc {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        terms.push((24 * n * (n + 1) / 2, Scalar::from_int(sign * (2 * n + 1))));
        n += 1;
    }
    QSeries::from_terms(trunc, terms)
}

#[test]
fn theta_vanishes_at_zero_and_parities() {
    let (d, n) = (9, 120);
    let th = theta_expand(ThetaKind::Theta, d, n);
    assert!(th.coeff(0).is_zero());
    for k in (0..=d).step_by(2) {
        assert!(th.coeff(k).is_zero(), "theta even slot {}", k);
    }
    for kind in [ThetaKind::Theta1, ThetaKind::Theta2, ThetaKind::Theta3] {
        let t = theta_expand(kind, d, n);
        for k in (1..=d).step_by(2) {
            assert!(t.coeff(k).is_zero(), "{:?} odd slot {}", kind, k);
        }
    }
}

#[test]
fn theta2_theta3_start_at_one() {
    for kind in [ThetaKind::Theta2, ThetaKind::Theta3] {
        let t = theta_expand(kind, 2, 48);
        assert_eq!(t.coeff(0).coeff(0), Scalar::one());
    }
}

#[test]
fn theta_linear_coefficient_is_twice_eta_cubed() {
    let n = 480;
    let th = theta_expand(ThetaKind::Theta, 1, n);
    let expect = eta_cube_oracle(n - 3).shift(3).scale_rational(&Rational::from_int(2)).truncate(n);
    assert_eq!(th.coeff(1), &expect);
    // and through η itself: 2η³ = w¹ slot
    let e = eta(n);
    assert_eq!(e.pow(3).scale_rational(&Rational::from_int(2)).truncate(n), *th.coeff(1));
}

#[test]
fn modular_table_listed_coefficients() {
    let t = modular_table(72);
    let cut = |f: &QSeries| f.truncate(25);
    assert_eq!(cut(&t.delta[0]), qs(25, &[(0, 1, 4), (24, 6, 1)]));
    assert_eq!(t.delta[0].coeff(48), Scalar::from_int(6));
    assert_eq!(cut(&t.eps[0]), qs(25, &[(0, 1, 16), (24, -1, 1)]));
    assert_eq!(t.eps[0].coeff(48), Scalar::from_int(7));
    assert_eq!(cut(&t.delta[1]), qs(25, &[(0, -1, 8), (12, -3, 1), (24, -3, 1)]));
    assert_eq!(cut(&t.eps[1]), qs(25, &[(12, 1, 1), (24, 8, 1)]));
    assert_eq!(cut(&t.delta[2]), qs(25, &[(0, -1, 8), (12, 3, 1), (24, -3, 1)]));
    assert_eq!(cut(&t.eps[2]), qs(25, &[(12, -1, 1), (24, 8, 1)]));
    assert_eq!(t.e4.truncate(49), qs(49, &[(0, 1, 1), (24, 240, 1), (48, 2160, 1)]));
}

#[test]
fn eta_24_is_delta() {
    let n = 24 * 8;
    let d = eta(n).pow(24);
    assert_eq!(d.valuation(), Some(24));
    assert_eq!(d.coeff(24), Scalar::one());
    // Ramanujan τ(2) = −24, τ(3) = 252
    assert_eq!(d.coeff(48), Scalar::from_int(-24));
    assert_eq!(d.coeff(72), Scalar::from_int(252));
    for (_, c) in d.terms() {
        assert!(c.as_rational().unwrap().is_integer());
    }
}

#[test]
fn jacobi_identity_exact_and_sharp() {
    let n = 240;
    assert!(jacobi_identity_check(n).is_zero());
    assert_eq!(jacobi_identity_check(n).trunc(), n);
    let broken = theta_prime_zero(n).sub(
        &theta_null(ThetaKind::Theta1, n).mul(&theta_null(ThetaKind::Theta2, n)).shift_pi(1),
    );
    assert!(!broken.is_zero());
    // leading terms: θ'(0) starts 2π q^{1/8}
    assert_eq!(theta_prime_zero(n).terms()[0], (3, Scalar::rat_pi(Rational::from_int(2), 1)));
}

/// Coefficients of 1/z − π cot(πz) = Σ_{k ≥ 1} 2ζ(2k) z^{2k−1}, with
/// ζ(2k) = (−1)^{k+1} B_{2k} (2π)^{2k} / (2 (2k)!).
fn cot_oracle(k: usize) -> Scalar {
    // Bernoulli numbers from the standard recurrence
    let mut b = vec![Rational::ONE];
    for m in 1..=2 * k {
        let mut s = Rational::ZERO;
        let mut binom = Rational::ONE;
        for (j, bj) in b.iter().enumerate() {
            s = &s + &(&binom * bj);
            binom = &(&binom * &Rational::from_int((m + 1 - j) as i64)) / &Rational::from_int(j as i64 + 1);
        }
        b.push(-(&s / &Rational::from_int(m as i64 + 1)));
    }
    let mut fact = Rational::ONE;
    for i in 1..=2 * k {
        fact = &fact * &Rational::from_int(i as i64);
    }
    let sign = if k % 2 == 1 { Rational::ONE } else { Rational::from_int(-1) };
    let two_pow = Rational::from_int(1i64 << (2 * k));
    let zeta = &(&(&sign * &b[2 * k]) * &two_pow) / &(&Rational::from_int(2) * &fact);
    Scalar::rat_pi(&Rational::from_int(2) * &zeta, 2 * k as i32)
}

#[test]
fn regularized_bracket_matches_cotangent_at_q0() {
    let reg = theta_logderiv(LogDerivKind::ThetaReg, 7, 48).unwrap();
    for d in (0..=7).step_by(2) {
        assert!(reg.coeff(d).is_zero(), "even slot {}", d);
    }
    for k in 1..=4 {
        assert_eq!(reg.coeff(2 * k - 1).coeff(0), cot_oracle(k), "z^{}", 2 * k - 1);
    }
    assert_eq!(reg.coeff(1).coeff(0), Scalar::rat_pi(Rational::new(1, 3), 2));
}

#[test]
fn dim3_bracket_derivative_is_delta1() {
    let n = 96;
    let b = theta_logderiv(LogDerivKind::ThetaReg, 1, n)
        .unwrap()
        .add(&theta_logderiv(LogDerivKind::Theta1, 1, n).unwrap());
    let slope = b.coeff(1).clone();
    assert_eq!(slope.coeff(0), Scalar::rat_pi(Rational::new(-2, 3), 2));
    let t = modular_table(n);
    let expect = t.delta[0].scale(&Scalar::rat_pi(Rational::new(-8, 3), 2));
    assert_eq!(slope, expect);
}

#[test]
fn tshift_relations_on_theta_nulls() {
    let n = 96;
    let t2 = theta_null(ThetaKind::Theta2, n).pow(4);
    let t3 = theta_null(ThetaKind::Theta3, n).pow(4);
    assert_eq!(t2.tshift(), t3);
    let m = modular_table(n);
    assert_eq!(m.delta[1].tshift(), m.delta[2]);
    assert_eq!(m.eps[1].tshift(), m.eps[2]);
    // θ₂(v, τ+1) = θ₃(v, τ) on the whole w-series
    assert_eq!(theta_expand(ThetaKind::Theta2, 6, n).tshift(), theta_expand(ThetaKind::Theta3, 6, n));
    // θ(v, τ+1) = e^{πi/4} θ(v, τ)
    let th = theta_expand(ThetaKind::Theta, 5, n);
    assert_eq!(th.tshift(), th.scale(&Scalar::zeta_pow(3)));
}

#[test]
fn decomposition_roundtrips() {
    let n = 96;
    let m = modular_table(n);
    let d = decompose_gamma0_2(&m.delta[1].pow(2), 4).unwrap();
    assert_eq!(d[0].1, Scalar::one());
    assert!(d[1].1.is_zero());
    let d = decompose_gamma0_2(&m.eps[1], 4).unwrap();
    assert!(d[0].1.is_zero());
    assert_eq!(d[1].1, Scalar::one());
    // h0 (8δ₂)³ + h1 (8δ₂) ε₂
    let (h0, h1) = (Scalar::rat_pi(Rational::new(3, 7), -4), Scalar::rat_pi(Rational::new(-5, 11), -4));
    let eight_d = m.delta[1].scale_rational(&Rational::from_int(8));
    let f = eight_d.pow(3).scale(&h0).add(&eight_d.mul(&m.eps[1]).scale(&h1));
    let d = decompose_gamma0_2(&f, 6).unwrap();
    assert_eq!(d[0].1, h0.scale(&Rational::from_int(512)));
    assert_eq!(d[1].1, h1.scale(&Rational::from_int(8)));
    assert_eq!(reconstruct(&d, &m.delta[1], &m.eps[1]).truncate(n), f);
    // E₄ itself is not a Γ⁰(2) form of weight 6
    assert!(decompose_gamma0_2(&m.e4.mul(&m.delta[1]).add(&m.e4), 6).is_err());
}

#[test]
fn generating_functions_normalized() {
    for kind in GenusKind::ALL {
        let f = genus_series_w(kind, 8, 72).unwrap();
        assert_eq!(f.coeff(0), &QSeries::one().truncate(72));
        for d in (1..=8).step_by(2) {
            assert!(f.coeff(d).is_zero());
        }
    }
    // q⁰ of the Ψ generating function is w/sin w: 1 + w²/6 + 7w⁴/360
    let f = genus_series_w(GenusKind::PsiW, 4, 48).unwrap();
    assert_eq!(f.coeff(2).coeff(0), Scalar::from_rational(Rational::new(1, 6)));
    assert_eq!(f.coeff(4).coeff(0), Scalar::from_rational(Rational::new(7, 360)));
}
