//! The cyclotomic field Q(ζ) with ζ a primitive 24th root of unity.
//!
//! Elements are stored in the power basis ζ⁰…ζ⁷ modulo the cyclotomic
//! polynomial Φ₂₄(x) = x⁸ − x⁴ + 1.

use core::fmt;

use num_complex::Complex64;

use super::rational::Rational;
use crate::error::{Error, Result};

/// Degree of Q(ζ₂₄) over Q.
pub const DEGREE: usize = 8;

/// An element of Q(ζ₂₄) in the power basis.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CycloRational {
    coords: [Rational; DEGREE],
}

fn reduce_wide(mut wide: [Rational; 2 * DEGREE - 1]) -> [Rational; DEGREE] {
    // ζ^k = ζ^(k-4) − ζ^(k-8) for k ≥ 8
    for k in (DEGREE..2 * DEGREE - 1).rev() {
        if wide[k].is_zero() {
            continue;
        }
        let c = core::mem::take(&mut wide[k]);
        wide[k - 4] = &wide[k - 4] + &c;
        wide[k - 8] = &wide[k - 8] - &c;
    }
    let mut out: [Rational; DEGREE] = Default::default();
    for (o, w) in out.iter_mut().zip(wide) {
        *o = w;
    }
    out
}

impl CycloRational {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::ONE)
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut coords: [Rational; DEGREE] = Default::default();
        coords[0] = r;
        CycloRational { coords }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    /// Builds from power-basis coordinates.
    pub fn from_coords(coords: [Rational; DEGREE]) -> Self {
        CycloRational { coords }
    }

    pub fn coords(&self) -> &[Rational; DEGREE] {
        &self.coords
    }

    /// ζ^k for any integer k.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(24) as usize;
        let mut wide: [Rational; 2 * DEGREE - 1] = Default::default();
        if k < 2 * DEGREE - 1 {
            wide[k] = Rational::ONE;
            return CycloRational { coords: reduce_wide(wide) };
        }
        // ζ^k = −ζ^(k−12) for k ≥ 12
        let mut z = Self::zeta_pow(k as i64 - 12);
        z = z.neg();
        z
    }

    /// The imaginary unit i = ζ⁶.
    pub fn i() -> Self {
        Self::zeta_pow(6)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Rational::is_zero)
    }

    /// Returns the rational value when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coords[1..].iter().all(Rational::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coords = self.coords.clone();
        for (c, o) in coords.iter_mut().zip(other.coords.iter()) {
            if !o.is_zero() {
                *c = &*c + o;
            }
        }
        CycloRational { coords }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut coords = self.coords.clone();
        for (c, o) in coords.iter_mut().zip(other.coords.iter()) {
            if !o.is_zero() {
                *c = &*c - o;
            }
        }
        CycloRational { coords }
    }

    pub fn neg(&self) -> Self {
        let mut coords = self.coords.clone();
        for c in coords.iter_mut() {
            if !c.is_zero() {
                *c = -&*c;
            }
        }
        CycloRational { coords }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_one() {
            return self.clone();
        }
        let mut coords = self.coords.clone();
        for c in coords.iter_mut() {
            if !c.is_zero() {
                *c = &*c * r;
            }
        }
        CycloRational { coords }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        let mut wide: [Rational; 2 * DEGREE - 1] = Default::default();
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                wide[i + j] = &wide[i + j] + &(a * b);
            }
        }
        CycloRational { coords: reduce_wide(wide) }
    }

    /// Multiplicative inverse via the 8×8 multiplication matrix.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidInverse("zero cyclotomic element".into()));
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip().expect("nonzero")));
        }
        // column j of M holds self·ζ^j; solve M x = e₀
        let mut m: [[Rational; DEGREE + 1]; DEGREE] = Default::default();
        for j in 0..DEGREE {
            let col = self.mul(&Self::zeta_pow(j as i64));
            for i in 0..DEGREE {
                m[i][j] = col.coords[i].clone();
            }
        }
        m[0][DEGREE] = Rational::ONE;
        for col in 0..DEGREE {
            let piv = (col..DEGREE)
                .find(|&r| !m[r][col].is_zero())
                .ok_or_else(|| Error::InvalidInverse("singular multiplication matrix".into()))?;
            m.swap(col, piv);
            let p = m[col][col].recip().expect("pivot nonzero");
            for k in col..=DEGREE {
                m[col][k] = &m[col][k] * &p;
            }
            for r in 0..DEGREE {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for k in col..=DEGREE {
                        let v = &m[col][k] * &f;
                        m[r][k] = &m[r][k] - &v;
                    }
                }
            }
        }
        let mut coords: [Rational; DEGREE] = Default::default();
        for (i, c) in coords.iter_mut().enumerate() {
            *c = m[i][DEGREE].clone();
        }
        Ok(CycloRational { coords })
    }

    /// Numeric value under the embedding ζ ↦ e^{2πi/24}.
    pub fn to_complex(&self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                let ang = core::f64::consts::PI * (k as f64) / 12.0;
                acc += Complex64::from_polar(c.to_f64(), ang);
            }
        }
        acc
    }
}

impl fmt::Display for CycloRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (neg, abs) = (c.is_negative(), c.abs());
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", abs)?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{}", abs)?;
                    }
                    if k == 1 {
                        write!(f, "ζ")?;
                    } else {
                        write!(f, "ζ^{}", k)?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_eighth_power_reduces() {
        let z4 = CycloRational::zeta_pow(4);
        let expect = CycloRational::zeta_pow(4).sub(&CycloRational::one());
        assert_eq!(z4.mul(&z4), expect);
        assert_eq!(CycloRational::zeta_pow(8), expect);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CycloRational::i();
        assert_eq!(i.mul(&i), CycloRational::from_int(-1));
        assert_eq!(CycloRational::zeta_pow(12), CycloRational::from_int(-1));
        assert_eq!(CycloRational::zeta_pow(24), CycloRational::one());
    }

    #[test]
    fn inverse_of_generic_element() {
        let a = CycloRational::from_coords([
            Rational::new(1, 2),
            Rational::from_int(3),
            Rational::ZERO,
            Rational::new(-2, 7),
            Rational::ZERO,
            Rational::ZERO,
            Rational::from_int(1),
            Rational::ZERO,
        ]);
        let b = a.inv().unwrap();
        assert!(a.mul(&b).is_one());
    }

    #[test]
    fn numeric_embedding() {
        let z = CycloRational::zeta_pow(5).to_complex();
        let ang = core::f64::consts::PI * 5.0 / 12.0;
        assert!((z.re - libm::cos(ang)).abs() < 1e-14);
        assert!((z.im - libm::sin(ang)).abs() < 1e-14);
        let z8 = CycloRational::zeta_pow(8).to_complex();
        assert!((z8.re + 0.5).abs() < 1e-14);
    }
}
