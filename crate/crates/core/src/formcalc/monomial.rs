//! Monomials x^α t^k dx_I on a chart of dimension ≤ 15.

use core::fmt;

/// Maximum chart dimension supported by the packed representation.
pub const MAX_DIM: usize = 15;
const T_SLOT: usize = 15;

/// A packed monomial: form part as a bitmask, polynomial exponents (and the
/// formal homotopy parameter t) as one byte each.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial {
    /// Bit i set ⇔ dx_{i+1} present.
    pub mask: u16,
    /// Byte i (i < 15) is the exponent of x_{i+1}; byte 15 is the exponent of t.
    pub exps: u128,
}

/// How products are truncated on a chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Truncation {
    /// Keep everything.
    None,
    /// Keep monomials with polynomial degree + form degree ≤ bound.
    /// Closed under d and ∧, so differential identities stay exact.
    Weight(u32),
    /// Keep monomials with polynomial degree ≤ bound. Closed under ∧ only.
    PolyDegree(u32),
}

impl Truncation {
    #[inline]
    pub fn keeps(self, m: &Monomial) -> bool {
        match self {
            Truncation::None => true,
            Truncation::Weight(w) => m.weight() <= w,
            Truncation::PolyDegree(p) => m.poly_degree() <= p,
        }
    }
}

#[inline]
fn byte_sum(x: u128) -> u32 {
    // horizontal byte sum; every byte is < 256 and at most 16 of them
    let lo = x as u64;
    let hi = (x >> 64) as u64;
    let s = |v: u64| -> u32 {
        let v = (v & 0x00ff_00ff_00ff_00ff) + ((v >> 8) & 0x00ff_00ff_00ff_00ff);
        let v = (v & 0x0000_ffff_0000_ffff) + ((v >> 16) & 0x0000_ffff_0000_ffff);
        ((v & 0xffff_ffff) + (v >> 32)) as u32
    };
    s(lo) + s(hi)
}

const T_MASK: u128 = 0xff << (8 * T_SLOT);

impl Monomial {
    pub const ONE: Monomial = Monomial { mask: 0, exps: 0 };

    /// dx_{i+1} (0-based index).
    pub fn dx(i: usize) -> Self {
        assert!(i < MAX_DIM);
        Monomial { mask: 1 << i, exps: 0 }
    }

    /// x^α dx_I from exponent and (0-based) index lists.
    pub fn new(exps: &[u8], form: &[usize]) -> Self {
        assert!(exps.len() <= MAX_DIM, "too many coordinates");
        let mut e = 0u128;
        for (i, &x) in exps.iter().enumerate() {
            e |= (x as u128) << (8 * i);
        }
        let mut mask = 0u16;
        for &i in form {
            assert!(i < MAX_DIM);
            mask |= 1 << i;
        }
        Monomial { mask, exps: e }
    }

    /// t^k.
    pub fn t_pow(k: u8) -> Self {
        Monomial { mask: 0, exps: (k as u128) << (8 * T_SLOT) }
    }

    #[inline]
    pub fn form_degree(&self) -> u32 {
        self.mask.count_ones()
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u8 {
        (self.exps >> (8 * i)) as u8
    }

    #[inline]
    pub fn t_exp(&self) -> u8 {
        self.exp(T_SLOT)
    }

    /// Same monomial with the t-exponent cleared.
    #[inline]
    pub fn without_t(&self) -> Self {
        Monomial { mask: self.mask, exps: self.exps & !T_MASK }
    }

    #[inline]
    pub fn poly_degree(&self) -> u32 {
        byte_sum(self.exps & !T_MASK)
    }

    #[inline]
    pub fn weight(&self) -> u32 {
        self.poly_degree() + self.form_degree()
    }

    /// Form indices (0-based) in increasing order.
    pub fn form_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..16).filter(move |i| self.mask & (1 << i) != 0)
    }

    /// Polynomial exponents of the first `m` coordinates.
    pub fn poly_exps(&self, m: usize) -> impl Iterator<Item = u8> + '_ {
        (0..m).map(move |i| self.exp(i))
    }

    /// Product with sign from reordering the form parts; `None` when a
    /// differential repeats.
    #[inline]
    pub fn mul(&self, other: &Self) -> Option<(Self, bool)> {
        if self.mask & other.mask != 0 {
            return None;
        }
        let mut neg = false;
        let mut b = other.mask;
        while b != 0 {
            let j = b.trailing_zeros();
            // number of dx in self with index greater than j
            let above = (self.mask as u32) >> (j + 1);
            neg ^= above.count_ones() & 1 == 1;
            b &= b - 1;
        }
        Some((Monomial { mask: self.mask | other.mask, exps: self.exps + other.exps }, neg))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = 0;
        for i in 0..MAX_DIM {
            let e = self.exp(i);
            if e > 0 {
                if parts > 0 {
                    write!(f, "·")?;
                }
                if e == 1 {
                    write!(f, "x{}", i + 1)?;
                } else {
                    write!(f, "x{}^{}", i + 1, e)?;
                }
                parts += 1;
            }
        }
        if self.t_exp() > 0 {
            if parts > 0 {
                write!(f, "·")?;
            }
            write!(f, "t^{}", self.t_exp())?;
            parts += 1;
        }
        for i in self.form_indices() {
            if parts > 0 {
                write!(f, " ")?;
            }
            write!(f, "dx{}", i + 1)?;
            parts += 1;
        }
        if parts == 0 {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_sign() {
        let a = Monomial::dx(0);
        let b = Monomial::dx(1);
        assert_eq!(a.mul(&b), Some((Monomial::new(&[], &[0, 1]), false)));
        assert_eq!(b.mul(&a), Some((Monomial::new(&[], &[0, 1]), true)));
        assert_eq!(a.mul(&a), None);
        // dx2 dx3 ∧ dx1 = dx1 dx2 dx3 (two transpositions)
        let bc = Monomial::new(&[], &[1, 2]);
        assert_eq!(bc.mul(&a), Some((Monomial::new(&[], &[0, 1, 2]), false)));
    }

    #[test]
    fn degrees() {
        let m = Monomial::new(&[2, 0, 1], &[0, 3]).mul(&Monomial::t_pow(2)).unwrap().0;
        assert_eq!(m.poly_degree(), 3);
        assert_eq!(m.form_degree(), 2);
        assert_eq!(m.weight(), 5);
        assert_eq!(m.t_exp(), 2);
        assert_eq!(m.without_t().t_exp(), 0);
    }
}
