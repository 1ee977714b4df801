//! Exact arithmetic in real quadratic extensions `a + b*sqrt(d)`.
//!
//! `d` is a square-free positive integer; `d = 1` marks plain rationals
//! (then `b = 0` by normalization). Comparisons are exact, via sign analysis
//! on `a^2` versus `b^2 d` — no floating point is involved anywhere, so
//! boundary classifications (roots exactly 0 or 1) are reliable.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Exact value `a + b*sqrt(d)` with rational `a`, `b` and square-free `d >= 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    d: u64,
}

impl QuadExt {
    pub fn from_rational(a: Rational) -> Self {
        QuadExt {
            a,
            b: Rational::zero(),
            d: 1,
        }
    }

    /// `a + b*sqrt(d)`; normalizes `b = 0` or `d = 1` to the rational form.
    pub fn new(a: Rational, b: Rational, d: u64) -> Self {
        assert!(d >= 1, "radicand must be positive");
        if b.is_zero() {
            return Self::from_rational(a);
        }
        if d == 1 {
            return Self::from_rational(a + b);
        }
        QuadExt { a, b, d }
    }

    /// Exact square root of a non-negative rational: extracts the largest
    /// square factor so the remaining radicand is square-free. Returns `None`
    /// for negative input.
    pub fn sqrt_rational(q: &Rational) -> Option<QuadExt> {
        if q.signum() < 0 {
            return None;
        }
        if q.is_zero() {
            return Some(QuadExt::from_rational(Rational::zero()));
        }
        // sqrt(p/s) = sqrt(p*s)/s
        let n = q.numer() * q.denom();
        let (square, free) = split_square(&n);
        Some(QuadExt::new(
            Rational::zero(),
            Rational::from_big(square, q.denom().clone()),
            free,
        ))
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn surd_coefficient(&self) -> &Rational {
        &self.b
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn common_d(&self, other: &QuadExt) -> Option<u64> {
        match (self.b.is_zero(), other.b.is_zero()) {
            (true, true) => Some(1),
            (true, false) => Some(other.d),
            (false, true) => Some(self.d),
            (false, false) => (self.d == other.d).then_some(self.d),
        }
    }

    /// Sum; both operands must live in the same extension (or be rational).
    pub fn add(&self, other: &QuadExt) -> QuadExt {
        let d = self
            .common_d(other)
            .expect("cannot add values from different quadratic extensions");
        QuadExt::new(&self.a + &other.a, &self.b + &other.b, d)
    }

    pub fn sub(&self, other: &QuadExt) -> QuadExt {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> QuadExt {
        QuadExt {
            a: -&self.a,
            b: -&self.b,
            d: self.d,
        }
    }

    pub fn mul(&self, other: &QuadExt) -> QuadExt {
        let d = self
            .common_d(other)
            .expect("cannot multiply values from different quadratic extensions");
        let dq = Rational::from_int(d as i64);
        let a = &self.a * &other.a + &(&self.b * &other.b) * &dq;
        let b = &self.a * &other.b + &self.b * &other.a;
        QuadExt::new(a, b, d)
    }

    pub fn scale(&self, c: &Rational) -> QuadExt {
        QuadExt::new(&self.a * c, &self.b * c, self.d)
    }

    pub fn add_rational(&self, c: &Rational) -> QuadExt {
        QuadExt::new(&self.a + c, self.b.clone(), self.d)
    }

    /// Exact sign: -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        let (sa, sb) = (self.a.signum(), self.b.signum());
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // opposite signs: compare a^2 with b^2 d exactly
        let a2 = &self.a * &self.a;
        let b2d = &(&self.b * &self.b) * &Rational::from_int(self.d as i64);
        match a2.cmp_rational(&b2d) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &Rational) -> std::cmp::Ordering {
        let diff = QuadExt::new(&self.a - q, self.b.clone(), self.d);
        match diff.signum() {
            s if s < 0 => std::cmp::Ordering::Less,
            0 => std::cmp::Ordering::Equal,
            _ => std::cmp::Ordering::Greater,
        }
    }

    /// Strict open-interval test `0 < self < 1`, exact.
    pub fn in_open_unit_interval(&self) -> bool {
        self.signum() > 0 && self.cmp_rational(&Rational::one()) == std::cmp::Ordering::Less
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64() + self.b.to_f64() * (self.d as f64).sqrt()
    }
}

/// Splits `n >= 1` as `square^2 * free` with `free` square-free.
fn split_square(n: &BigInt) -> (BigInt, u64) {
    assert!(n.is_positive());
    let mut remaining = n.clone();
    let mut square = BigInt::from(1);
    let mut free: u64 = 1;
    let mut p = BigInt::from(2);
    loop {
        let p_sq = &p * &p;
        if &p_sq > &remaining {
            break;
        }
        let mut count = 0u32;
        while (&remaining % &p).is_zero() {
            remaining /= &p;
            count += 1;
        }
        if count > 0 {
            for _ in 0..count / 2 {
                square *= &p;
            }
            if count % 2 == 1 {
                free = free
                    .checked_mul(p.to_u64().expect("square-free part overflows u64"))
                    .expect("square-free part overflows u64");
            }
        }
        p += if p == BigInt::from(2) { 1 } else { 2 };
    }
    // remaining is 1 or prime
    if let Some(r) = remaining.to_u64() {
        if r > 1 {
            free = free.checked_mul(r).expect("square-free part overflows u64");
        }
    } else {
        panic!("square-free part overflows u64");
    }
    (square, free)
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            if self.b.is_one() {
                return write!(f, "sqrt({})", self.d);
            }
            return write!(f, "{}*sqrt({})", self.b, self.d);
        }
        let sign = if self.b.signum() < 0 { '-' } else { '+' };
        let mag = self.b.abs();
        if mag.is_one() {
            write!(f, "{}{}sqrt({})", self.a, sign, self.d)
        } else {
            write!(f, "{}{}{}*sqrt({})", self.a, sign, mag, self.d)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for QuadExt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn sqrt_extracts_square_factors() {
        // sqrt(152500/562500)? keep simpler: sqrt(50) = 5 sqrt(2)
        let s = QuadExt::sqrt_rational(&q(50, 1)).unwrap();
        assert_eq!(s.to_string(), "5*sqrt(2)");
        // sqrt(49/4) = 7/2 exactly rational
        let r = QuadExt::sqrt_rational(&q(49, 4)).unwrap();
        assert_eq!(r.as_rational(), Some(&q(7, 2)));
        // sqrt(61/225): 1/15 sqrt(61)
        let t = QuadExt::sqrt_rational(&q(61, 225)).unwrap();
        assert_eq!(t.to_string(), "1/15*sqrt(61)");
        assert!(QuadExt::sqrt_rational(&q(-1, 1)).is_none());
    }

    #[test]
    fn arithmetic_and_signs() {
        // (14 - sqrt(61))/15 is positive and below 1
        let root = QuadExt::new(q(14, 15), q(-1, 15), 61);
        assert_eq!(root.signum(), 1);
        assert!(root.in_open_unit_interval());
        // (14 + sqrt(61))/15 exceeds 1
        let root_p = QuadExt::new(q(14, 15), q(1, 15), 61);
        assert!(!root_p.in_open_unit_interval());
        // product of conjugates: (14^2 - 61)/225 = 135/225 = 3/5
        let prod = root.mul(&root_p);
        assert_eq!(prod.as_rational(), Some(&q(3, 5)));
    }

    #[test]
    fn boundary_values_are_exact() {
        let one = QuadExt::from_rational(q(1, 1));
        assert!(!one.in_open_unit_interval());
        let zero = QuadExt::from_rational(q(0, 1));
        assert!(!zero.in_open_unit_interval());
        // sqrt(2) - 1 is in (0,1); 2 - sqrt(2) is not below ... it is: ~0.586
        let s2 = QuadExt::new(q(-1, 1), q(1, 1), 2);
        assert!(s2.in_open_unit_interval());
    }

    #[test]
    fn display_forms() {
        assert_eq!(QuadExt::from_rational(q(2, 9)).to_string(), "2/9");
        assert_eq!(QuadExt::new(q(10, 9), q(-1, 9), 10).to_string(), "10/9-1/9*sqrt(10)");
        assert_eq!(QuadExt::new(q(0, 1), q(1, 1), 13).to_string(), "sqrt(13)");
    }
}
