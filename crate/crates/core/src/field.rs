//! Exact radial rational fields `P(x) / r^s` on punctured Euclidean space,
//! closed under partial derivatives, Laplacians and products.
//!
//! A value is a homogeneous polynomial numerator over a non-negative integer
//! power of `r = sqrt(x_1^2 + ... + x_m^2)`. The canonical representative has
//! a numerator not divisible by `x_1^2 + ... + x_m^2`; division stops when the
//! radial exponent would go negative, so positive powers of `r` (numerator
//! `(sum x_i^2)^j` over a smaller exponent) stay representable. Canonical
//! representatives are unique, which makes exact equality decidable.
//!
//! All differential operators are implemented by consolidated product-rule
//! formulas that stay inside the algebra; `derive` is the primitive the
//! others are property-tested against.

use std::fmt;

use crate::error::{AlgebraError, EvalError, ParseFieldError};
use crate::multipoly::{MultiIndex, MultiPoly};
use crate::rational::Rational;

/// A field `poly / r^rexp` on `R^m \ {0}`; always canonical.
#[derive(Clone, PartialEq, Eq)]
pub struct RadialScalar {
    poly: MultiPoly,
    rexp: u32,
}

impl RadialScalar {
    /// Builds and canonicalizes `poly / r^rexp`.
    pub fn new(poly: MultiPoly, rexp: u32) -> Self {
        let mut f = RadialScalar { poly, rexp };
        f.canonicalize_in_place();
        f
    }

    pub fn zero(dim: usize) -> Self {
        RadialScalar {
            poly: MultiPoly::zero(dim, 0),
            rexp: 0,
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        RadialScalar {
            poly: MultiPoly::constant(dim, c),
            rexp: 0,
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    /// `1 / r^s`.
    pub fn inverse_radial_power(dim: usize, s: u32) -> Self {
        RadialScalar {
            poly: MultiPoly::one(dim),
            rexp: s,
        }
    }

    /// `x_{var+1} / r^s` (0-based variable index).
    pub fn monomial_over_r(dim: usize, var: usize, s: u32) -> Self {
        RadialScalar::new(MultiPoly::var(dim, var), s)
    }

    pub fn dim(&self) -> usize {
        self.poly.dim()
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn radial_exponent(&self) -> u32 {
        self.rexp
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Homogeneity degree `deg(poly) - rexp`; `None` for the zero field.
    pub fn homogeneity(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.poly.degree() as i64 - self.rexp as i64)
        }
    }

    fn canonicalize_in_place(&mut self) {
        if self.poly.is_zero() {
            self.poly = MultiPoly::zero(self.poly.dim(), 0);
            self.rexp = 0;
            return;
        }
        while self.rexp >= 2 {
            match self.poly.div_exact_radius_sq() {
                Some(q) => {
                    self.poly = q;
                    self.rexp -= 2;
                }
                None => break,
            }
        }
    }

    /// Returns the unique canonical representative. Values are canonical on
    /// construction, so this is the identity; kept as the public witness of
    /// the normal form.
    pub fn canonicalize(&self) -> RadialScalar {
        self.clone()
    }

    /// Sum. Operands must share dimension and homogeneity degree (the zero
    /// field is compatible with anything); exponents are aligned by
    /// multiplying the lower-exponent numerator with powers of `sum x_i^2`.
    pub fn add(&self, other: &RadialScalar) -> Result<RadialScalar, AlgebraError> {
        if self.dim() != other.dim() {
            return Err(AlgebraError::DimensionMismatch(self.dim(), other.dim()));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let (ha, hb) = (self.homogeneity().unwrap(), other.homogeneity().unwrap());
        if ha != hb {
            return Err(AlgebraError::DegreeMismatch(ha, hb));
        }
        if (self.rexp as i64 - other.rexp as i64) % 2 != 0 {
            return Err(AlgebraError::ParityMismatch(self.rexp, other.rexp));
        }
        let (mut pa, mut pb) = (self.poly.clone(), other.poly.clone());
        let rexp = self.rexp.max(other.rexp);
        for _ in 0..(rexp - self.rexp) / 2 {
            pa = pa.mul_radius_sq();
        }
        for _ in 0..(rexp - other.rexp) / 2 {
            pb = pb.mul_radius_sq();
        }
        Ok(RadialScalar::new(pa.add(&pb)?, rexp))
    }

    pub fn sub(&self, other: &RadialScalar) -> Result<RadialScalar, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RadialScalar {
        RadialScalar {
            poly: self.poly.neg(),
            rexp: self.rexp,
        }
    }

    pub fn scale(&self, c: &Rational) -> RadialScalar {
        if c.is_zero() {
            return RadialScalar::zero(self.dim());
        }
        RadialScalar {
            poly: self.poly.scale(c),
            rexp: self.rexp,
        }
    }

    pub fn mul(&self, other: &RadialScalar) -> RadialScalar {
        RadialScalar::new(self.poly.mul(&other.poly), self.rexp + other.rexp)
    }

    /// Multiplies by `r^k` (k may be negative). Positive powers decrement the
    /// exponent, padding the numerator with `sum x_i^2` when it would go
    /// negative.
    pub fn mul_r_power(&self, k: i64) -> RadialScalar {
        if self.is_zero() {
            return self.clone();
        }
        let mut s = self.rexp as i64 - k;
        let mut poly = self.poly.clone();
        while s < 0 {
            poly = poly.mul_radius_sq();
            s += 2;
        }
        RadialScalar::new(poly, s as u32)
    }

    /// Exact partial derivative with respect to `x_{var+1}`, by the product
    /// rule with `d(r^-s)/dx_i = -s x_i r^(-s-2)`:
    /// `d(P/r^s)/dx_i = ((dP/dx_i) (sum x^2) - s x_i P) / r^(s+2)`.
    pub fn derive(&self, var: usize) -> RadialScalar {
        assert!(var < self.dim(), "coordinate index out of range");
        if self.is_zero() {
            return self.clone();
        }
        if self.rexp == 0 {
            return RadialScalar::new(self.poly.partial(var), 0);
        }
        let s = Rational::from_int(self.rexp as i64);
        let lead = self.poly.partial(var).mul_radius_sq();
        let tail = self.poly.mul_var(var).scale(&s);
        let numer = lead.sub(&tail).expect("derive: same degree by construction");
        RadialScalar::new(numer, self.rexp + 2)
    }

    /// Exact Laplacian `sum_i d^2 f / dx_i^2`, consolidated to one numerator:
    /// `lap(P/r^s) = ((lap P) (sum x^2) - 2 s E(P) + s (s+2-m) P) / r^(s+2)`
    /// with `E(P) = sum_i x_i dP/dx_i`.
    pub fn laplacian(&self) -> RadialScalar {
        if self.is_zero() {
            return self.clone();
        }
        let m = self.dim() as i64;
        let s = self.rexp as i64;
        if s == 0 {
            return RadialScalar::new(self.poly.laplace(), 0);
        }
        let lead = self.poly.laplace().mul_radius_sq();
        let mid = self.poly.euler_contraction().scale(&Rational::from_int(-2 * s));
        let tail = self.poly.scale(&Rational::from_int(s * (s + 2 - m)));
        let numer = lead
            .add(&mid)
            .and_then(|p| p.add(&tail))
            .expect("laplacian: same degree by construction");
        RadialScalar::new(numer, self.rexp + 2)
    }

    /// Exact `sum_i (df/dx_i)(dg/dx_i)`, consolidated:
    /// for `f = P/r^s`, `g = Q/r^t` the numerator over `r^(s+t+2)` is
    /// `R S(P,Q) - t Q E(P) - s P E(Q) + s t P Q` with `R = sum x^2`,
    /// `S(P,Q) = sum_i (dP/dx_i)(dQ/dx_i)`.
    pub fn gradient_dot(&self, other: &RadialScalar) -> RadialScalar {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let dim = self.dim();
        if self.is_zero() || other.is_zero() {
            return RadialScalar::zero(dim);
        }
        let (s, t) = (self.rexp as i64, other.rexp as i64);
        let mut cross = MultiPoly::zero(dim, 0);
        for i in 0..dim {
            cross = cross
                .add(&self.poly.partial(i).mul(&other.poly.partial(i)))
                .expect("gradient_dot: homogeneous cross terms");
        }
        let mut numer = cross.mul_radius_sq();
        if t != 0 {
            let term = other.poly.mul(&self.poly.euler_contraction()).scale(&Rational::from_int(-t));
            numer = numer.add(&term).expect("gradient_dot: term degrees agree");
        }
        if s != 0 {
            let term = self.poly.mul(&other.poly.euler_contraction()).scale(&Rational::from_int(-s));
            numer = numer.add(&term).expect("gradient_dot: term degrees agree");
        }
        if s != 0 && t != 0 {
            let term = self.poly.mul(&other.poly).scale(&Rational::from_int(s * t));
            numer = numer.add(&term).expect("gradient_dot: term degrees agree");
        }
        RadialScalar::new(numer, (s + t + 2) as u32)
    }

    /// Exact `sum_j (x_j / r) df/dx_j = (E(P) - s P) / r^(s+1)`; vanishes
    /// exactly for homogeneity-degree-zero fields (the Euler identity).
    pub fn radial_directional(&self) -> RadialScalar {
        if self.is_zero() {
            return self.clone();
        }
        let s = Rational::from_int(self.rexp as i64);
        let numer = self
            .poly
            .euler_contraction()
            .sub(&self.poly.scale(&s))
            .expect("radial_directional: same degree");
        RadialScalar::new(numer, self.rexp + 1)
    }

    /// Returns `k` such that `self = k * other` exactly, when it exists.
    /// `other` must be nonzero; the zero field yields `k = 0`.
    pub fn ratio_to(&self, other: &RadialScalar) -> Option<Rational> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Rational::zero());
        }
        // Canonical representatives of proportional fields share numerator
        // support and radial exponent.
        if self.rexp != other.rexp || self.poly.degree() != other.poly.degree() {
            return None;
        }
        let (lead_idx, lead_c) = other.poly.terms().next()?;
        let mine = self
            .poly
            .terms()
            .find(|(idx, _)| *idx == lead_idx)
            .map(|(_, c)| c)?;
        let k = mine / lead_c;
        if self == &other.scale(&k) {
            Some(k)
        } else {
            None
        }
    }

    /// Evaluates at a point: the numerator is summed exactly over the dyadic
    /// rationals of the coordinates and rounded once; `r^s` is a power of
    /// `sqrt(sum x_i^2)` in floating point.
    pub fn eval(&self, x: &[f64]) -> Result<f64, EvalError> {
        if x.len() != self.dim() {
            return Err(EvalError::DimensionMismatch(x.len(), self.dim()));
        }
        let r2: f64 = x.iter().map(|v| v * v).sum();
        if r2 == 0.0 {
            return Err(EvalError::OriginSingularity);
        }
        if self.is_zero() {
            return Ok(0.0);
        }
        let exact: Vec<Rational> = x
            .iter()
            .map(|&v| Rational::from_f64(v).ok_or(EvalError::OutOfRange(format!("non-finite coordinate {v}"))))
            .collect::<Result<_, _>>()?;
        // per-variable power tables up to the max exponent present
        let mut max_exp = vec![0u8; self.dim()];
        for (idx, _) in self.poly.terms() {
            for (i, &e) in idx.iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let pow_tables: Vec<Vec<Rational>> = exact
            .iter()
            .zip(&max_exp)
            .map(|(xi, &me)| {
                let mut t = Vec::with_capacity(me as usize + 1);
                t.push(Rational::one());
                for e in 1..=me as usize {
                    t.push(&t[e - 1] * xi);
                }
                t
            })
            .collect();
        let mut acc = Rational::zero();
        for (idx, c) in self.poly.terms() {
            let mut term = c.clone();
            for (i, &e) in idx.iter().enumerate() {
                if e > 0 {
                    term *= &pow_tables[i][e as usize];
                }
            }
            acc += &term;
        }
        let numer = acc.to_f64();
        Ok(numer / r2.sqrt().powi(self.rexp as i32))
    }

    /// Parses the textual form emitted by `Display`; the dimension must be
    /// supplied because constant terms carry no variables.
    pub fn parse(input: &str, dim: usize) -> Result<RadialScalar, ParseFieldError> {
        let input = input.trim();
        if input == "0" {
            return Ok(RadialScalar::zero(dim));
        }
        let mut terms: Vec<(MultiIndex, Rational)> = Vec::new();
        let mut rexp: Option<u32> = None;
        for raw in input.split('+') {
            let term = raw.trim();
            let rest = term
                .strip_prefix('(')
                .ok_or_else(|| ParseFieldError::new(format!("term `{term}` must start with (coeff)")))?;
            let close = rest
                .find(')')
                .ok_or_else(|| ParseFieldError::new(format!("unclosed coefficient in `{term}`")))?;
            let coeff: Rational = rest[..close].parse()?;
            let mut idx = vec![0u8; dim];
            let mut tail = &rest[close + 1..];
            let mut term_rexp = 0u32;
            while !tail.is_empty() {
                if let Some(r) = tail.strip_prefix("*x") {
                    let (num, rest2) = split_leading_int(r)?;
                    if num == 0 || num as usize > dim {
                        return Err(ParseFieldError::new(format!(
                            "variable x{num} out of range for dimension {dim}"
                        )));
                    }
                    let (exp, rest3) = match rest2.strip_prefix('^') {
                        Some(r2) => split_leading_int(r2)?,
                        None => (1, rest2),
                    };
                    idx[num as usize - 1] = idx[num as usize - 1]
                        .checked_add(exp as u8)
                        .ok_or_else(|| ParseFieldError::new("exponent overflow"))?;
                    tail = rest3;
                } else if let Some(r) = tail.strip_prefix("/r") {
                    let (exp, rest2) = match r.strip_prefix('^') {
                        Some(r2) => split_leading_int(r2)?,
                        None => (1, r),
                    };
                    term_rexp = exp;
                    tail = rest2;
                } else {
                    return Err(ParseFieldError::new(format!("unexpected input near `{tail}`")));
                }
            }
            match rexp {
                None => rexp = Some(term_rexp),
                Some(r0) if r0 != term_rexp => {
                    return Err(ParseFieldError::new(
                        "terms must share one radial exponent".to_string(),
                    ))
                }
                _ => {}
            }
            terms.push((idx, coeff));
        }
        let poly = MultiPoly::from_terms(dim, terms)
            .map_err(|e| ParseFieldError::new(format!("inconsistent terms: {e}")))?;
        Ok(RadialScalar::new(poly, rexp.unwrap_or(0)))
    }
}

fn split_leading_int(s: &str) -> Result<(u32, &str), ParseFieldError> {
    let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    if end == 0 {
        return Err(ParseFieldError::new(format!("expected integer at `{s}`")));
    }
    let v = s[..end]
        .parse::<u32>()
        .map_err(|_| ParseFieldError::new(format!("integer overflow at `{s}`")))?;
    Ok((v, &s[end..]))
}

impl fmt::Display for RadialScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in self.poly.terms() {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &e) in idx.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
            match self.rexp {
                0 => {}
                1 => write!(f, "/r")?,
                s => write!(f, "/r^{s}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RadialScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl serde::Serialize for RadialScalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A coordinate-indexed family of fields (a gradient, or one derivative slot
/// of a map); all components share dimension.
#[derive(Clone, Debug)]
pub struct RadialVector {
    components: Vec<RadialScalar>,
}

impl RadialVector {
    pub fn new(components: Vec<RadialScalar>) -> Self {
        assert!(!components.is_empty());
        let dim = components[0].dim();
        assert!(components.iter().all(|c| c.dim() == dim));
        RadialVector { components }
    }

    pub fn zero(dim: usize) -> Self {
        RadialVector {
            components: (0..dim).map(|_| RadialScalar::zero(dim)).collect(),
        }
    }

    /// The Euclidean gradient of `f` as a vector of fields.
    pub fn gradient(f: &RadialScalar) -> Self {
        RadialVector {
            components: (0..f.dim()).map(|i| f.derive(i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.components[0].dim()
    }

    pub fn components(&self) -> &[RadialScalar] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &RadialVector) -> Result<RadialVector, AlgebraError> {
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_, _>>()?;
        Ok(RadialVector { components })
    }

    pub fn scale(&self, c: &Rational) -> RadialVector {
        RadialVector {
            components: self.components.iter().map(|f| f.scale(c)).collect(),
        }
    }

    pub fn scale_field(&self, f: &RadialScalar) -> RadialVector {
        RadialVector {
            components: self.components.iter().map(|g| g.mul(f)).collect(),
        }
    }

    /// Pointwise dot product `sum_i v_i w_i`.
    pub fn dot(&self, other: &RadialVector) -> Result<RadialScalar, AlgebraError> {
        let dim = self.dim();
        let mut acc = RadialScalar::zero(dim);
        for (a, b) in self.components.iter().zip(&other.components) {
            acc = acc.add(&a.mul(b))?;
        }
        Ok(acc)
    }

    /// Divergence `sum_i d v_i / dx_i`.
    pub fn divergence(&self) -> Result<RadialScalar, AlgebraError> {
        let dim = self.dim();
        let mut acc = RadialScalar::zero(dim);
        for (i, v) in self.components.iter().enumerate() {
            acc = acc.add(&v.derive(i))?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn x_over_r(dim: usize, var: usize) -> RadialScalar {
        RadialScalar::monomial_over_r(dim, var, 1)
    }

    #[test]
    fn canonicalize_examples() {
        // (x1^2 + x2^2)/r^4 -> 1/r^2
        let p = MultiPoly::radius_sq(2);
        let f = RadialScalar::new(p, 4);
        assert_eq!(f, RadialScalar::inverse_radial_power(2, 2));
        // x1/r already canonical
        let g = x_over_r(2, 0);
        assert_eq!(g.to_string(), "(1)*x1/r");
        // (x1^3 + x1 x2^2)/r^5 -> x1/r^3
        let p2 = MultiPoly::from_terms(2, vec![(vec![3, 0], q(1, 1)), (vec![1, 2], q(1, 1))]).unwrap();
        let h = RadialScalar::new(p2, 5);
        assert_eq!(h, RadialScalar::monomial_over_r(2, 0, 3));
        assert_eq!(h.homogeneity(), Some(-2));
    }

    #[test]
    fn add_and_mul_examples() {
        let f = x_over_r(2, 0);
        assert!(f.add(&f.neg()).unwrap().is_zero());
        let g = x_over_r(2, 1);
        let prod = f.mul(&g);
        assert_eq!(prod.to_string(), "(1)*x1*x2/r^2");
        let inv2 = RadialScalar::inverse_radial_power(2, 2);
        let sum = inv2.add(&inv2).unwrap();
        assert_eq!(sum, inv2.scale(&q(2, 1)));
        // mismatched homogeneity rejected
        assert!(f.add(&inv2).is_err());
    }

    #[test]
    fn derive_examples() {
        // d/dx1 (x1/r) = x2^2/r^3 for m = 2
        let f = x_over_r(2, 0);
        let d1 = f.derive(0);
        let expect = RadialScalar::new(
            MultiPoly::from_terms(2, vec![(vec![0, 2], q(1, 1))]).unwrap(),
            3,
        );
        assert_eq!(d1, expect);
        // d/dx2 (x1/r) = -x1 x2 / r^3
        let d2 = f.derive(1);
        let expect2 = RadialScalar::new(
            MultiPoly::from_terms(2, vec![(vec![1, 1], q(-1, 1))]).unwrap(),
            3,
        );
        assert_eq!(d2, expect2);
        // d/dx1 (1/r^2) = -2 x1 / r^4
        let g = RadialScalar::inverse_radial_power(2, 2);
        assert_eq!(g.derive(0), RadialScalar::monomial_over_r(2, 0, 4).scale(&q(-2, 1)));
    }

    #[test]
    fn laplacian_examples() {
        // lap(1/r) = 0 in m = 3
        let f = RadialScalar::inverse_radial_power(3, 1);
        assert!(f.laplacian().is_zero());
        // lap(1/r^2) = 2/r^4 in m = 3
        let g = RadialScalar::inverse_radial_power(3, 2);
        assert_eq!(g.laplacian(), RadialScalar::inverse_radial_power(3, 4).scale(&q(2, 1)));
        // lap(x1/r) = (1-m) x1/r^3
        for m in 1..=5usize {
            let u = x_over_r(m, 0);
            let lap = u.laplacian();
            let expect = RadialScalar::monomial_over_r(m, 0, 3).scale(&q(1 - m as i64, 1));
            assert_eq!(lap, expect, "m = {m}");
        }
    }

    #[test]
    fn laplacian_matches_iterated_derive() {
        // compositional check of the consolidated formula
        let p = MultiPoly::from_terms(
            3,
            vec![(vec![2, 1, 0], q(3, 2)), (vec![0, 1, 2], q(-1, 3)), (vec![1, 1, 1], q(5, 7))],
        )
        .unwrap();
        let f = RadialScalar::new(p, 5);
        let mut lap = RadialScalar::zero(3);
        for i in 0..3 {
            lap = lap.add(&f.derive(i).derive(i)).unwrap();
        }
        assert_eq!(f.laplacian(), lap);
    }

    #[test]
    fn gradient_dot_examples() {
        // <grad(x1/r), grad(1/r^2)> = 0
        let f = x_over_r(2, 0);
        let g = RadialScalar::inverse_radial_power(2, 2);
        assert!(f.gradient_dot(&g).is_zero());
        // |grad(x1/r)|^2 = x2^2/r^4 for m = 2
        let e = f.gradient_dot(&f);
        let expect = RadialScalar::new(MultiPoly::from_terms(2, vec![(vec![0, 2], q(1, 1))]).unwrap(), 4);
        assert_eq!(e, expect);
        // |grad(1/r)|^2 = 1/r^4
        let h = RadialScalar::inverse_radial_power(2, 1);
        assert_eq!(h.gradient_dot(&h), RadialScalar::inverse_radial_power(2, 4));
    }

    #[test]
    fn gradient_dot_matches_componentwise() {
        let p = MultiPoly::from_terms(2, vec![(vec![2, 0], q(1, 1)), (vec![0, 2], q(-2, 1))]).unwrap();
        let f = RadialScalar::new(p, 3);
        let g = x_over_r(2, 1);
        let manual = RadialVector::gradient(&f).dot(&RadialVector::gradient(&g)).unwrap();
        assert_eq!(f.gradient_dot(&g), manual);
    }

    #[test]
    fn radial_directional_detects_homogeneity() {
        // degree-zero field: vanishes
        let f = x_over_r(2, 0);
        assert!(f.radial_directional().is_zero());
        // x1/r^2 has degree -1: sum y_j d_j = -x1/r^3
        let g = RadialScalar::monomial_over_r(2, 0, 2);
        assert_eq!(g.radial_directional(), RadialScalar::monomial_over_r(2, 0, 3).neg());
    }

    #[test]
    fn mul_r_power_pads_when_needed() {
        let f = x_over_r(2, 0); // x1/r
        let g = f.mul_r_power(2); // x1 r
        assert_eq!(g.homogeneity(), Some(1));
        assert_eq!(g.mul_r_power(-2), f);
    }

    #[test]
    fn ratio_to_finds_exact_multiples() {
        let f = x_over_r(3, 0);
        let g = f.scale(&q(-7, 3));
        assert_eq!(g.ratio_to(&f), Some(q(-7, 3)));
        assert_eq!(RadialScalar::zero(3).ratio_to(&f), Some(q(0, 1)));
        let h = x_over_r(3, 1);
        assert_eq!(h.ratio_to(&f), None);
    }

    #[test]
    fn eval_examples() {
        let f = x_over_r(2, 0);
        assert_eq!(f.eval(&[1.0, 0.0]).unwrap(), 1.0);
        let g = RadialScalar::inverse_radial_power(2, 2);
        assert_eq!(g.eval(&[3.0, 4.0]).unwrap(), 0.04);
        assert!(f.eval(&[0.0, 0.0]).is_err());
    }

    #[test]
    fn display_parse_round_trip() {
        let p = MultiPoly::from_terms(
            3,
            vec![(vec![2, 1, 0], q(-3, 2)), (vec![0, 1, 2], q(1, 7))],
        )
        .unwrap();
        let f = RadialScalar::new(p, 5);
        let s = f.to_string();
        let back = RadialScalar::parse(&s, 3).unwrap();
        assert_eq!(back, f);
        assert_eq!(RadialScalar::parse("0", 4).unwrap(), RadialScalar::zero(4));
    }
}
