//! Sparse homogeneous multivariate polynomials with exact rational
//! coefficients.
//!
//! Every stored polynomial is homogeneous: all multi-indices share the same
//! total degree, enforced at construction. The zero polynomial keeps a formal
//! degree so that homogeneity bookkeeping survives cancellation.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::AlgebraError;
use crate::rational::Rational;

/// Exponent multi-index; `expts[i]` is the power of `x_{i+1}`.
pub type MultiIndex = Vec<u8>;

/// Homogeneous polynomial in `dim` variables, sparse term map.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    dim: usize,
    /// Total degree of every stored term; formal degree when zero.
    degree: u32,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl MultiPoly {
    pub fn zero(dim: usize, degree: u32) -> Self {
        MultiPoly {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0u8; dim], c);
        }
        MultiPoly {
            dim,
            degree: 0,
            terms,
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    /// The variable `x_{var+1}` (0-based index).
    pub fn var(dim: usize, var: usize) -> Self {
        assert!(var < dim);
        let mut idx = vec![0u8; dim];
        idx[var] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(idx, Rational::one());
        MultiPoly {
            dim,
            degree: 1,
            terms,
        }
    }

    /// Builds from raw terms, dropping zero coefficients and enforcing
    /// homogeneity.
    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (MultiIndex, Rational)>,
    ) -> Result<Self, AlgebraError> {
        let mut map: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        let mut degree: Option<u32> = None;
        for (idx, c) in terms {
            if idx.len() != dim {
                return Err(AlgebraError::BadMultiIndex(idx.len(), dim));
            }
            if c.is_zero() {
                continue;
            }
            let d: u32 = idx.iter().map(|&e| e as u32).sum();
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Err(AlgebraError::Inhomogeneous(d0, d)),
                _ => {}
            }
            let entry = map.entry(idx).or_insert_with(Rational::zero);
            *entry += &c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MultiPoly {
            dim,
            degree: degree.unwrap_or(0),
            terms: map,
        })
    }

    /// The squared-radius polynomial `x_1^2 + ... + x_m^2`.
    pub fn radius_sq(dim: usize) -> Self {
        let mut terms = BTreeMap::new();
        for i in 0..dim {
            let mut idx = vec![0u8; dim];
            idx[i] = 2;
            terms.insert(idx, Rational::one());
        }
        MultiPoly {
            dim,
            degree: 2,
            terms,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    fn insert_add(map: &mut BTreeMap<MultiIndex, Rational>, idx: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        match map.entry(idx) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Sum; operands must agree in dimension, and in degree unless one is zero.
    pub fn add(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        if self.dim != other.dim {
            return Err(AlgebraError::DimensionMismatch(self.dim, other.dim));
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.degree != other.degree {
            return Err(AlgebraError::Inhomogeneous(self.degree, other.degree));
        }
        let mut terms = self.terms.clone();
        for (idx, c) in &other.terms {
            Self::insert_add(&mut terms, idx.clone(), c.clone());
        }
        Ok(MultiPoly {
            dim: self.dim,
            degree: self.degree,
            terms,
        })
    }

    pub fn sub(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(idx, c)| (idx.clone(), -c))
            .collect();
        MultiPoly {
            dim: self.dim,
            degree: self.degree,
            terms,
        }
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.dim, self.degree);
        }
        let terms = self
            .terms
            .iter()
            .map(|(idx, q)| (idx.clone(), q * c))
            .collect();
        MultiPoly {
            dim: self.dim,
            degree: self.degree,
            terms,
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let degree = self.degree + other.degree;
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(self.dim, degree);
        }
        let mut terms = BTreeMap::new();
        for (ia, ca) in &self.terms {
            for (ib, cb) in &other.terms {
                let idx: MultiIndex = ia.iter().zip(ib).map(|(a, b)| a + b).collect();
                Self::insert_add(&mut terms, idx, ca * cb);
            }
        }
        MultiPoly {
            dim: self.dim,
            degree,
            terms,
        }
    }

    /// Multiplies by the single variable `x_{var+1}`.
    pub fn mul_var(&self, var: usize) -> MultiPoly {
        assert!(var < self.dim);
        let terms = self
            .terms
            .iter()
            .map(|(idx, c)| {
                let mut idx = idx.clone();
                idx[var] += 1;
                (idx, c.clone())
            })
            .collect();
        MultiPoly {
            dim: self.dim,
            degree: self.degree + 1,
            terms,
        }
    }

    /// Partial derivative with respect to `x_{var+1}`.
    pub fn partial(&self, var: usize) -> MultiPoly {
        assert!(var < self.dim);
        let degree = self.degree.saturating_sub(1);
        let mut terms = BTreeMap::new();
        for (idx, c) in &self.terms {
            let e = idx[var];
            if e == 0 {
                continue;
            }
            let mut nidx = idx.clone();
            nidx[var] = e - 1;
            Self::insert_add(&mut terms, nidx, c * &Rational::from_int(e as i64));
        }
        MultiPoly {
            dim: self.dim,
            degree,
            terms,
        }
    }

    /// The contraction `sum_i x_i * dP/dx_i`, computed term by term (no appeal
    /// to the Euler identity, which is property-tested against this).
    pub fn euler_contraction(&self) -> MultiPoly {
        let mut terms = BTreeMap::new();
        for (idx, c) in &self.terms {
            let total: i64 = idx.iter().map(|&e| e as i64).sum();
            Self::insert_add(&mut terms, idx.clone(), c * &Rational::from_int(total));
        }
        MultiPoly {
            dim: self.dim,
            degree: self.degree,
            terms,
        }
    }

    /// The polynomial Laplacian `sum_i d^2 P / dx_i^2`.
    pub fn laplace(&self) -> MultiPoly {
        let degree = self.degree.saturating_sub(2);
        let mut terms = BTreeMap::new();
        for (idx, c) in &self.terms {
            for var in 0..self.dim {
                let e = idx[var];
                if e < 2 {
                    continue;
                }
                let mut nidx = idx.clone();
                nidx[var] = e - 2;
                let factor = Rational::from_int((e as i64) * (e as i64 - 1));
                Self::insert_add(&mut terms, nidx, c * &factor);
            }
        }
        MultiPoly {
            dim: self.dim,
            degree,
            terms,
        }
    }

    /// Multiplies by `x_1^2 + ... + x_m^2`.
    pub fn mul_radius_sq(&self) -> MultiPoly {
        let degree = self.degree + 2;
        let mut terms = BTreeMap::new();
        for (idx, c) in &self.terms {
            for var in 0..self.dim {
                let mut nidx = idx.clone();
                nidx[var] += 2;
                Self::insert_add(&mut terms, nidx, c.clone());
            }
        }
        MultiPoly {
            dim: self.dim,
            degree,
            terms,
        }
    }

    /// Exact division by `x_1^2 + ... + x_m^2`; `None` when not divisible.
    ///
    /// Long division against the single divisor whose lex-leading monomial is
    /// `x_1^2`: any term not reducible by the leading monomial lands in the
    /// remainder, and remainder terms can never cancel later (their lex order
    /// strictly decreases), so the first such term proves indivisibility.
    pub fn div_exact_radius_sq(&self) -> Option<MultiPoly> {
        if self.is_zero() {
            return Some(MultiPoly::zero(self.dim, self.degree.saturating_sub(2)));
        }
        if self.degree < 2 {
            return None;
        }
        let mut rem = self.terms.clone();
        let mut quot: BTreeMap<MultiIndex, Rational> = BTreeMap::new();
        while let Some((idx, c)) = rem.iter().next_back().map(|(i, c)| (i.clone(), c.clone())) {
            // lex-leading term of the remainder
            if idx[0] < 2 {
                return None;
            }
            let mut qidx = idx.clone();
            qidx[0] -= 2;
            // rem -= c * x^qidx * (x_1^2 + ... + x_m^2)
            for var in 0..self.dim {
                let mut t = qidx.clone();
                t[var] += 2;
                Self::insert_add(&mut rem, t, -&c);
            }
            Self::insert_add(&mut quot, qidx, c);
        }
        Some(MultiPoly {
            dim: self.dim,
            degree: self.degree - 2,
            terms: quot,
        })
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0[deg {}]", self.degree);
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, c)| {
                let vars: String = idx
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| format!("*x{}^{}", i + 1, e))
                    .collect();
                format!("({c}){vars}")
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn homogeneity_enforced() {
        let bad = MultiPoly::from_terms(
            2,
            vec![(vec![1, 0], q(1, 1)), (vec![2, 0], q(1, 1))],
        );
        assert!(matches!(bad, Err(AlgebraError::Inhomogeneous(_, _))));
    }

    #[test]
    fn cancellation_drops_terms() {
        let x = MultiPoly::var(2, 0);
        let diff = x.sub(&x).unwrap();
        assert!(diff.is_zero());
        assert_eq!(diff.degree(), 1);
    }

    #[test]
    fn mul_and_partial() {
        // (x1 + x2)^2 = x1^2 + 2 x1 x2 + x2^2
        let s = MultiPoly::var(2, 0).add(&MultiPoly::var(2, 1)).unwrap();
        let sq = s.mul(&s);
        assert_eq!(sq.num_terms(), 3);
        // d/dx1 = 2 x1 + 2 x2
        let d = sq.partial(0);
        assert_eq!(d, s.scale(&q(2, 1)));
    }

    #[test]
    fn laplace_of_radius_sq() {
        let r2 = MultiPoly::radius_sq(3);
        let lap = r2.laplace();
        assert_eq!(lap, MultiPoly::constant(3, q(6, 1)));
    }

    #[test]
    fn exact_division_by_radius_sq() {
        let r2 = MultiPoly::radius_sq(2);
        let x = MultiPoly::var(2, 0);
        let p = x.mul(&r2);
        assert_eq!(p.div_exact_radius_sq().unwrap(), x);
        // x1^3 + x1 x2^2 = x1 * r^2
        let p2 = MultiPoly::from_terms(
            2,
            vec![(vec![3, 0], q(1, 1)), (vec![1, 2], q(1, 1))],
        )
        .unwrap();
        assert_eq!(p2.div_exact_radius_sq().unwrap(), x);
        // x1^2 alone is not divisible (m = 2)
        let p3 = MultiPoly::from_terms(2, vec![(vec![2, 0], q(1, 1))]).unwrap();
        assert!(p3.div_exact_radius_sq().is_none());
        // but for m = 1, x1^2 = r^2
        let p4 = MultiPoly::from_terms(1, vec![(vec![2], q(1, 1))]).unwrap();
        assert_eq!(p4.div_exact_radius_sq().unwrap(), MultiPoly::one(1));
    }

    #[test]
    fn euler_contraction_matches_definition() {
        let p = MultiPoly::from_terms(
            3,
            vec![(vec![2, 1, 0], q(3, 2)), (vec![0, 1, 2], q(-1, 1))],
        )
        .unwrap();
        // manual: sum_i x_i dP/dx_i
        let mut manual = MultiPoly::zero(3, 3);
        for i in 0..3 {
            manual = manual.add(&p.partial(i).mul_var(i)).unwrap();
        }
        assert_eq!(p.euler_contraction(), manual);
    }
}
