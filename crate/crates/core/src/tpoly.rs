//! Polynomials in the deformation parameter `t = sin^2(angle)` whose
//! coefficients are exact radial fields (scalars or coordinate vectors).
//!
//! The deformed map `q = (sin * u, cos)` stays analyzable in exact rational
//! arithmetic because one odd power of `sin` factors out of every block
//! expression and all remaining trigonometric content appears as powers of
//! `t`; scalar contractions over components contribute one `t` per pair of
//! block factors. This module supplies that bookkeeping.

use crate::field::{RadialScalar, RadialVector};
use crate::quadext::QuadExt;
use crate::rational::Rational;

/// Scalar field with polynomial dependence on `t`: `coeffs[j]` multiplies `t^j`.
#[derive(Clone, Debug)]
pub struct TScalar {
    dim: usize,
    coeffs: Vec<RadialScalar>,
}

impl TScalar {
    pub fn zero(dim: usize) -> Self {
        TScalar {
            dim,
            coeffs: Vec::new(),
        }
    }

    /// `field * t^power`.
    pub fn from_field(field: RadialScalar, power: usize) -> Self {
        let dim = field.dim();
        if field.is_zero() {
            return TScalar::zero(dim);
        }
        let mut coeffs = vec![RadialScalar::zero(dim); power];
        coeffs.push(field);
        TScalar { dim, coeffs }
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(RadialScalar::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RadialScalar::is_zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, j: usize) -> RadialScalar {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| RadialScalar::zero(self.dim))
    }

    pub fn coeffs(&self) -> &[RadialScalar] {
        &self.coeffs
    }

    pub fn add(&self, other: &TScalar) -> TScalar {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|j| {
                self.coeff(j)
                    .add(&other.coeff(j))
                    .expect("t-coefficients share homogeneity")
            })
            .collect();
        TScalar {
            dim: self.dim,
            coeffs,
        }
        .trim()
    }

    pub fn sub(&self, other: &TScalar) -> TScalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TScalar {
        TScalar {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(RadialScalar::neg).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> TScalar {
        TScalar {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|f| f.scale(c)).collect(),
        }
        .trim()
    }

    pub fn mul_field(&self, f: &RadialScalar) -> TScalar {
        TScalar {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|g| g.mul(f)).collect(),
        }
        .trim()
    }

    /// Product of two `t`-polynomials (convolution of coefficients).
    pub fn mul(&self, other: &TScalar) -> TScalar {
        if self.is_zero() || other.is_zero() {
            return TScalar::zero(self.dim);
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut coeffs = vec![RadialScalar::zero(self.dim); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j]
                    .add(&a.mul(b))
                    .expect("t-product coefficients share homogeneity");
            }
        }
        TScalar {
            dim: self.dim,
            coeffs,
        }
        .trim()
    }

    /// Componentwise Laplacian in `x` (acts on coefficients only).
    pub fn laplacian(&self) -> TScalar {
        TScalar {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(RadialScalar::laplacian).collect(),
        }
        .trim()
    }

    pub fn gradient(&self) -> TVector {
        TVector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(RadialVector::gradient).collect(),
        }
        .trim()
    }

    /// Evaluates `t` exactly in a quadratic extension; the result splits as
    /// `rational_part + surd_part * sqrt(d)` with both parts radial fields.
    pub fn eval_quadext(&self, t: &QuadExt) -> (RadialScalar, RadialScalar) {
        let d = Rational::from_int(t.radicand() as i64);
        let mut rat = RadialScalar::zero(self.dim);
        let mut surd = RadialScalar::zero(self.dim);
        for c in self.coeffs.iter().rev() {
            // (rat + surd sqrt(d)) * (a + b sqrt(d)) + c
            let new_rat = rat
                .scale(t.rational_part())
                .add(&surd.scale(&(t.surd_coefficient() * &d)))
                .and_then(|f| f.add(c))
                .expect("Horner terms share homogeneity");
            let new_surd = rat
                .scale(t.surd_coefficient())
                .add(&surd.scale(t.rational_part()))
                .expect("Horner terms share homogeneity");
            rat = new_rat;
            surd = new_surd;
        }
        (rat, surd)
    }

    /// Numeric evaluation at a floating `t` and a point.
    pub fn eval_f64(&self, t: f64, x: &[f64]) -> Result<f64, crate::error::EvalError> {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c.eval(x)?;
        }
        Ok(acc)
    }
}

/// Coordinate-vector field with polynomial dependence on `t`.
#[derive(Clone, Debug)]
pub struct TVector {
    dim: usize,
    coeffs: Vec<RadialVector>,
}

impl TVector {
    pub fn zero(dim: usize) -> Self {
        TVector {
            dim,
            coeffs: Vec::new(),
        }
    }

    pub fn from_vector(v: RadialVector, power: usize) -> Self {
        let dim = v.dim();
        if v.is_zero() {
            return TVector::zero(dim);
        }
        let mut coeffs = vec![RadialVector::zero(dim); power];
        coeffs.push(v);
        TVector { dim, coeffs }
    }

    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(RadialVector::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RadialVector::is_zero)
    }

    pub fn coeff(&self, j: usize) -> RadialVector {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| RadialVector::zero(self.dim))
    }

    pub fn add(&self, other: &TVector) -> TVector {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|j| {
                self.coeff(j)
                    .add(&other.coeff(j))
                    .expect("t-coefficients share homogeneity")
            })
            .collect();
        TVector {
            dim: self.dim,
            coeffs,
        }
        .trim()
    }

    /// `t`-scalar times a plain vector field.
    pub fn scalar_times_vector(s: &TScalar, v: &RadialVector) -> TVector {
        TVector {
            dim: s.dim(),
            coeffs: s.coeffs().iter().map(|c| v.scale_field(c)).collect(),
        }
        .trim()
    }

    pub fn mul_field(&self, f: &RadialScalar) -> TVector {
        TVector {
            dim: self.dim,
            coeffs: self.coeffs.iter().map(|v| v.scale_field(f)).collect(),
        }
        .trim()
    }

    pub fn divergence(&self) -> TScalar {
        TScalar {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .map(|v| v.divergence().expect("divergence terms share homogeneity"))
                .collect(),
        }
        .trim()
    }

    /// Contraction with a plain vector field.
    pub fn dot_vector(&self, v: &RadialVector) -> TScalar {
        TScalar {
            dim: self.dim,
            coeffs: self
                .coeffs
                .iter()
                .map(|w| w.dot(v).expect("dot terms share homogeneity"))
                .collect(),
        }
        .trim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadext::QuadExt;

    fn x_over_r(dim: usize, var: usize) -> RadialScalar {
        RadialScalar::monomial_over_r(dim, var, 1)
    }

    #[test]
    fn polynomial_structure() {
        let f = TScalar::from_field(x_over_r(2, 0), 1); // t * x1/r
        let g = TScalar::from_field(x_over_r(2, 0), 0); // x1/r
        let sum = f.add(&g);
        assert_eq!(sum.degree(), Some(1));
        let prod = f.mul(&f); // t^2 * x1^2/r^2
        assert_eq!(prod.degree(), Some(2));
        assert!(prod.coeff(0).is_zero() && prod.coeff(1).is_zero());
        assert!(f.sub(&f).is_zero());
    }

    #[test]
    fn quadext_horner() {
        // f(t) = x1/r^3 + t * x2/r^3 at t = 1 - sqrt(2):
        // rational part (x1+x2)/r^3, surd part -x2/r^3
        let a = RadialScalar::monomial_over_r(2, 0, 3);
        let b = RadialScalar::monomial_over_r(2, 1, 3);
        let f = TScalar::from_field(a.clone(), 0).add(&TScalar::from_field(b.clone(), 1));
        let t = QuadExt::new(Rational::one(), Rational::from_int(-1), 2);
        let (rat, surd) = f.eval_quadext(&t);
        assert_eq!(rat, a.add(&b).unwrap());
        assert_eq!(surd, b.neg());
    }

    #[test]
    fn gradient_divergence_compose() {
        // div(grad(t * 1/r^2)) = t * lap(1/r^2)
        let f = TScalar::from_field(RadialScalar::inverse_radial_power(3, 2), 1);
        let lap1 = f.gradient().divergence();
        let lap2 = f.laplacian();
        assert!(lap1.sub(&lap2).is_zero());
    }
}
