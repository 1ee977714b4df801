//! Higher-order radial projection maps into spheres and their exactly
//! verified properties.
//!
//! The order-1 map is `x -> x/r`. Order `ell` is built recursively: with
//! `y_i = x_i/r` and a previous-level component `u_I`,
//! `u_{I,j} = C * (y_j u_I - r (du_I/dx_j) / (ell+m-3))`,
//! `C = sqrt((ell+m-3)/(2 ell+m-4))`.
//! The new index `j` is attached to both the multiplier and the derivative;
//! the property tests (unit norm, energy density, harmonicity, radial
//! orthogonality) pin this choice down — the alternative of reusing the
//! first index fails them already at order 2.
//!
//! `C` is irrational in general, so a map stores raw components with the
//! product of the `C` factors tracked as an exact squared rational
//! `norm_factor_sq`; every verified identity is even in that factor.

use serde::Serialize;

use crate::error::ConstructError;
use crate::exec;
use crate::field::RadialScalar;
use crate::rational::Rational;
use crate::report::{ResidualEntry, ResidualReport};

/// Energy-density coefficient `ell (ell + m - 2)` of the order-`ell` map.
pub fn energy_coefficient(ell: usize, m: usize) -> i64 {
    let (l, m) = (ell as i64, m as i64);
    l * (l + m - 2)
}

/// An `m^ell`-component family of radial fields representing a map from
/// punctured `R^m` into the unit sphere of dimension `m^ell - 1`.
#[derive(Clone, Debug)]
pub struct TensorMap {
    m: usize,
    ell: usize,
    /// Exact square of the accumulated normalization factor.
    norm_factor_sq: Rational,
    /// Raw components; the map's components are `sqrt(norm_factor_sq)` times
    /// these.
    components: Vec<RadialScalar>,
}

impl TensorMap {
    /// The radial projection `x -> x/r`.
    pub fn radial_projection(m: usize) -> Result<TensorMap, ConstructError> {
        if m == 0 {
            return Err(ConstructError::ZeroDimension);
        }
        Ok(TensorMap {
            m,
            ell: 1,
            norm_factor_sq: Rational::one(),
            components: (0..m)
                .map(|i| RadialScalar::monomial_over_r(m, i, 1))
                .collect(),
        })
    }

    /// Builds the order-`ell` map in dimension `m`; requires `ell <= m`.
    pub fn nakauchi(ell: usize, m: usize) -> Result<TensorMap, ConstructError> {
        if ell == 0 {
            return Err(ConstructError::ZeroOrder);
        }
        if ell > m {
            return Err(ConstructError::OrderExceedsDimension { ell, m });
        }
        let mut map = TensorMap::radial_projection(m)?;
        for level in 2..=ell {
            map = map.extend_one_level(level)?;
        }
        Ok(map)
    }

    fn extend_one_level(&self, level: usize) -> Result<TensorMap, ConstructError> {
        let m = self.m;
        let denom = level as i64 + m as i64 - 3;
        let c_sq_denom = 2 * level as i64 + m as i64 - 4;
        if denom == 0 || c_sq_denom == 0 {
            return Err(ConstructError::ZeroDenominator { level, m });
        }
        let c_sq = Rational::new(denom, c_sq_denom);
        let inv_denom = Rational::new(1, denom);
        let prev = &self.components;
        let components = exec::map_range(prev.len() * m, |flat| {
            let (p, j) = (flat / m, flat % m);
            let base = &prev[p];
            let lead = base.mul(&RadialScalar::monomial_over_r(m, j, 1));
            let tail = base.derive(j).mul_r_power(1).scale(&inv_denom);
            lead.sub(&tail)
                .expect("recursion terms share homogeneity degree zero")
        });
        Ok(TensorMap {
            m,
            ell: level,
            norm_factor_sq: &self.norm_factor_sq * &c_sq,
            components,
        })
    }

    /// Assembles a map from explicit parts; intended for tests and for
    /// deliberately malformed inputs (the verification routines only iterate
    /// components, so the count need not be `m^ell`).
    pub fn from_raw_parts(
        m: usize,
        ell: usize,
        norm_factor_sq: Rational,
        components: Vec<RadialScalar>,
    ) -> TensorMap {
        TensorMap {
            m,
            ell,
            norm_factor_sq,
            components,
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn norm_factor_sq(&self) -> &Rational {
        &self.norm_factor_sq
    }

    /// The map's normalization factor, rounded once.
    pub fn norm_factor(&self) -> f64 {
        self.norm_factor_sq.to_f64().sqrt()
    }

    pub fn raw_components(&self) -> &[RadialScalar] {
        &self.components
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    /// Flat position of a 1-based multi-index `(i_1, ..., i_ell)`, first
    /// index most significant.
    pub fn flat_index(&self, idx: &[usize]) -> usize {
        assert_eq!(idx.len(), self.ell, "index length must equal the order");
        idx.iter().fold(0, |acc, &i| {
            assert!((1..=self.m).contains(&i), "index out of range");
            acc * self.m + (i - 1)
        })
    }

    /// 1-based multi-index of a flat position.
    pub fn multi_index(&self, mut flat: usize) -> Vec<usize> {
        let mut idx = vec![0usize; self.ell];
        for slot in idx.iter_mut().rev() {
            *slot = flat % self.m + 1;
            flat /= self.m;
        }
        idx
    }

    pub fn index_label(&self, flat: usize) -> String {
        let idx = self.multi_index(flat);
        let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        format!("({})", parts.join(","))
    }

    pub fn raw_component(&self, idx: &[usize]) -> &RadialScalar {
        &self.components[self.flat_index(idx)]
    }

    /// Numeric value of the full component (normalization included).
    pub fn eval_component(&self, flat: usize, x: &[f64]) -> Result<f64, crate::error::EvalError> {
        Ok(self.norm_factor() * self.components[flat].eval(x)?)
    }

    /// Returns the map scaled by a rational constant (which breaks unit norm
    /// unless the constant is +/-1).
    pub fn scale(&self, c: &Rational) -> TensorMap {
        TensorMap {
            m: self.m,
            ell: self.ell,
            norm_factor_sq: self.norm_factor_sq.clone(),
            components: self.components.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Exact check that the squared norm of the map is identically 1.
    pub fn verify_unit_norm(&self) -> ResidualReport {
        let partials = exec::map_slice(&self.components, |f| f.mul(f));
        let mut sum = RadialScalar::zero(self.m);
        for p in &partials {
            sum = sum.add(p).expect("squared components share degree");
        }
        let total = sum.scale(&self.norm_factor_sq);
        let residual = total
            .sub(&RadialScalar::one(self.m))
            .expect("norm residual is degree zero");
        let entry = ResidualEntry::exact_with_detail(
            "sum of squared components - 1",
            residual.is_zero(),
            format!("residual = {residual}"),
        );
        ResidualReport::symbolic("unit_norm", vec![entry])
    }

    /// The exact energy density `|grad u|^2` summed over all components.
    pub fn energy_density(&self) -> RadialScalar {
        let partials = exec::map_slice(&self.components, |f| f.gradient_dot(f));
        let mut sum = RadialScalar::zero(self.m);
        for p in &partials {
            sum = sum.add(p).expect("gradient squares share degree");
        }
        sum.scale(&self.norm_factor_sq)
    }

    /// Exact check `|grad u|^2 = ell (ell+m-2) / r^2`.
    pub fn verify_energy_density(&self) -> ResidualReport {
        let expected = RadialScalar::inverse_radial_power(self.m, 2)
            .scale(&Rational::from_int(energy_coefficient(self.ell, self.m)));
        let actual = self.energy_density();
        let residual = actual.sub(&expected).expect("densities share degree");
        let entry = ResidualEntry::exact_with_detail(
            "energy density - expected",
            residual.is_zero(),
            format!("computed = {actual}"),
        );
        ResidualReport::symbolic("energy_density", vec![entry])
    }

    /// Exact componentwise check of the sphere-target harmonic equation
    /// `lap c + (ell (ell+m-2) / r^2) c = 0`.
    pub fn verify_harmonicity(&self) -> ResidualReport {
        let coeff = Rational::from_int(energy_coefficient(self.ell, self.m));
        let density = RadialScalar::inverse_radial_power(self.m, 2).scale(&coeff);
        let entries = exec::map_range(self.components.len(), |flat| {
            let c = &self.components[flat];
            let residual = c
                .laplacian()
                .add(&density.mul(c))
                .expect("harmonic residual terms share degree");
            ResidualEntry::exact(self.index_label(flat), residual.is_zero())
        });
        ResidualReport::symbolic("harmonicity", entries)
    }

    /// Exact componentwise check of radial orthogonality
    /// `sum_j (x_j/r) dc/dx_j = 0`.
    pub fn verify_radial_orthogonality(&self) -> ResidualReport {
        let entries = exec::map_range(self.components.len(), |flat| {
            let residual = self.components[flat].radial_directional();
            ResidualEntry::exact(self.index_label(flat), residual.is_zero())
        });
        ResidualReport::symbolic("radial_orthogonality", entries)
    }

    /// Componentwise exact `lap^k` of the raw components.
    pub fn iterated_laplacian(&self, k: usize) -> Vec<RadialScalar> {
        exec::map_slice(&self.components, |f| {
            let mut g = f.clone();
            for _ in 0..k {
                g = g.laplacian();
            }
            g
        })
    }

    /// Exact check that `lap^k` equals the closed-form coefficient times
    /// `u / r^(2k)` on every component.
    pub fn verify_iterated_laplacian(&self, k: usize) -> ResidualReport {
        let formula = iterated_laplacian_coefficient(self.ell, self.m, k);
        let entries = exec::map_range(self.components.len(), |flat| {
            let c = &self.components[flat];
            let mut lap = c.clone();
            for _ in 0..k {
                lap = lap.laplacian();
            }
            let expected = c.mul_r_power(-(2 * k as i64)).scale(&formula.coefficient);
            let residual = lap.sub(&expected).expect("laplacian terms share degree");
            ResidualEntry::exact(self.index_label(flat), residual.is_zero())
        });
        ResidualReport::symbolic(format!("iterated_laplacian_k{k}"), entries)
    }
}

/// Closed-form coefficient of the iterated Laplacian of the order-`ell` map.
#[derive(Clone, Debug, Serialize)]
pub struct LaplacianFormula {
    pub ell: usize,
    pub m: usize,
    pub k: usize,
    /// `prod_{s=1..k} (2s + ell - 2) * prod_{j=1..k} (2j - ell - m)`.
    pub coefficient: Rational,
    /// The result is `coefficient * u / r^radial_exponent`.
    pub radial_exponent: u32,
}

/// `lap^k u = prod_{s=1..k}(2s+ell-2) prod_{j=1..k}(2j-ell-m) u / r^(2k)`.
pub fn iterated_laplacian_coefficient(ell: usize, m: usize, k: usize) -> LaplacianFormula {
    let (l, mi) = (ell as i64, m as i64);
    let mut coeff = Rational::one();
    for s in 1..=k as i64 {
        coeff *= &Rational::from_int(2 * s + l - 2);
    }
    for j in 1..=k as i64 {
        coeff *= &Rational::from_int(2 * j - l - mi);
    }
    LaplacianFormula {
        ell,
        m,
        k,
        coefficient: coeff,
        radial_exponent: 2 * k as u32,
    }
}

/// Independent closed form for the radial projection (`ell = 1`):
/// `lap^k (x/r) = prod_{j=1..k} (2j-1-m)(2j-1) (x/r) / r^(2k)`.
pub fn projection_laplacian_coefficient(m: usize, k: usize) -> Rational {
    let mi = m as i64;
    let mut coeff = Rational::one();
    for j in 1..=k as i64 {
        coeff *= &Rational::from_int((2 * j - 1 - mi) * (2 * j - 1));
    }
    coeff
}

/// Coefficient of `lap(1/r^s) = s(s+2-m)/r^(s+2)`.
pub fn radial_power_laplacian_coefficient(s: u32, m: usize) -> Rational {
    let s = s as i64;
    Rational::from_int(s * (s + 2 - m as i64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::RadialScalar;
    use crate::multipoly::MultiPoly;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn radial_projection_basics() {
        let u = TensorMap::radial_projection(2).unwrap();
        assert_eq!(u.num_components(), 2);
        assert!(u.verify_unit_norm().pass);
        // m = 1: single sign component, still unit norm
        let u1 = TensorMap::radial_projection(1).unwrap();
        assert!(u1.verify_unit_norm().pass);
    }

    #[test]
    fn order_exceeding_dimension_is_rejected() {
        let err = TensorMap::nakauchi(3, 2).unwrap_err();
        assert!(matches!(err, ConstructError::OrderExceedsDimension { .. }));
    }

    #[test]
    fn order_two_normalization() {
        let u = TensorMap::nakauchi(2, 2).unwrap();
        assert_eq!(u.norm_factor_sq(), &q(1, 2));
        // component (1,1) evaluates to 1/sqrt(2) at (1,0)
        let v = u.eval_component(u.flat_index(&[1, 1]), &[1.0, 0.0]).unwrap();
        assert_eq!(v, std::f64::consts::FRAC_1_SQRT_2);
        assert!(u.verify_unit_norm().pass);
    }

    #[test]
    fn scaled_map_fails_unit_norm() {
        let u = TensorMap::radial_projection(3).unwrap().scale(&q(2, 1));
        assert!(!u.verify_unit_norm().pass);
    }

    #[test]
    fn energy_density_examples() {
        // |grad u^(1)|^2 = 2/r^2 in m = 3
        let u = TensorMap::radial_projection(3).unwrap();
        let e = u.energy_density();
        assert_eq!(e, RadialScalar::inverse_radial_power(3, 2).scale(&q(2, 1)));
        // |grad u^(2)|^2 = 4/r^2 in m = 2, 6/r^2 in m = 3
        for (m, c) in [(2usize, 4i64), (3, 6)] {
            let u = TensorMap::nakauchi(2, m).unwrap();
            assert_eq!(
                u.energy_density(),
                RadialScalar::inverse_radial_power(m, 2).scale(&q(c, 1)),
                "m = {m}"
            );
        }
    }

    #[test]
    fn harmonicity_holds_and_detects_failure() {
        assert!(TensorMap::nakauchi(2, 2).unwrap().verify_harmonicity().pass);
        // x1^2/r^2 declared as an order-2 family in m = 2 is not harmonic
        let bad_poly = MultiPoly::from_terms(2, vec![(vec![2, 0], q(1, 1))]).unwrap();
        let bad = TensorMap::from_raw_parts(
            2,
            2,
            Rational::one(),
            vec![RadialScalar::new(bad_poly, 2)],
        );
        assert!(!bad.verify_harmonicity().pass);
    }

    #[test]
    fn radial_orthogonality_holds_and_detects_failure() {
        assert!(TensorMap::radial_projection(2)
            .unwrap()
            .verify_radial_orthogonality()
            .pass);
        assert!(TensorMap::nakauchi(3, 3)
            .unwrap()
            .verify_radial_orthogonality()
            .pass);
        // x1/r^2 has homogeneity -1: fails
        let bad = TensorMap::from_raw_parts(
            2,
            1,
            Rational::one(),
            vec![RadialScalar::monomial_over_r(2, 0, 2)],
        );
        assert!(!bad.verify_radial_orthogonality().pass);
    }

    #[test]
    fn iterated_laplacian_formula_spots() {
        assert_eq!(iterated_laplacian_coefficient(1, 3, 1).coefficient, q(-2, 1));
        assert_eq!(iterated_laplacian_coefficient(2, 3, 1).coefficient, q(-6, 1));
        assert_eq!(iterated_laplacian_coefficient(1, 3, 2).coefficient, q(0, 1));
        assert_eq!(iterated_laplacian_coefficient(1, 3, 1).radial_exponent, 2);
    }

    #[test]
    fn iterated_laplacian_symbolic_matches_formula() {
        // (u^(1), m=3, k=2) vanishes identically
        let u = TensorMap::radial_projection(3).unwrap();
        assert!(u.iterated_laplacian(2).iter().all(|f| f.is_zero()));
        // (u^(1), m=2, k=1) = -u/r^2
        let u = TensorMap::radial_projection(2).unwrap();
        let lap = u.iterated_laplacian(1);
        for (c, l) in u.raw_components().iter().zip(&lap) {
            assert_eq!(l, &c.mul_r_power(-2).scale(&q(-1, 1)));
        }
        // (u^(2), m=3, k=1) = -6 u / r^2
        let u = TensorMap::nakauchi(2, 3).unwrap();
        assert!(u.verify_iterated_laplacian(1).pass);
    }

    #[test]
    fn formula_reductions_agree_at_order_one() {
        for m in 1..=8 {
            for k in 1..=5 {
                assert_eq!(
                    iterated_laplacian_coefficient(1, m, k).coefficient,
                    projection_laplacian_coefficient(m, k),
                    "m={m} k={k}"
                );
            }
        }
    }

    #[test]
    fn radial_power_laplacian_spots() {
        assert_eq!(radial_power_laplacian_coefficient(1, 3), q(0, 1));
        assert_eq!(radial_power_laplacian_coefficient(2, 4), q(0, 1));
        assert_eq!(radial_power_laplacian_coefficient(4, 3), q(12, 1));
        // as a theorem against the symbolic engine
        for m in 1..=8usize {
            for s in 1..=8u32 {
                let f = RadialScalar::inverse_radial_power(m, s);
                let expected = RadialScalar::inverse_radial_power(m, s + 2)
                    .scale(&radial_power_laplacian_coefficient(s, m));
                assert_eq!(f.laplacian(), expected, "s={s} m={m}");
            }
        }
    }

    #[test]
    fn index_round_trip() {
        let u = TensorMap::nakauchi(3, 3).unwrap();
        for flat in [0, 5, 13, 26] {
            let idx = u.multi_index(flat);
            assert_eq!(u.flat_index(&idx), flat);
        }
        assert_eq!(u.index_label(0), "(1,1,1)");
        assert_eq!(u.index_label(26), "(3,3,3)");
    }
}
