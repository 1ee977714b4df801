//! Solving and classifying the deformation-angle constraints.
//!
//! The biharmonic constraint is linear in `t = sin^2(angle)` and has the
//! closed rational solution `t = (l(l+m-2) + 2m - 8) / (2 l(l+m-2))`; the
//! triharmonic constraint is the quadratic
//! `3 t^2 A^3 - 2 t A^2 [4 + (m+l-6)(4+l) + A] + l(l+2)(l+4)(m+l-2)(m+l-4)(m+l-6)`
//! with `A = l(m+l-2)`, whose roots live in quadratic extensions. A root is
//! admissible when `0 < t < 1` strictly — the angle must lie in the open
//! interval `(0, pi/2)` — and every membership test here is exact.

use serde::Serialize;

use crate::error::SolveError;
use crate::exec;
use crate::quadext::QuadExt;
use crate::rational::Rational;

/// Which deformation angle a parameter refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleKind {
    /// Biharmonic deformation angle.
    Alpha,
    /// Triharmonic deformation angle.
    Gamma,
    /// Reduced-energy deformation angle of the eigenmap construction.
    Delta,
}

/// Exact value of `sin^2(angle)` for a candidate deformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationParameter {
    pub value: QuadExt,
    pub kind: AngleKind,
}

impl DeformationParameter {
    pub fn new(value: QuadExt, kind: AngleKind) -> Self {
        DeformationParameter { value, kind }
    }

    pub fn rational(value: Rational, kind: AngleKind) -> Self {
        DeformationParameter {
            value: QuadExt::from_rational(value),
            kind,
        }
    }

    /// Admissible iff `0 < sin^2 < 1` strictly.
    pub fn admissible(&self) -> bool {
        self.value.in_open_unit_interval()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

impl Serialize for DeformationParameter {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("DeformationParameter", 3)?;
        st.serialize_field("exact", &self.value.to_string())?;
        st.serialize_field("approx", &self.value.to_f64())?;
        st.serialize_field("admissible", &self.admissible())?;
        st.end()
    }
}

/// Univariate polynomial in `t = sin^2(angle)`, exact coefficients in
/// ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConstraintPoly {
    /// `coeffs[k]` multiplies `t^k`; trailing zeros trimmed.
    pub coeffs: Vec<Rational>,
}

impl ConstraintPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        ConstraintPoly { coeffs }
    }

    pub fn zero() -> Self {
        ConstraintPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval_rational(&self, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn eval_quadext(&self, t: &QuadExt) -> QuadExt {
        let mut acc = QuadExt::from_rational(Rational::zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(t).add_rational(c);
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> ConstraintPoly {
        ConstraintPoly::new(self.coeffs.iter().map(|q| q * c).collect())
    }

    /// Returns `k` with `self = k * other` exactly, if any (both nonzero).
    pub fn proportionality(&self, other: &ConstraintPoly) -> Option<Rational> {
        if self.is_zero() || other.is_zero() || self.coeffs.len() != other.coeffs.len() {
            return None;
        }
        let k = &self.coeffs[self.coeffs.len() - 1] / &other.coeffs[other.coeffs.len() - 1];
        (self == &other.scale(&k)).then_some(k)
    }

    /// Exact roots of a degree-2 (or degree-1) polynomial.
    pub fn roots(&self) -> Result<QuadraticRoots, SolveError> {
        match self.degree() {
            Some(2) => {
                let (c2, c1, c0) = (self.coeff(2), self.coeff(1), self.coeff(0));
                let disc = &c1 * &c1 - &(&c0 * &c2) * &Rational::from_int(4);
                let sq = QuadExt::sqrt_rational(&disc).ok_or(SolveError::NegativeDiscriminant)?;
                let inv = (&c2 * &Rational::from_int(2)).recip();
                let minus = sq.neg().add_rational(&(-&c1)).scale(&inv);
                let plus = sq.add_rational(&(-&c1)).scale(&inv);
                // orient so "minus" is the smaller root regardless of c2's sign
                if c2.signum() > 0 {
                    Ok(QuadraticRoots::Pair { minus, plus })
                } else {
                    Ok(QuadraticRoots::Pair {
                        minus: plus,
                        plus: minus,
                    })
                }
            }
            Some(1) => Ok(QuadraticRoots::Single(-&self.coeff(0) / self.coeff(1))),
            _ => Ok(QuadraticRoots::Degenerate),
        }
    }
}

impl std::fmt::Display for ConstraintPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})*t"),
                _ => format!("({c})*t^{k}"),
            })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// Root set of a constraint polynomial.
#[derive(Clone, Debug)]
pub enum QuadraticRoots {
    /// Quadratic with real roots, smaller first.
    Pair { minus: QuadExt, plus: QuadExt },
    /// Linear constraint.
    Single(Rational),
    /// Constant or identically zero polynomial: no isolated roots.
    Degenerate,
}

/// Which closed-form branch solves the constraint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    None,
    Minus,
    Plus,
    Both,
    /// Linear (biharmonic) constraints have a single root.
    Single,
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Branch::None => "none",
            Branch::Minus => "minus",
            Branch::Plus => "plus",
            Branch::Both => "both",
            Branch::Single => "single",
        };
        write!(f, "{s}")
    }
}

/// Which higher-order constraint a record classifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstraintKind {
    Biharmonic,
    Triharmonic,
}

/// Outcome of classifying one `(ell, m)` pair.
#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityRecord {
    pub ell: usize,
    pub m: usize,
    pub kind: ConstraintKind,
    pub equation_solvable: bool,
    pub which_branch: Branch,
    /// All real roots, admissible or not (minus then plus for quadratics).
    pub roots: Vec<DeformationParameter>,
    /// Whether the underlying map exists (`ell <= m`).
    pub map_exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn energy_coefficient(ell: usize, m: usize) -> i64 {
    let (l, m) = (ell as i64, m as i64);
    l * (l + m - 2)
}

/// Exact `sin^2(alpha)` of the biharmonic constraint:
/// `(l(l+m-2) + 2m - 8) / (2 l(l+m-2))`. Admissibility is not judged here.
pub fn biharmonic_t(ell: usize, m: usize) -> Result<Rational, SolveError> {
    let a = energy_coefficient(ell, m);
    if a == 0 {
        return Err(SolveError::DegeneratePair { ell, m });
    }
    Ok(Rational::new(a + 2 * m as i64 - 8, 2 * a))
}

/// The linear biharmonic constraint polynomial `2 A^2 t - A^2 - (2m-8) A`
/// whose root is [`biharmonic_t`]; zero polynomial at the degenerate pair.
pub fn biharmonic_constraint(ell: usize, m: usize) -> ConstraintPoly {
    let a = energy_coefficient(ell, m);
    let m = m as i64;
    ConstraintPoly::new(vec![
        Rational::from_int(-a * a - (2 * m - 8) * a),
        Rational::from_int(2 * a * a),
    ])
}

/// Classifies the biharmonic constraint at `(ell, m)`.
pub fn biharmonic_admissible(ell: usize, m: usize) -> AdmissibilityRecord {
    let map_exists = ell <= m;
    match biharmonic_t(ell, m) {
        Ok(t) => {
            let p = DeformationParameter::rational(t, AngleKind::Alpha);
            let solvable = p.admissible();
            AdmissibilityRecord {
                ell,
                m,
                kind: ConstraintKind::Biharmonic,
                equation_solvable: solvable,
                which_branch: if solvable { Branch::Single } else { Branch::None },
                roots: vec![p],
                map_exists,
                note: None,
            }
        }
        Err(e) => AdmissibilityRecord {
            ell,
            m,
            kind: ConstraintKind::Biharmonic,
            equation_solvable: false,
            which_branch: Branch::None,
            roots: Vec::new(),
            map_exists,
            note: Some(e.to_string()),
        },
    }
}

/// The quadratic triharmonic constraint in `t = sin^2(gamma)`:
/// `3 A^3 t^2 - 2 A^2 [4 + (m+l-6)(4+l) + A] t + l(l+2)(l+4)(m+l-2)(m+l-4)(m+l-6)`.
pub fn triharmonic_constraint(ell: usize, m: usize) -> ConstraintPoly {
    let (l, m) = (ell as i64, m as i64);
    let a = l * (m + l - 2);
    let c2 = 3 * a * a * a;
    let c1 = -2 * a * a * (4 + (m + l - 6) * (4 + l) + a);
    let c0 = l * (l + 2) * (l + 4) * (m + l - 2) * (m + l - 4) * (m + l - 6);
    ConstraintPoly::new(vec![
        Rational::from_int(c0),
        Rational::from_int(c1),
        Rational::from_int(c2),
    ])
}

/// Exact roots of the triharmonic constraint via the quadratic formula,
/// smaller root first.
pub fn triharmonic_roots(ell: usize, m: usize) -> Result<(QuadExt, QuadExt), SolveError> {
    if energy_coefficient(ell, m) == 0 {
        return Err(SolveError::DegeneratePair { ell, m });
    }
    match triharmonic_constraint(ell, m).roots()? {
        QuadraticRoots::Pair { minus, plus } => Ok((minus, plus)),
        _ => Err(SolveError::DegeneratePair { ell, m }),
    }
}

/// The same two roots from the printed closed form
/// `t = 2/3 + 4(m-5)/(3A) -/+ (1/3) sqrt(1 + 2(8-m)/A - 8(m^2-10m+22)/A^2)`;
/// an independent route kept for cross-checking against [`triharmonic_roots`].
pub fn triharmonic_roots_closed_form(ell: usize, m: usize) -> Result<(QuadExt, QuadExt), SolveError> {
    let a = energy_coefficient(ell, m);
    if a == 0 {
        return Err(SolveError::DegeneratePair { ell, m });
    }
    let mi = m as i64;
    let a_q = Rational::from_int(a);
    let center = Rational::new(2, 3) + Rational::from_int(4 * (mi - 5)) / (Rational::from_int(3) * &a_q);
    let radicand = Rational::one() + Rational::from_int(2 * (8 - mi)) / a_q.clone()
        - Rational::from_int(8 * (mi * mi - 10 * mi + 22)) / (&a_q * &a_q);
    let sq = QuadExt::sqrt_rational(&radicand).ok_or(SolveError::NegativeDiscriminant)?;
    let third = Rational::new(1, 3);
    let minus = sq.neg().scale(&third).add_rational(&center);
    let plus = sq.scale(&third).add_rational(&center);
    Ok((minus, plus))
}

/// Classifies the triharmonic constraint at `(ell, m)`, recording which
/// branch (if any) lands strictly inside `(0, 1)`.
pub fn triharmonic_admissible(ell: usize, m: usize) -> AdmissibilityRecord {
    let map_exists = ell <= m;
    let base = AdmissibilityRecord {
        ell,
        m,
        kind: ConstraintKind::Triharmonic,
        equation_solvable: false,
        which_branch: Branch::None,
        roots: Vec::new(),
        map_exists,
        note: None,
    };
    match triharmonic_roots(ell, m) {
        Ok((minus, plus)) => {
            let pm = DeformationParameter::new(minus, AngleKind::Gamma);
            let pp = DeformationParameter::new(plus, AngleKind::Gamma);
            let (am, ap) = (pm.admissible(), pp.admissible());
            AdmissibilityRecord {
                equation_solvable: am || ap,
                which_branch: match (am, ap) {
                    (true, true) => Branch::Both,
                    (true, false) => Branch::Minus,
                    (false, true) => Branch::Plus,
                    (false, false) => Branch::None,
                },
                roots: vec![pm, pp],
                ..base
            }
        }
        Err(e) => AdmissibilityRecord {
            note: Some(e.to_string()),
            ..base
        },
    }
}

/// Full scan over `1 <= ell <= ell_max`, `1 <= m <= m_max`, lexicographic
/// output order. With `require_map` only pairs `ell <= m` are kept.
pub fn enumerate_admissible(
    kind: ConstraintKind,
    ell_max: usize,
    m_max: usize,
    require_map: bool,
) -> Vec<AdmissibilityRecord> {
    let pairs: Vec<(usize, usize)> = (1..=ell_max)
        .flat_map(|l| (1..=m_max).map(move |m| (l, m)))
        .filter(|&(l, m)| !require_map || l <= m)
        .collect();
    exec::map_slice(&pairs, |&(l, m)| match kind {
        ConstraintKind::Biharmonic => biharmonic_admissible(l, m),
        ConstraintKind::Triharmonic => triharmonic_admissible(l, m),
    })
}

/// Existence statement behind the corollaries: the smallest `ell <= m` whose
/// constraint is solvable, if any.
pub fn existence_for_dimension(kind: ConstraintKind, m: usize) -> Option<usize> {
    (1..=m).find(|&l| match kind {
        ConstraintKind::Biharmonic => biharmonic_admissible(l, m).equation_solvable,
        ConstraintKind::Triharmonic => triharmonic_admissible(l, m).equation_solvable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn biharmonic_spot_values() {
        assert_eq!(biharmonic_t(4, 4).unwrap(), q(1, 2));
        assert_eq!(biharmonic_t(2, 4).unwrap(), q(1, 2));
        assert_eq!(biharmonic_t(3, 1).unwrap(), q(0, 1));
        assert_eq!(biharmonic_t(2, 3).unwrap(), q(1, 3));
        assert!(matches!(
            biharmonic_t(1, 1),
            Err(SolveError::DegeneratePair { .. })
        ));
    }

    #[test]
    fn biharmonic_boundary_rejected() {
        // t = 1 at (1,7) is on the boundary: not admissible
        assert_eq!(biharmonic_t(1, 7).unwrap(), q(1, 1));
        let rec = biharmonic_admissible(1, 7);
        assert!(!rec.equation_solvable);
        // (2,3) solvable with t = 1/3
        let rec = biharmonic_admissible(2, 3);
        assert!(rec.equation_solvable);
        assert_eq!(rec.which_branch, Branch::Single);
        // (5,1): solvable but no map
        let rec = biharmonic_admissible(5, 1);
        assert!(rec.equation_solvable && !rec.map_exists);
    }

    #[test]
    fn triharmonic_constraint_spot_values() {
        let p = triharmonic_constraint(1, 6);
        assert_eq!(p.coeffs, vec![q(225, 1), q(-700, 1), q(375, 1)]);
        let p = triharmonic_constraint(1, 7);
        assert_eq!(p.coeffs, vec![q(720, 1), q(-1440, 1), q(648, 1)]);
        // constant-term sign check for (1,6): m+l-6 = 1 > 0
        assert_eq!(p.coeff(0).signum(), 1);
    }

    #[test]
    fn triharmonic_roots_match_closed_form() {
        for (l, m) in [(1, 6), (1, 7), (2, 3), (4, 4), (3, 26)] {
            let (a, b) = triharmonic_roots(l, m).unwrap();
            let (ca, cb) = triharmonic_roots_closed_form(l, m).unwrap();
            assert_eq!(a, ca, "({l},{m}) minus");
            assert_eq!(b, cb, "({l},{m}) plus");
        }
    }

    #[test]
    fn triharmonic_known_roots() {
        let (minus, plus) = triharmonic_roots(1, 6).unwrap();
        assert_eq!(minus.to_string(), "14/15-1/15*sqrt(61)");
        assert_eq!(plus.to_string(), "14/15+1/15*sqrt(61)");
        assert!(minus.in_open_unit_interval());
        assert!(!plus.in_open_unit_interval());
        let (minus, _) = triharmonic_roots(1, 7).unwrap();
        assert_eq!(minus.to_string(), "10/9-1/9*sqrt(10)");
        // rational pair at (4,4)
        let (minus, plus) = triharmonic_roots(4, 4).unwrap();
        assert_eq!(minus.as_rational(), Some(&q(2, 9)));
        assert_eq!(plus.as_rational(), Some(&q(1, 1)));
    }

    #[test]
    fn triharmonic_branch_attribution() {
        assert_eq!(triharmonic_admissible(2, 3).which_branch, Branch::Plus);
        assert_eq!(triharmonic_admissible(3, 26).which_branch, Branch::Minus);
        assert_eq!(triharmonic_admissible(1, 8).which_branch, Branch::None);
        assert_eq!(triharmonic_admissible(4, 3).which_branch, Branch::Both);
        assert!(!triharmonic_admissible(1, 5).equation_solvable);
    }

    #[test]
    fn roots_satisfy_constraint_exactly() {
        for (l, m) in [(1, 6), (1, 7), (2, 3), (3, 5), (4, 4), (5, 9)] {
            let p = triharmonic_constraint(l, m);
            let (minus, plus) = triharmonic_roots(l, m).unwrap();
            assert!(p.eval_quadext(&minus).is_zero(), "({l},{m}) minus");
            assert!(p.eval_quadext(&plus).is_zero(), "({l},{m}) plus");
        }
    }

    #[test]
    fn enumerate_is_lexicographic_and_filters() {
        let recs = enumerate_admissible(ConstraintKind::Biharmonic, 3, 4, true);
        let keys: Vec<(usize, usize)> = recs.iter().map(|r| (r.ell, r.m)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(recs.iter().all(|r| r.ell <= r.m));
        assert!(recs.iter().any(|r| r.ell == 2 && r.m == 3 && r.equation_solvable));
        // (1,3) enumerates as not solvable
        assert!(recs
            .iter()
            .any(|r| r.ell == 1 && r.m == 3 && !r.equation_solvable));
    }

    #[test]
    fn proportionality_detects_multiples() {
        let p = triharmonic_constraint(1, 6);
        let scaled = p.scale(&q(-3, 7));
        assert_eq!(scaled.proportionality(&p), Some(q(-3, 7)));
        assert_eq!(p.proportionality(&triharmonic_constraint(1, 7)), None);
    }
}
