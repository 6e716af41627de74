//! Membership certificates for `M_w(Γ₀(2))`.
//!
//! The graded ring is generated by `G₂ = 2E₂(2τ) − E₂(τ)` (weight 2) and the
//! classical `E₄` (weight 4), both with constant term 1. A series is
//! certified by solving for its coordinates on the first `dim` coefficients
//! and then matching every further known coefficient, at least
//! `max(4 × Sturm bound, 20)` of them. Only the q-expansion at `∞` is
//! examined; behaviour at the other cusp is not checked.

use serde::Serialize;

use crate::builders::{eisenstein_e4, g2_level2};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{exp, floor_exponent, Exponent, QSeries};
use crate::{Rational, Series};

/// Index of Γ₀(2) in SL₂(Z).
pub const GAMMA0_2_INDEX: i64 = 3;

/// Smallest exponent cutoff accepted for a certificate.
pub const MIN_MATCHED: i64 = 20;

/// `weight · [SL₂(Z) : Γ₀(2)] / 12 = weight / 4`.
pub fn sturm_bound(weight: i64) -> Exponent {
    exp(weight * GAMMA0_2_INDEX, 12)
}

/// Required cutoff: `max(4 × Sturm bound, 20)`.
pub fn required_match(weight: i64) -> i64 {
    floor_exponent(sturm_bound(weight) * 4).max(MIN_MATCHED)
}

/// `dim M_w(Γ₀(2)) = floor(w/4) + 1` for even `w >= 0`.
pub fn dimension(weight: i64) -> usize {
    (weight / 4 + 1) as usize
}

fn check_weight(weight: i64) -> Result<()> {
    if weight < 2 || weight % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "weight {weight} must be even and at least 2"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Gamma02Basis<C> {
    weight: i64,
    /// `(a, b)` for each element `G₂^a · E₄^b`, `a` descending.
    monomials: Vec<(i64, i64)>,
    elements: Vec<QSeries<C>>,
}

impl<C: Scalar> Gamma02Basis<C> {
    pub fn weight(&self) -> i64 {
        self.weight
    }

    pub fn monomials(&self) -> &[(i64, i64)] {
        &self.monomials
    }

    pub fn elements(&self) -> &[QSeries<C>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `Σ x_i · element_i`.
    pub fn combine(&self, coords: &[C]) -> Result<QSeries<C>> {
        let mut acc = QSeries::zero(1, self.elements[0].truncation());
        for (x, e) in coords.iter().zip(&self.elements) {
            acc = acc.add(&e.scale(x))?;
        }
        Ok(acc)
    }
}

/// All monomials `G₂^a E₄^b` with `2a + 4b = weight`, expanded through `truncation`.
pub fn basis<C: Scalar>(weight: i64, truncation: Exponent) -> Result<Gamma02Basis<C>> {
    check_weight(weight)?;
    let dim = dimension(weight);
    if truncation < Exponent::from(dim as i64 - 1) {
        return Err(Error::InsufficientPrecision {
            needed: Exponent::from(dim as i64 - 1),
            available: truncation,
        });
    }
    let g2 = g2_level2::<C>(truncation);
    let g4 = eisenstein_e4::<C>(truncation);
    let monomials: Vec<(i64, i64)> = (0..=weight / 2)
        .rev()
        .filter(|a| (weight - 2 * a) % 4 == 0)
        .map(|a| (a, (weight - 2 * a) / 4))
        .collect();
    let elements = monomials
        .iter()
        .map(|&(a, b)| g2.pow_int(a)?.mul(&g4.pow_int(b)?))
        .collect::<Result<Vec<_>>>()?;
    let basis = Gamma02Basis {
        weight,
        monomials,
        elements,
    };
    let square: Vec<Vec<C>> = (0..dim)
        .map(|e| {
            basis
                .elements
                .iter()
                .map(|g| g.coeff_at(e as i64))
                .collect()
        })
        .collect();
    if solve(square, vec![C::zero(); dim]).is_none() {
        return Err(Error::DegenerateBasis(weight));
    }
    Ok(basis)
}

/// Solves `A x = b` by Gaussian elimination; `None` if `A` is singular.
fn solve<C: Scalar>(mut a: Vec<Vec<C>>, mut b: Vec<C>) -> Option<Vec<C>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        b.swap(p, col);
        let pivot = a[col].clone();
        let inv = C::one() / pivot[col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone() * inv.clone();
            for (x, v) in a[r].iter_mut().zip(&pivot).skip(col) {
                *x = x.clone() - f.clone() * v.clone();
            }
            let v = b[col].clone();
            b[r] = b[r].clone() - f * v;
        }
    }
    Some((0..n).map(|i| b[i].clone() / a[i][i].clone()).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct MembershipCertificate<C> {
    pub weight: i64,
    /// Coordinates on [`Gamma02Basis::monomials`].
    pub combination: Vec<C>,
    /// Highest exponent through which the combination reproduces the input.
    pub matched_through: Exponent,
    pub sturm_bound: Exponent,
    pub pass: bool,
    /// `(exponent, input coefficient, combination coefficient)` on failure.
    pub first_mismatch: Option<(i64, C, C)>,
}

/// Checks `f ∈ M_weight(Γ₀(2))` against the generator basis.
///
/// Errors if `f` has a non-integral or negative exponent, or if it is not
/// known through `max(4 × Sturm bound, 20)`. A mismatch is not an error: the
/// certificate comes back with `pass = false`.
pub fn certify_membership<C: Scalar>(
    f: &QSeries<C>,
    weight: i64,
) -> Result<MembershipCertificate<C>> {
    check_weight(weight)?;
    if let Some((e, _)) = f.terms().find(|(e, _)| !e.is_integer()) {
        return Err(Error::NonIntegralExponent(e));
    }
    if let Some(v) = f.valuation().filter(|v| *v < Exponent::from(0)) {
        return Err(Error::NegativeExponent(v));
    }
    let top = floor_exponent(f.truncation());
    let need = required_match(weight);
    if top < need {
        return Err(Error::InsufficientPrecision {
            needed: Exponent::from(need),
            available: f.truncation(),
        });
    }
    let b = basis::<C>(weight, Exponent::from(top))?;
    let dim = b.len();
    let square: Vec<Vec<C>> = (0..dim)
        .map(|e| b.elements.iter().map(|g| g.coeff_at(e as i64)).collect())
        .collect();
    let rhs: Vec<C> = (0..dim).map(|e| f.coeff_at(e as i64)).collect();
    let combination = solve(square, rhs).ok_or(Error::DegenerateBasis(weight))?;
    let image = b.combine(&combination)?;
    let mut first_mismatch = None;
    for e in 0..=top {
        let (x, y) = (f.coeff_at(e), image.coeff_at(e));
        if x != y {
            first_mismatch = Some((e, x, y));
            break;
        }
    }
    let matched_through = match &first_mismatch {
        Some((e, _, _)) => Exponent::from(e - 1),
        None => Exponent::from(top),
    };
    Ok(MembershipCertificate {
        weight,
        combination,
        matched_through,
        sturm_bound: sturm_bound(weight),
        pass: first_mismatch.is_none(),
        first_mismatch,
    })
}

#[derive(Serialize)]
struct CertificateJson {
    pass: bool,
    combination: Vec<String>,
    sturm_bound: String,
    matched_through: String,
}

impl MembershipCertificate<Rational> {
    /// `{"pass": bool, "combination": [...], "sturm_bound": "p/q", "matched_through": "p/q"}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(CertificateJson {
            pass: self.pass,
            combination: self.combination.iter().map(|c| c.to_string()).collect(),
            sturm_bound: self.sturm_bound.to_string(),
            matched_through: self.matched_through.to_string(),
        })
        .expect("certificate encoding is infallible")
    }
}

/// Re-expands a certificate's combination and compares it to every known
/// coefficient of `f`.
pub fn reproduces(cert: &MembershipCertificate<Rational>, f: &Series) -> Result<bool> {
    let b = basis::<Rational>(cert.weight, f.truncation())?;
    let image = b.combine(&cert.combination)?;
    Ok(image.first_mismatch(f)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::test_util::ri;

    type S = QSeries<Rational>;

    #[test]
    fn sturm_values() {
        assert_eq!(sturm_bound(4), Exponent::from(1));
        assert_eq!(sturm_bound(8), Exponent::from(2));
        for k in 1..10 {
            assert_eq!(sturm_bound(2 * k), exp(k, 2));
        }
        assert_eq!(required_match(4), 20);
        assert_eq!(required_match(24), 24);
    }

    #[test]
    fn basis_sizes() {
        let t = Exponent::from(10);
        assert_eq!(basis::<Rational>(2, t).unwrap().monomials(), &[(1, 0)]);
        let b4 = basis::<Rational>(4, t).unwrap();
        assert_eq!(b4.monomials(), &[(2, 0), (0, 1)]);
        assert_eq!(
            basis::<Rational>(8, t).unwrap().monomials(),
            &[(4, 0), (2, 1), (0, 2)]
        );
        for w in (2..=24).step_by(2) {
            assert_eq!(
                basis::<Rational>(w, Exponent::from(12)).unwrap().len(),
                dimension(w)
            );
        }
        assert!(basis::<Rational>(3, t).is_err());
    }

    #[test]
    fn weight_4_basis_rank() {
        // rows: G₂² = 1 + 48q + ..., E₄ = 1 + 240q + ...
        let b = basis::<Rational>(4, Exponent::from(3)).unwrap();
        let g22 = &b.elements()[0];
        assert_eq!((g22.coeff_at(0), g22.coeff_at(1)), (ri(1), ri(48)));
        assert_eq!(b.elements()[1].coeff_at(1), ri(240));
    }

    #[test]
    fn basis_elements_certify() {
        let t = Exponent::from(30);
        for w in [2, 4, 6, 8, 10] {
            let b = basis::<Rational>(w, t).unwrap();
            for (i, g) in b.elements().iter().enumerate() {
                let c = certify_membership(g, w).unwrap();
                assert!(c.pass);
                let mut unit = vec![ri(0); b.len()];
                unit[i] = ri(1);
                assert_eq!(c.combination, unit);
                assert_eq!(c.matched_through, t);
            }
        }
    }

    #[test]
    fn ring_closure() {
        let t = Exponent::from(30);
        let g = g2_level2::<Rational>(t).mul(&eisenstein_e4(t)).unwrap();
        let c = certify_membership(&g, 6).unwrap();
        assert!(c.pass);
        assert!(reproduces(&c, &g).unwrap());
    }

    #[test]
    fn negative_control() {
        let t = Exponent::from(30);
        let g: S = eisenstein_e4(t);
        let bumped = g.add(&S::monomial(Exponent::from(12), ri(1), t)).unwrap();
        let c = certify_membership(&bumped, 4).unwrap();
        assert!(!c.pass);
        assert_eq!(c.first_mismatch.as_ref().map(|m| m.0), Some(12));
        assert_eq!(c.matched_through, Exponent::from(11));
    }

    #[test]
    fn rejects_bad_inputs() {
        let t = Exponent::from(30);
        let frac = S::monomial(exp(1, 2), ri(1), t);
        assert!(matches!(
            certify_membership(&frac, 4),
            Err(Error::NonIntegralExponent(_))
        ));
        let neg = S::monomial(Exponent::from(-1), ri(1), t);
        assert!(matches!(
            certify_membership(&neg, 4),
            Err(Error::NegativeExponent(_))
        ));
        let short: S = eisenstein_e4(Exponent::from(10));
        assert!(matches!(
            certify_membership(&short, 4),
            Err(Error::InsufficientPrecision { .. })
        ));
        assert!(certify_membership(&short, 5).is_err());
    }

    #[test]
    fn certificate_json_schema() {
        let g: S = eisenstein_e4(Exponent::from(25));
        let c = certify_membership(&g, 4).unwrap();
        assert_eq!(
            c.to_json().to_string(),
            r#"{"pass":true,"combination":["0","1"],"sturm_bound":"1","matched_through":"25"}"#
        );
    }

    #[test]
    fn e4_is_not_weight_2() {
        let g: S = eisenstein_e4(Exponent::from(25));
        assert!(!certify_membership(&g, 2).unwrap().pass);
    }
}
