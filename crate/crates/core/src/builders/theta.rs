//! Congruent theta functions `Σ_{m ≡ h (mod N)} q^{m²/2N}`.

use super::index::ABIndex;
use super::products::eta_quotient;
use super::EtaQuotientSpec;
use crate::error::Result;
use crate::scalar::Scalar;
use crate::series::{exp, Exponent, QSeries};

/// `Σ_{m ≡ h (mod modulus)} q^{m²/(2·modulus)}` over all integers `m`, on
/// lattice `2·modulus`.
pub fn congruent_theta<C: Scalar>(modulus: i64, h: i64, truncation: Exponent) -> QSeries<C> {
    assert!(modulus >= 1, "theta modulus must be positive");
    let lattice = 2 * modulus;
    let mut s = QSeries::zero(lattice, truncation);
    let max = s.max_numerator();
    if max < 0 {
        return s;
    }
    let r = h.rem_euclid(modulus);
    // m² <= max, so |m| <= sqrt(max) + 1
    let bound = (max as f64).sqrt() as i64 + 2;
    let lo = (-bound - r).div_euclid(modulus);
    let hi = (bound - r).div_euclid(modulus) + 1;
    let terms = (lo..=hi)
        .map(|t| r + t * modulus)
        .map(|m| m * m)
        .filter(|&n| n <= max)
        .map(|n| (n, C::one()));
    s = QSeries::from_terms(lattice, truncation, terms);
    s
}

/// `Θ(τ; h) = Σ_{m ≡ h (mod 16k)} q^{m²/32k}`.
pub fn theta_congruent<C: Scalar>(k: i64, h: i64, truncation: Exponent) -> QSeries<C> {
    congruent_theta(16 * k, h, truncation)
}

/// `(Θ_N(2(j−1)) − Θ_N(4k − 2(j−1))) / η(τ)` with theta modulus `N`.
pub fn theta_difference<C: Scalar>(
    idx: &ABIndex,
    modulus: i64,
    truncation: Exponent,
) -> Result<QSeries<C>> {
    let shift = 2 * (idx.j() - 1);
    let t_theta = truncation + exp(1, 24);
    let upper = congruent_theta::<C>(modulus, shift, t_theta);
    let lower = congruent_theta::<C>(modulus, 4 * idx.k() - shift, t_theta);
    let inv_eta = eta_quotient::<C>(&EtaQuotientSpec::new(vec![(1, -1)])?, truncation)?;
    upper
        .sub(&lower)?
        .mul(&inv_eta)?
        .relattice(idx.lattice())?
        .require(truncation)
}

/// `B_{k,j}` from theta functions of modulus `8k`:
/// `(Σ_{m ≡ 2(j−1) (8k)} q^{m²/16k} − Σ_{m ≡ 4k−2(j−1) (8k)} q^{m²/16k}) / η(τ)`.
pub fn bressoud_theta<C: Scalar>(idx: &ABIndex, truncation: Exponent) -> Result<QSeries<C>> {
    theta_difference(idx, 8 * idx.k(), truncation)
}

/// The same difference taken with the modulus-`16k` functions of
/// [`theta_congruent`]. It does not reproduce `B_{k,j}`; kept so the
/// discrepancy can be demonstrated.
pub fn bressoud_theta_modulus_16k<C: Scalar>(
    idx: &ABIndex,
    truncation: Exponent,
) -> Result<QSeries<C>> {
    theta_difference(idx, 16 * idx.k(), truncation)
}
