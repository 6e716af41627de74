//! Bernoulli numbers and Eisenstein series in two normalizations.
//!
//! `eisenstein_paper` and `eisenstein_twisted` keep the constant term `B_{2ℓ}/(4ℓ)` and
//! unit Lambert coefficients used when matching ODE coefficients. The
//! classical forms (`e2_classical`, `eisenstein_e4`, and the level-2 form
//! `G₂ = 24·E_{2,1}`) have constant term 1.

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{floor_exponent, Exponent, QSeries};
use crate::Rational;

/// `G₂ = 24·E_{2,1} = 2E₂(2τ) − E₂(τ)`.
pub const G2_FROM_E21: i64 = 24;

/// `E₄ = −240 · eisenstein_paper(4)`.
pub const E4_FROM_BERNOULLI_FORM: i64 = -240;

/// Exact `B_n` with `B_1 = −1/2`, from `Σ_{i<m} C(m, i)·B_i = 0`.
pub fn bernoulli(n: usize) -> Rational {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    b.push(Rational::one());
    for m in 1..=n {
        // Σ_{i=0}^{m} C(m+1, i) B_i = 0  ⇒  B_m = −Σ_{i<m} C(m+1, i) B_i / (m+1)
        let mut acc = Rational::zero();
        for (i, bi) in b.iter().enumerate() {
            acc += Rational::from_integer(binomial(BigInt::from(m + 1), BigInt::from(i))) * bi;
        }
        b.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    b.swap_remove(n)
}

fn check_weight(two_ell: i64) -> Result<()> {
    if two_ell < 2 || two_ell % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "weight {two_ell} must be even and at least 2"
        )));
    }
    Ok(())
}

/// `Σ_{d | n} ε(n/d) · d^p`, with `ε(c) = (−1)^{c+1}` when `alternating`.
fn divisor_sum(n: i64, p: u32, alternating: bool) -> BigInt {
    let mut s = BigInt::zero();
    for d in (1..=n).filter(|d| n % d == 0) {
        let term = BigInt::from(d).pow(p);
        if alternating && (n / d) % 2 == 0 {
            s -= term;
        } else {
            s += term;
        }
    }
    s
}

fn lambert<C: Scalar>(
    constant: Rational,
    scale: Rational,
    p: u32,
    alternating: bool,
    truncation: Exponent,
) -> QSeries<C> {
    let max = floor_exponent(truncation);
    let terms = std::iter::once((0, C::from_rational(&constant))).chain((1..=max).map(|n| {
        let c = Rational::from_integer(divisor_sum(n, p, alternating)) * &scale;
        (n, C::from_rational(&c))
    }));
    QSeries::from_terms(1, truncation, terms)
}

fn bernoulli_constant(two_ell: i64) -> Rational {
    bernoulli(two_ell as usize) / Rational::from_integer(BigInt::from(2 * two_ell))
}

/// `E_{2ℓ} = B_{2ℓ}/(4ℓ) − Σ n^{2ℓ−1} qⁿ/(1 − qⁿ)`.
pub fn eisenstein_paper<C: Scalar>(two_ell: i64, truncation: Exponent) -> Result<QSeries<C>> {
    check_weight(two_ell)?;
    Ok(lambert(
        bernoulli_constant(two_ell),
        -Rational::one(),
        (two_ell - 1) as u32,
        false,
        truncation,
    ))
}

/// `E_{2ℓ,1} = B_{2ℓ}/(4ℓ) + Σ n^{2ℓ−1} qⁿ/(1 + qⁿ)`.
pub fn eisenstein_twisted<C: Scalar>(two_ell: i64, truncation: Exponent) -> Result<QSeries<C>> {
    check_weight(two_ell)?;
    Ok(lambert(
        bernoulli_constant(two_ell),
        Rational::one(),
        (two_ell - 1) as u32,
        true,
        truncation,
    ))
}

/// `E_{2,1} = 1/24 + Σ_n (Σ_{d|n} (−1)^{n/d+1} d) qⁿ`, weight 2 on Γ₀(2).
pub fn eisenstein_2_1<C: Scalar>(truncation: Exponent) -> QSeries<C> {
    eisenstein_twisted(2, truncation).expect("weight 2 is valid")
}

/// Classical `E₂ = 1 − 24 Σ σ₁(n) qⁿ`.
pub fn e2_classical<C: Scalar>(truncation: Exponent) -> QSeries<C> {
    lambert(
        Rational::one(),
        Rational::from_integer((-24).into()),
        1,
        false,
        truncation,
    )
}

/// Classical `E₄ = 1 + 240 Σ σ₃(n) qⁿ`.
pub fn eisenstein_e4<C: Scalar>(truncation: Exponent) -> QSeries<C> {
    lambert(
        Rational::one(),
        Rational::from_integer(240.into()),
        3,
        false,
        truncation,
    )
}

/// `G₂ = 1 + 24 Σ_n (Σ_{d|n} (−1)^{n/d+1} d) qⁿ`, the weight-2 generator of M_*(Γ₀(2)).
pub fn g2_level2<C: Scalar>(truncation: Exponent) -> QSeries<C> {
    eisenstein_2_1::<C>(truncation).scale(&C::from_int(G2_FROM_E21))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::exp;
    use crate::test_util::{r, ri};

    type S = QSeries<Rational>;

    /// Brute-force divisor sum.
    fn sigma(n: i64, p: u32) -> i64 {
        (1..=n).filter(|d| n % d == 0).map(|d| d.pow(p)).sum()
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), ri(1));
        assert_eq!(bernoulli(1), r(-1, 2));
        assert_eq!(bernoulli(2), r(1, 6));
        assert_eq!(bernoulli(4), r(-1, 30));
        assert_eq!(bernoulli(6), r(1, 42));
        assert_eq!(bernoulli(12), r(-691, 2730));
        assert_eq!(bernoulli(5), ri(0));
    }

    #[test]
    fn e2_bernoulli_normalization() {
        let e: S = eisenstein_paper(2, exp(20, 1)).unwrap();
        assert_eq!(e.coeff_at(0), r(1, 24));
        assert_eq!(
            [e.coeff_at(1), e.coeff_at(2), e.coeff_at(3)],
            [ri(-1), ri(-3), ri(-4)]
        );
        for n in 1..=20 {
            assert_eq!(e.coeff_at(n), ri(-sigma(n, 1)));
        }
        let classical: S = e2_classical(exp(20, 1));
        assert!(classical.scale(&r(1, 24)) == e);
    }

    #[test]
    fn e4_bernoulli_constant() {
        let e: S = eisenstein_paper(4, exp(5, 1)).unwrap();
        assert_eq!(e.coeff_at(0), r(-1, 240));
        assert!(eisenstein_paper::<Rational>(3, exp(5, 1)).is_err());
        assert!(eisenstein_paper::<Rational>(0, exp(5, 1)).is_err());
    }

    #[test]
    fn e21_lambert_brute_force() {
        let t = exp(30, 1);
        let e: S = eisenstein_2_1(t);
        assert_eq!(e.coeff_at(0), r(1, 24));
        assert_eq!(e.coeff_at(1), ri(1));
        // expand Σ_m m qᵐ/(1 + qᵐ) = Σ_m Σ_r (−1)^{r+1} m q^{mr} term by term
        let mut want = vec![0i64; 31];
        for m in 1..=30 {
            let mut rr = 1;
            while m * rr <= 30 {
                want[(m * rr) as usize] += if rr % 2 == 1 { m } else { -m };
                rr += 1;
            }
        }
        for n in 1..=30 {
            assert_eq!(e.coeff_at(n), ri(want[n as usize]), "n={n}");
        }
    }

    #[test]
    fn e21_is_level_two_e2_combination() {
        let t = exp(20, 1);
        let e2: S = e2_classical(exp(20, 1));
        let combo = e2.dilate(2).scale(&ri(2)).sub(&e2).unwrap();
        let g2: S = g2_level2(t);
        assert_eq!(g2.proportionality(&combo).unwrap(), Some(ri(1)));
        let e21: S = eisenstein_2_1(t);
        assert_eq!(combo.proportionality(&e21).unwrap(), Some(ri(G2_FROM_E21)));
    }

    #[test]
    fn e4_classical() {
        let e: S = eisenstein_e4(exp(20, 1));
        assert_eq!(e.coeff_at(0), ri(1));
        assert_eq!(e.coeff_at(1), ri(240));
        assert_eq!(e.coeff_at(2), ri(2160));
        for n in 1..=20 {
            assert_eq!(e.coeff_at(n), ri(240 * sigma(n, 3)));
        }
        let raw: S = eisenstein_paper(4, exp(20, 1)).unwrap();
        assert!(raw.scale(&ri(E4_FROM_BERNOULLI_FORM)) == e);
    }
}
