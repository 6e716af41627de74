//! Infinite products: eta, eta-quotients and the Andrews-Bressoud product side.
//!
//! Products are expanded as dense integer-exponent polynomials, one factor at
//! a time, stopping once a factor's smallest exponent exceeds the remaining
//! precision. The prefactor `q^offset` is attached at the end.

use num_traits::Zero;

use super::index::{ABIndex, EtaQuotientSpec, GeneralizedFactor};
use crate::error::Result;
use crate::scalar::Scalar;
use crate::series::{floor_exponent, Exponent, QSeries};

/// Dense coefficients of `q^0 .. q^max`.
#[derive(Clone, Debug)]
pub(crate) struct Dense<C> {
    coeffs: Vec<C>,
}

impl<C: Scalar> Dense<C> {
    /// `1`, or the empty polynomial when `max < 0`.
    pub fn one(max: i64) -> Self {
        let len = (max + 1).max(0) as usize;
        let mut coeffs = vec![C::zero(); len];
        if len > 0 {
            coeffs[0] = C::one();
        }
        Dense { coeffs }
    }

    pub fn zero(max: i64) -> Self {
        Dense {
            coeffs: vec![C::zero(); (max + 1).max(0) as usize],
        }
    }

    pub fn max(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn add_term(&mut self, e: i64, c: C) {
        if (0..=self.max()).contains(&e) {
            let slot = &mut self.coeffs[e as usize];
            *slot = slot.clone() + c;
        }
    }

    /// Multiplies by `(1 + sign·q^e)^power`, `sign = ±1`.
    pub fn apply_binomial(&mut self, e: i64, sign: i64, power: i64) {
        if e <= 0 || e > self.max() {
            return;
        }
        let e = e as usize;
        let n = self.coeffs.len();
        let s = C::from_int(sign);
        if power > 0 {
            for _ in 0..power {
                for i in (e..n).rev() {
                    let lower = self.coeffs[i - e].clone();
                    if !lower.is_zero() {
                        self.coeffs[i] = self.coeffs[i].clone() + s.clone() * lower;
                    }
                }
            }
        } else {
            // 1/(1 + s q^e) = Σ (−s)^t q^{et}; p_i ← p_i − s·p_{i−e}, ascending
            for _ in 0..(-power) {
                for i in e..n {
                    let lower = self.coeffs[i - e].clone();
                    if !lower.is_zero() {
                        self.coeffs[i] = self.coeffs[i].clone() - s.clone() * lower;
                    }
                }
            }
        }
    }

    pub fn apply_factor(&mut self, f: &GeneralizedFactor) {
        let exps: Vec<i64> = f.exponents(self.max()).collect();
        for e in exps {
            self.apply_binomial(e, -1, f.power());
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let max = self.max().min(other.max());
        let mut out = Self::zero(max);
        for (i, a) in self
            .coeffs
            .iter()
            .enumerate()
            .take((max + 1).max(0) as usize)
        {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=(max as usize - i)].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].clone() + a.clone() * b.clone();
                }
            }
        }
        out
    }

    /// `q^offset · self` on `lattice`, known through `truncation`.
    pub fn into_series(self, lattice: i64, offset: Exponent, truncation: Exponent) -> QSeries<C> {
        assert_eq!(lattice % offset.denom(), 0, "offset not on lattice");
        let base = offset.numer() * (lattice / offset.denom());
        QSeries::from_terms(
            lattice,
            truncation,
            self.coeffs
                .into_iter()
                .enumerate()
                .map(|(i, c)| (base + i as i64 * lattice, c)),
        )
    }
}

/// Relative integer precision left after a prefactor `q^offset`.
pub(crate) fn relative_max(truncation: Exponent, offset: Exponent) -> i64 {
    floor_exponent(truncation - offset)
}

pub(crate) fn expand_product<C: Scalar>(
    factors: &[GeneralizedFactor],
    offset: Exponent,
    lattice: i64,
    truncation: Exponent,
) -> QSeries<C> {
    let mut d = Dense::one(relative_max(truncation, offset));
    for f in factors {
        d.apply_factor(f);
    }
    d.into_series(lattice, offset, truncation)
}

/// `η(scale·τ) = q^{scale/24} ∏ (1 − q^{scale·n})`.
pub fn dedekind_eta<C: Scalar>(scale: i64, truncation: Exponent) -> Result<QSeries<C>> {
    eta_quotient(&EtaQuotientSpec::new(vec![(scale, 1)])?, truncation)
}

pub fn eta_quotient<C: Scalar>(spec: &EtaQuotientSpec, truncation: Exponent) -> Result<QSeries<C>> {
    let factors: Vec<GeneralizedFactor> = spec
        .factors()
        .iter()
        .map(|&(m, r)| GeneralizedFactor::new(m, m, r))
        .collect::<Result<_>>()?;
    Ok(expand_product(&factors, spec.valuation(), 24, truncation))
}

/// `f₁(τ) = η(2τ)/η(τ)`.
pub fn weber_f1<C: Scalar>(truncation: Exponent) -> QSeries<C> {
    eta_quotient(
        &EtaQuotientSpec::new(vec![(2, 1), (1, -1)]).expect("valid spec"),
        truncation,
    )
    .expect("valid spec")
}

/// `B_{k,j} = q^{a_{k,j}} ∏ (1−q^{2km})(1−q^{2km−k−j+1})(1−q^{2km−k+j−1}) / (1−q^m)`.
pub fn bressoud_product<C: Scalar>(idx: &ABIndex, truncation: Exponent) -> QSeries<C> {
    let mut factors = GeneralizedFactor::bressoud_numerator(idx).to_vec();
    factors.push(GeneralizedFactor::new(1, 1, -1).expect("valid factor"));
    expand_product(&factors, idx.a(), idx.lattice(), truncation)
}

/// Product side of the triple product: `∏ (1−q^{2km})(1−q^{2km−k−j+1})(1−q^{2km−k+j−1})`.
pub fn jacobi_product<C: Scalar>(idx: &ABIndex, truncation: Exponent) -> QSeries<C> {
    let factors = GeneralizedFactor::bressoud_numerator(idx);
    expand_product(&factors, Exponent::zero(), 1, truncation)
}

/// `(−q)_∞ / (q)_∞ = ∏ (1 + qⁿ)/(1 − qⁿ)` through `q^max`.
pub(crate) fn overpartition_dense<C: Scalar>(max: i64) -> Dense<C> {
    let mut d = Dense::one(max);
    for n in 1..=max {
        d.apply_binomial(n, 1, 1);
    }
    for n in 1..=max {
        d.apply_binomial(n, -1, -1);
    }
    d
}

pub fn overpartition_factor<C: Scalar>(truncation: Exponent) -> QSeries<C> {
    overpartition_dense(relative_max(truncation, Exponent::zero())).into_series(
        1,
        Exponent::zero(),
        truncation,
    )
}
