//! Bilateral sums: the triple-product sum and both forms of the character
//! `ch_{k,j}`.

use super::index::ABIndex;
use super::products::{overpartition_dense, relative_max, Dense};
use crate::scalar::Scalar;
use crate::series::{Exponent, QSeries};

/// Hard stop for the outward walk; no quadratic used here gets close.
const MAX_BILATERAL: i64 = 1 << 24;

/// Every `(n, f(n))` with `f(n) <= max`, for `f` an upward quadratic. The walk
/// in each direction continues two steps past the last index where `f` is
/// increasing and already beyond `max`.
pub(crate) fn bilateral_terms(max: i64, f: impl Fn(i64) -> i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    if f(0) <= max {
        out.push((0, f(0)));
    }
    for dir in [1i64, -1] {
        let mut n: i64 = 0;
        let mut margin = 2;
        while n.abs() < MAX_BILATERAL {
            n += dir;
            let e = f(n);
            if e <= max {
                out.push((n, e));
            } else if f(n + dir) > e {
                if margin == 0 {
                    break;
                }
                margin -= 1;
            }
        }
    }
    out.sort_unstable();
    out
}

/// `Σ_{n∈Z} (−1)ⁿ q^{kn² + (j−1)n}`.
pub fn jacobi_bilateral<C: Scalar>(idx: &ABIndex, truncation: Exponent) -> QSeries<C> {
    let (k, j) = (idx.k(), idx.j());
    let max = relative_max(truncation, Exponent::from(0));
    let mut d = Dense::zero(max);
    for (n, e) in bilateral_terms(max, |n| k * n * n + (j - 1) * n) {
        d.add_term(e, C::from_int(if n % 2 == 0 { 1 } else { -1 }));
    }
    d.into_series(1, Exponent::from(0), truncation)
}

fn with_overpartitions<C: Scalar>(
    idx: &ABIndex,
    sum: Dense<C>,
    truncation: Exponent,
) -> QSeries<C> {
    let offset = idx.character_exponent();
    let prod = overpartition_dense::<C>(sum.max());
    sum.mul(&prod)
        .into_series(idx.lattice(), offset, truncation)
}

/// `ch_{k,j} = q^{(j−1)²/4k} · (−q)_∞/(q)_∞ · Σ_{n∈Z} (−1)ⁿ q^{kn² + (j−1)n}`.
pub fn character_sum<C: Scalar>(idx: &ABIndex, truncation: Exponent) -> QSeries<C> {
    let (k, j) = (idx.k(), idx.j());
    let max = relative_max(truncation, idx.character_exponent());
    let mut sum = Dense::zero(max);
    for (n, e) in bilateral_terms(max, |n| k * n * n + (j - 1) * n) {
        sum.add_term(e, C::from_int(if n % 2 == 0 { 1 } else { -1 }));
    }
    with_overpartitions(idx, sum, truncation)
}

/// `ch_{k,j} = q^{(j−1)²/4k} · (−q)_∞/(q)_∞ · Σ_{n∈Z} (q^{2n(2kn+j−1)} − q^{(2n+1)(2kn+k−j+1)})`.
pub fn character_alt<C: Scalar>(idx: &ABIndex, truncation: Exponent) -> QSeries<C> {
    let (k, j) = (idx.k(), idx.j());
    let max = relative_max(truncation, idx.character_exponent());
    let mut sum = Dense::zero(max);
    for (_, e) in bilateral_terms(max, |n| 2 * n * (2 * k * n + j - 1)) {
        sum.add_term(e, C::one());
    }
    for (_, e) in bilateral_terms(max, |n| (2 * n + 1) * (2 * k * n + k - j + 1)) {
        sum.add_term(e, -C::one());
    }
    with_overpartitions(idx, sum, truncation)
}
