//! Builders against brute-force enumeration.

use abseries::builders::{bressoud_product, dedekind_eta, overpartition_factor, weber_f1, ABIndex};
use abseries::{Exponent, FloatSeries, Rational, Series};
use proptest::prelude::*;

fn ri(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Partitions of each `n <= max` into parts satisfying `allowed`, by
/// recursion on the largest part.
fn partitions(max: usize, allowed: impl Fn(usize) -> bool) -> Vec<u64> {
    fn count(n: usize, largest: usize, allowed: &dyn Fn(usize) -> bool) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=largest.min(n))
            .filter(|&p| allowed(p))
            .map(|p| count(n - p, p, allowed))
            .sum()
    }
    (0..=max).map(|n| count(n, n, &allowed)).collect()
}

/// Overpartitions: partitions where the first occurrence of each part may be
/// overlined. Counted as pairs (distinct parts, ordinary partition).
fn overpartitions(max: usize) -> Vec<u64> {
    let distinct = {
        let mut d = vec![0u64; max + 1];
        d[0] = 1;
        for p in 1..=max {
            for n in (p..=max).rev() {
                d[n] += d[n - p];
            }
        }
        d
    };
    let ordinary = partitions(max, |_| true);
    (0..=max)
        .map(|n| (0..=n).map(|i| distinct[i] * ordinary[n - i]).sum())
        .collect()
}

#[test]
fn bressoud_counts_restricted_partitions() {
    // with r = k − j + 1 ≠ k the product counts partitions into parts
    // not congruent to 0 or ±r modulo 2k
    for k in 2..=5i64 {
        for j in 2..=k {
            let idx = ABIndex::new(k, j).unwrap();
            let r = (k - j + 1) as usize;
            let m = 2 * k as usize;
            let oracle = partitions(30, |p| p % m != 0 && p % m != r && p % m != m - r);
            let b: Series = bressoud_product(&idx, idx.a() + 30);
            for (n, c) in oracle.iter().enumerate() {
                assert_eq!(
                    b.coeff(idx.a() + n as i64),
                    Some(ri(*c as i64)),
                    "k={k} j={j} n={n}"
                );
            }
        }
    }
}

#[test]
fn parts_not_0_or_pm1_mod_6() {
    let b: Series = bressoud_product(&ABIndex::new(3, 3).unwrap(), Exponent::from(25));
    let a = ABIndex::new(3, 3).unwrap().a();
    let oracle = partitions(24, |p| p % 6 == 2 || p % 6 == 3 || p % 6 == 4);
    for (n, c) in oracle.iter().enumerate() {
        assert_eq!(b.coeff(a + n as i64), Some(ri(*c as i64)));
    }
}

#[test]
fn overpartition_oracle() {
    let f: Series = overpartition_factor(Exponent::from(25));
    for (n, c) in overpartitions(25).iter().enumerate() {
        assert_eq!(f.coeff_at(n as i64), ri(*c as i64), "n={n}");
    }
}

#[test]
fn weber_counts_distinct_parts() {
    let f: Series = weber_f1(Exponent::from(30));
    let lead = Exponent::new(1, 24);
    let mut distinct = vec![0i64; 30];
    distinct[0] = 1;
    for p in 1..30 {
        for n in (p..30).rev() {
            distinct[n] += distinct[n - p];
        }
    }
    for (n, c) in distinct.iter().enumerate() {
        assert_eq!(f.coeff(lead + n as i64), Some(ri(*c)));
    }
}

#[test]
fn float_eta_matches_exact() {
    let exact: Series = dedekind_eta(1, Exponent::from(40)).unwrap();
    let float: FloatSeries = dedekind_eta(1, Exponent::from(40)).unwrap();
    assert_eq!(exact.len(), float.len());
    for ((e1, c1), (e2, c2)) in exact.terms().zip(float.terms()) {
        assert_eq!(e1, e2);
        assert_eq!(c1.to_string().parse::<f64>().unwrap(), *c2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn eta_is_pentagonal(cutoff in 1i64..120, scale in 1i64..4) {
        let eta: Series = dedekind_eta(scale, Exponent::from(cutoff)).unwrap();
        let mut expected = Series::zero(24, Exponent::from(cutoff));
        for n in -20i64..=20 {
            let e = Exponent::new(scale * (6 * n - 1) * (6 * n - 1), 24);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            expected = expected.add(&Series::monomial(e, ri(sign), Exponent::from(cutoff))).unwrap();
        }
        prop_assert!(eta.first_mismatch(&expected).unwrap().is_none());
        prop_assert_eq!(eta.truncation(), Exponent::from(cutoff));
    }

    #[test]
    fn support_lattice(k in 2i64..7, j_off in 0i64..6, cutoff in 1i64..30) {
        let j = 1 + j_off % k;
        let idx = ABIndex::new(k, j).unwrap();
        let b: Series = bressoud_product(&idx, Exponent::from(cutoff));
        for (e, _) in b.terms() {
            let rel = e - idx.a();
            prop_assert!(rel.is_integer() && rel >= Exponent::from(0));
        }
    }
}
