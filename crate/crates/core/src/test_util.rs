//! Brute-force oracles shared by unit tests.

use num_bigint::BigInt;

use crate::Rational;

pub fn r(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn ri(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Number of partitions of each `n <= max` into parts accepted by `allowed`,
/// by recursive enumeration of non-increasing part sequences.
pub fn restricted_partition_counts(max: usize, allowed: impl Fn(usize) -> bool) -> Vec<u64> {
    fn walk(rest: usize, largest: usize, allowed: &dyn Fn(usize) -> bool) -> u64 {
        if rest == 0 {
            return 1;
        }
        (1..=largest.min(rest))
            .filter(|p| allowed(*p))
            .map(|p| walk(rest - p, p, allowed))
            .sum()
    }
    (0..=max).map(|n| walk(n, n, &allowed)).collect()
}

/// Partitions into distinct parts, by enumerating subsets of `1..=max`.
pub fn distinct_partition_counts(max: usize) -> Vec<u64> {
    let mut counts = vec![0u64; max + 1];
    for mask in 0u64..(1 << max) {
        let s: usize = (0..max).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).sum();
        if s <= max {
            counts[s] += 1;
        }
    }
    counts
}
