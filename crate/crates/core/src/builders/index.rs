use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::series::{exp, Exponent};

/// A validated Andrews-Bressoud index `(k, j)` with `k >= 2`, `1 <= j <= k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ABIndex {
    k: i64,
    j: i64,
    a: Exponent,
}

impl ABIndex {
    pub fn new(k: i64, j: i64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidIndex(format!("k = {k} must be at least 2")));
        }
        if j < 1 || j > k {
            return Err(Error::InvalidIndex(format!("j = {j} must lie in 1..={k}")));
        }
        let a = exp(6 * j * j - 12 * j - k + 6, 24 * k);
        Ok(ABIndex { k, j, a })
    }

    /// All indices `(k, 1), ..., (k, k)`.
    pub fn family(k: i64) -> Result<Vec<Self>> {
        (1..=k.max(1)).map(|j| Self::new(k, j)).collect()
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn j(&self) -> i64 {
        self.j
    }

    /// Prefactor exponent `a_{k,j} = (6j² − 12j − k + 6)/(24k)`.
    pub fn a(&self) -> Exponent {
        self.a
    }

    /// Leading exponent `(j − 1)²/(4k)` of the character; equals `a + 1/24`.
    pub fn character_exponent(&self) -> Exponent {
        exp((self.j - 1) * (self.j - 1), 4 * self.k)
    }

    /// Common lattice `96k` for every series attached to this `k`.
    pub fn lattice(&self) -> i64 {
        ab_lattice(self.k)
    }
}

/// `lcm(24k, 32k, 24) = 96k`.
pub fn ab_lattice(k: i64) -> i64 {
    96 * k
}

/// A product `∏ η(mτ)^r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotientSpec {
    factors: Vec<(i64, i64)>,
}

impl EtaQuotientSpec {
    /// `factors` are `(scale, power)` pairs; scales must be positive and
    /// distinct, powers nonzero.
    pub fn new(factors: Vec<(i64, i64)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &(m, r) in &factors {
            if m < 1 {
                return Err(Error::InvalidArgument(format!(
                    "eta scale {m} must be positive"
                )));
            }
            if r == 0 {
                return Err(Error::InvalidArgument(format!(
                    "eta power for scale {m} is zero"
                )));
            }
            if !seen.insert(m) {
                return Err(Error::InvalidArgument(format!("eta scale {m} repeated")));
            }
        }
        Ok(EtaQuotientSpec { factors })
    }

    /// `η(τ)^{2k²−1} / η(2τ)^{2k−1}`.
    pub fn wronskian_shape(k: i64) -> Self {
        EtaQuotientSpec {
            factors: vec![(1, 2 * k * k - 1), (2, -(2 * k - 1))],
        }
    }

    pub fn factors(&self) -> &[(i64, i64)] {
        &self.factors
    }

    /// `Σ r·m / 24`.
    pub fn valuation(&self) -> Exponent {
        self.factors
            .iter()
            .fold(Exponent::from(0), |acc, &(m, r)| acc + exp(m * r, 24))
    }

    /// Parses `"1:7,2:-3"`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (m, r) = part.split_once(':').ok_or_else(|| {
                Error::InvalidArgument(format!("factor `{part}` is not scale:power"))
            })?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidArgument(format!("bad integer in `{part}`")))
            };
            factors.push((parse(m)?, parse(r)?));
        }
        Self::new(factors)
    }
}

/// `∏_{m>=1} (1 − q^{a·m − a + b})^power` with `0 < b <= a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneralizedFactor {
    modulus: i64,
    residue: i64,
    power: i64,
}

impl GeneralizedFactor {
    pub fn new(modulus: i64, residue: i64, power: i64) -> Result<Self> {
        if modulus < 1 || residue < 1 || residue > modulus {
            return Err(Error::InvalidArgument(format!(
                "factor residue {residue} outside 1..={modulus}"
            )));
        }
        Ok(GeneralizedFactor {
            modulus,
            residue,
            power,
        })
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn residue(&self) -> i64 {
        self.residue
    }

    pub fn power(&self) -> i64 {
        self.power
    }

    /// Exponents `b, a + b, 2a + b, ...` up to `max`.
    pub fn exponents(&self, max: i64) -> impl Iterator<Item = i64> {
        let (step, residue) = (self.modulus, self.residue);
        (0..)
            .map(move |i| residue + i * step)
            .take_while(move |&e| e <= max)
    }

    /// The three numerator factors of `B_{k,j}`:
    /// `(1−q^{2km})(1−q^{2km−k−j+1})(1−q^{2km−k+j−1})`.
    ///
    /// `2km − k − j + 1 = 2k(m−1) + (k − j + 1)`, so every residue is in `1..=2k`
    /// even at `j = k`.
    pub fn bressoud_numerator(idx: &super::ABIndex) -> [Self; 3] {
        let (k, j) = (idx.k(), idx.j());
        [
            GeneralizedFactor {
                modulus: 2 * k,
                residue: 2 * k,
                power: 1,
            },
            GeneralizedFactor {
                modulus: 2 * k,
                residue: k - j + 1,
                power: 1,
            },
            GeneralizedFactor {
                modulus: 2 * k,
                residue: k + j - 1,
                power: 1,
            },
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_validation() {
        assert!(ABIndex::new(1, 1).is_err());
        assert!(ABIndex::new(3, 0).is_err());
        assert!(ABIndex::new(3, 4).is_err());
        assert_eq!(ABIndex::new(2, 1).unwrap().a(), exp(-1, 24));
        assert_eq!(ABIndex::new(2, 2).unwrap().a(), exp(1, 12));
    }

    #[test]
    fn character_exponent_relation() {
        for k in 2..=12 {
            for idx in ABIndex::family(k).unwrap() {
                assert_eq!(
                    idx.character_exponent(),
                    idx.a() + exp(1, 24),
                    "k={k} j={}",
                    idx.j()
                );
            }
        }
    }

    #[test]
    fn eta_spec_rules() {
        assert!(EtaQuotientSpec::new(vec![(1, 1), (1, 2)]).is_err());
        assert!(EtaQuotientSpec::new(vec![(1, 0)]).is_err());
        assert!(EtaQuotientSpec::new(vec![(0, 1)]).is_err());
        assert_eq!(
            EtaQuotientSpec::parse("1:7, 2:-3").unwrap(),
            EtaQuotientSpec::wronskian_shape(2)
        );
        assert_eq!(EtaQuotientSpec::wronskian_shape(2).valuation(), exp(1, 24));
        assert_eq!(EtaQuotientSpec::wronskian_shape(4).valuation(), exp(17, 24));
    }

    #[test]
    fn numerator_factors_have_positive_exponents() {
        for k in 2..=8 {
            for idx in ABIndex::family(k).unwrap() {
                for f in GeneralizedFactor::bressoud_numerator(&idx) {
                    assert!(f.exponents(200).all(|e| e > 0));
                }
            }
        }
        let idx = ABIndex::new(3, 3).unwrap();
        let f = GeneralizedFactor::bressoud_numerator(&idx)[1];
        assert_eq!(f.exponents(20).collect::<Vec<_>>(), vec![1, 7, 13, 19]);
    }
}
