//! Truncated q-series with exponents on a lattice `(1/D)·Z`.
//!
//! A [`QSeries`] stores the nonzero coefficients below an absolute exponent
//! cutoff `T`. Coefficients of exponents `<= T` are known (absent means zero);
//! coefficients of exponents `> T` are unknown. Every binary operation
//! computes the largest cutoff that its inputs actually justify.

use std::collections::BTreeMap;
use std::fmt;
use std::ops;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Exponents and truncation cutoffs.
pub type Exponent = Ratio<i64>;

/// Largest lattice denominator accepted when two series are combined.
pub const MAX_LATTICE: i64 = 1 << 32;

#[derive(Clone, Debug)]
pub struct QSeries<C> {
    lattice: i64,
    terms: BTreeMap<i64, C>,
    truncation: Exponent,
}

pub(crate) fn exp(n: i64, d: i64) -> Exponent {
    Ratio::new(n, d)
}

/// `floor(e)`.
pub(crate) fn floor_exponent(e: Exponent) -> i64 {
    floor_times(e, 1)
}

fn floor_times(t: Exponent, d: i64) -> i64 {
    // floor(t * d) without overflowing the intermediate product
    let num = *t.numer() as i128 * d as i128;
    let den = *t.denom() as i128;
    num.div_euclid(den) as i64
}

fn checked_lcm(a: i64, b: i64) -> Result<i64> {
    let g = a.gcd(&b);
    let l = (a / g)
        .checked_mul(b)
        .ok_or_else(|| Error::Capacity(format!("lcm({a}, {b}) overflows")))?;
    if l > MAX_LATTICE {
        return Err(Error::Capacity(format!(
            "lattice {l} exceeds {MAX_LATTICE}"
        )));
    }
    Ok(l)
}

impl<C: Scalar> QSeries<C> {
    /// The zero series known through `truncation`.
    ///
    /// Panics if `lattice < 1`.
    pub fn zero(lattice: i64, truncation: Exponent) -> Self {
        assert!(lattice >= 1, "lattice must be positive, got {lattice}");
        QSeries {
            lattice,
            terms: BTreeMap::new(),
            truncation,
        }
    }

    /// Builds a series from `(numerator, coefficient)` pairs on `lattice`.
    /// Repeated numerators are summed; zeros and terms beyond the cutoff are dropped.
    pub fn from_terms<I>(lattice: i64, truncation: Exponent, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
    {
        let mut s = Self::zero(lattice, truncation);
        let max = s.max_numerator();
        for (n, c) in terms {
            if n > max {
                continue;
            }
            s.accumulate(n, c);
        }
        s
    }

    /// Builds a series from `(exponent, coefficient)` pairs. The lattice is the
    /// lcm of the exponent denominators.
    pub fn from_exponents<I>(truncation: Exponent, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, C)>,
    {
        let terms: Vec<_> = terms.into_iter().collect();
        let mut lattice = 1;
        for (e, _) in &terms {
            lattice = checked_lcm(lattice, *e.denom())?;
        }
        Ok(Self::from_terms(
            lattice,
            truncation,
            terms
                .into_iter()
                .map(|(e, c)| (e.numer() * (lattice / e.denom()), c)),
        ))
    }

    pub fn monomial(exponent: Exponent, coeff: C, truncation: Exponent) -> Self {
        let d = *exponent.denom();
        Self::from_terms(d, truncation, [(*exponent.numer(), coeff)])
    }

    pub fn one(truncation: Exponent) -> Self {
        Self::monomial(Exponent::zero(), C::one(), truncation)
    }

    /// Constructs from parts without normalizing. Used by the decoder, which
    /// validates separately.
    pub(crate) fn from_raw(lattice: i64, truncation: Exponent, terms: BTreeMap<i64, C>) -> Self {
        QSeries {
            lattice,
            terms,
            truncation,
        }
    }

    fn accumulate(&mut self, n: i64, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&n) {
            Some(old) => {
                let sum = old + c;
                if !sum.is_zero() {
                    self.terms.insert(n, sum);
                }
            }
            None => {
                self.terms.insert(n, c);
            }
        }
    }

    pub fn lattice(&self) -> i64 {
        self.lattice
    }

    pub fn truncation(&self) -> Exponent {
        self.truncation
    }

    /// Largest exponent numerator whose coefficient is known.
    pub fn max_numerator(&self) -> i64 {
        floor_times(self.truncation, self.lattice)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No known nonzero terms; same as [`QSeries::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms as `(numerator, coefficient)` in ascending order.
    pub fn raw_terms(&self) -> impl Iterator<Item = (i64, &C)> + '_ {
        self.terms.iter().map(|(n, c)| (*n, c))
    }

    /// Nonzero terms as `(exponent, coefficient)` in ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, &C)> + '_ {
        let d = self.lattice;
        self.terms.iter().map(move |(n, c)| (exp(*n, d), c))
    }

    /// Coefficient of `q^e`, or `None` if `e` lies beyond the cutoff.
    pub fn coeff(&self, e: Exponent) -> Option<C> {
        if e > self.truncation {
            return None;
        }
        if self.lattice % e.denom() != 0 {
            return Some(C::zero());
        }
        let n = e.numer() * (self.lattice / e.denom());
        Some(self.terms.get(&n).cloned().unwrap_or_else(C::zero))
    }

    /// Coefficient of the integer power `q^n`; zero beyond the cutoff.
    pub fn coeff_at(&self, n: i64) -> C {
        self.coeff(exp(n, 1)).unwrap_or_else(C::zero)
    }

    pub fn valuation(&self) -> Option<Exponent> {
        self.terms.keys().next().map(|n| exp(*n, self.lattice))
    }

    /// Lowest exponent and its coefficient.
    pub fn valuation_leading(&self) -> Result<(Exponent, C)> {
        self.terms
            .iter()
            .next()
            .map(|(n, c)| (exp(*n, self.lattice), c.clone()))
            .ok_or(Error::ZeroSeries("valuation"))
    }

    /// A lower bound on the true valuation: the valuation if a term is known,
    /// the cutoff otherwise.
    pub fn valuation_bound(&self) -> Exponent {
        self.valuation().unwrap_or(self.truncation)
    }

    pub fn has_integral_exponents(&self) -> bool {
        self.terms().all(|(e, _)| e.is_integer())
    }

    /// Re-expresses the series on lattice `d`, which must be a multiple of the
    /// current lattice.
    pub fn relattice(&self, d: i64) -> Result<Self> {
        if d < 1 || d % self.lattice != 0 {
            return Err(Error::InvalidArgument(format!(
                "lattice {d} is not a multiple of {}",
                self.lattice
            )));
        }
        let f = d / self.lattice;
        let mut terms = BTreeMap::new();
        for (n, c) in &self.terms {
            let m = n
                .checked_mul(f)
                .ok_or_else(|| Error::Capacity(format!("numerator {n} * {f} overflows")))?;
            terms.insert(m, c.clone());
        }
        Ok(QSeries {
            lattice: d,
            terms,
            truncation: self.truncation,
        })
    }

    /// Lowers the cutoff to `t` (never raises it).
    pub fn truncate(&self, t: Exponent) -> Self {
        if t >= self.truncation {
            return self.clone();
        }
        let mut s = Self::zero(self.lattice, t);
        let max = s.max_numerator();
        s.terms = self
            .terms
            .range(..=max)
            .map(|(n, c)| (*n, c.clone()))
            .collect();
        s
    }

    /// Returns the series cut to exactly `t`, or an error if it is not known that far.
    pub fn require(&self, t: Exponent) -> Result<Self> {
        if self.truncation < t {
            return Err(Error::InsufficientPrecision {
                needed: t,
                available: self.truncation,
            });
        }
        Ok(self.truncate(t))
    }

    /// Both series on the lcm lattice with the common (minimum) cutoff.
    pub fn align(a: &Self, b: &Self) -> Result<(Self, Self)> {
        let d = checked_lcm(a.lattice, b.lattice)?;
        let t = a.truncation.min(b.truncation);
        Ok((a.relattice(d)?.truncate(t), b.relattice(d)?.truncate(t)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = Self::align(self, other)?;
        for (n, c) in b.terms {
            a.accumulate(n, c);
        }
        Ok(a)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QSeries {
            lattice: self.lattice,
            terms: self.terms.iter().map(|(n, c)| (*n, -c.clone())).collect(),
            truncation: self.truncation,
        }
    }

    pub fn scale(&self, s: &C) -> Self {
        let mut r = Self::zero(self.lattice, self.truncation);
        if s.is_zero() {
            return r;
        }
        for (n, c) in &self.terms {
            r.accumulate(*n, c.clone() * s.clone());
        }
        r
    }

    /// Product, known through `min(T_a + v_b, T_b + v_a)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let d = checked_lcm(self.lattice, other.lattice)?;
        let a = self.relattice(d)?;
        let b = other.relattice(d)?;
        let t = (a.truncation + b.valuation_bound()).min(b.truncation + a.valuation_bound());
        let mut r = Self::zero(d, t);
        let max = r.max_numerator();
        let (small, large) = if a.len() <= b.len() {
            (&a, &b)
        } else {
            (&b, &a)
        };
        for (n, c) in &small.terms {
            let limit = max - n;
            for (m, e) in large.terms.range(..=limit) {
                r.accumulate(n + m, c.clone() * e.clone());
            }
        }
        Ok(r)
    }

    /// The derivative `q·d/dq`: `c·q^e ↦ (c·e)·q^e`.
    pub fn derive(&self) -> Self {
        let mut r = Self::zero(self.lattice, self.truncation);
        for (n, c) in &self.terms {
            r.accumulate(*n, c.clone() * C::from_ratio(*n, self.lattice));
        }
        r
    }

    /// `r`-fold derivative.
    pub fn derive_n(&self, r: usize) -> Self {
        let mut s = self.clone();
        for _ in 0..r {
            s = s.derive();
        }
        s
    }

    /// Multiplies by the monomial `q^e`.
    pub fn shift(&self, e: Exponent) -> Result<Self> {
        let d = checked_lcm(self.lattice, *e.denom())?;
        let s = self.relattice(d)?;
        let k = e.numer() * (d / e.denom());
        Ok(QSeries {
            lattice: d,
            terms: s.terms.into_iter().map(|(n, c)| (n + k, c)).collect(),
            truncation: self.truncation + e,
        })
    }

    /// The substitution `q ↦ q^m` for a positive integer `m`.
    pub fn dilate(&self, m: i64) -> Self {
        assert!(m >= 1, "dilation factor must be positive");
        QSeries {
            lattice: self.lattice,
            terms: self.terms.iter().map(|(n, c)| (n * m, c.clone())).collect(),
            truncation: self.truncation * m,
        }
    }

    /// Multiplicative inverse, computed through `min(target, T − 2v)` where
    /// `v` is the valuation; the second bound is the most the input justifies.
    pub fn invert(&self, target: Exponent) -> Result<Self> {
        let (v, c) = self.valuation_leading()?;
        let d = self.lattice;
        let v_num = v.numer() * (d / v.denom());
        let t = target.min(self.truncation - v * 2);
        let span = floor_times(t, d) + v_num;
        let mut out = Self::zero(d, t);
        if span < 0 {
            return Ok(out);
        }
        let inv_lead = C::one() / c;
        let rel: Vec<(i64, C)> = self
            .terms
            .iter()
            .skip(1)
            .map(|(n, c)| (n - v_num, c.clone()))
            .take_while(|(i, _)| *i <= span)
            .collect();
        let step = rel.iter().fold(0i64, |g, (i, _)| g.gcd(i));
        if step == 0 {
            out.terms.insert(-v_num, inv_lead);
            return Ok(out);
        }
        let rel: Vec<(usize, C)> = rel
            .into_iter()
            .map(|(i, c)| ((i / step) as usize, c))
            .collect();
        let len = (span / step) as usize + 1;
        let mut b: Vec<C> = Vec::with_capacity(len);
        b.push(inv_lead.clone());
        for s in 1..len {
            let mut acc = C::zero();
            for (i, a) in &rel {
                if *i > s {
                    break;
                }
                let prev = &b[s - i];
                if !prev.is_zero() {
                    acc = acc + a.clone() * prev.clone();
                }
            }
            b.push(-(acc * inv_lead.clone()));
        }
        for (s, coeff) in b.into_iter().enumerate() {
            if !coeff.is_zero() {
                out.terms.insert(s as i64 * step - v_num, coeff);
            }
        }
        Ok(out)
    }

    /// Inverse to the full precision the input supports.
    pub fn recip(&self) -> Result<Self> {
        let v = self.valuation().ok_or(Error::ZeroSeries("inverse"))?;
        self.invert(self.truncation - v * 2)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.recip()?)
    }

    /// Integer power; negative powers go through [`QSeries::recip`].
    pub fn pow_int(&self, n: i64) -> Result<Self> {
        if n == 0 {
            let rel = self.truncation - self.valuation_bound();
            return Ok(Self::one(rel));
        }
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc: Option<Self> = None;
        let mut power = base;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => power.clone(),
                    Some(a) => a.mul(&power)?,
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            power = power.mul(&power)?;
        }
        Ok(acc.expect("nonzero exponent"))
    }

    /// First exponent, up to the common cutoff, where the two series differ.
    pub fn first_mismatch(&self, other: &Self) -> Result<Option<(Exponent, C, C)>> {
        let (a, b) = Self::align(self, other)?;
        let d = a.lattice;
        let mut keys: Vec<i64> = a.terms.keys().chain(b.terms.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for n in keys {
            let x = a.terms.get(&n).cloned().unwrap_or_else(C::zero);
            let y = b.terms.get(&n).cloned().unwrap_or_else(C::zero);
            if x != y {
                return Ok(Some((exp(n, d), x, y)));
            }
        }
        Ok(None)
    }

    /// Exact scalar `λ` with `self = λ·other` to the common cutoff, if one exists.
    pub fn proportionality(&self, other: &Self) -> Result<Option<C>> {
        let Some((v, lead)) = other.terms().next().map(|(e, c)| (e, c.clone())) else {
            return Ok(None);
        };
        let Some(mine) = self.coeff(v) else {
            return Ok(None);
        };
        let lambda = mine / lead;
        let scaled = other.scale(&lambda);
        Ok(match self.first_mismatch(&scaled)? {
            None => Some(lambda),
            Some(_) => None,
        })
    }

    /// Same lattice, cutoff and terms; stricter than `==`.
    pub fn identical(&self, other: &Self) -> bool {
        self.lattice == other.lattice
            && self.truncation == other.truncation
            && self.terms == other.terms
    }

    pub fn map<D: Scalar>(&self, f: impl Fn(&C) -> D) -> QSeries<D> {
        let mut r = QSeries::zero(self.lattice, self.truncation);
        for (n, c) in &self.terms {
            r.accumulate(*n, f(c));
        }
        r
    }

    /// Text rendering of the first `limit` terms.
    pub fn display_terms(&self, limit: usize) -> String
    where
        C: fmt::Display,
    {
        let mut out = String::new();
        for (i, (e, c)) in self.terms().take(limit).enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag == "1";
            if e.is_zero() {
                out.push_str(&mag);
                continue;
            }
            if !unit {
                out.push_str(&mag);
                out.push('*');
            }
            if e.is_one() {
                out.push('q');
            } else if e.is_integer() && !e.is_negative() {
                out.push_str(&format!("q^{e}"));
            } else {
                out.push_str(&format!("q^({e})"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        if self.len() > limit {
            out.push_str(" + ...");
        }
        out.push_str(&format!(" + O(q^>{})", self.truncation));
        out
    }
}

impl<C: Scalar> PartialEq for QSeries<C> {
    /// Identical terms on the common lattice up to the common cutoff.
    fn eq(&self, other: &Self) -> bool {
        matches!(self.first_mismatch(other), Ok(None))
    }
}

impl<C: Scalar + fmt::Display> fmt::Display for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_terms(usize::MAX))
    }
}

// Operator sugar; these panic on lattice capacity errors, which the fallible
// methods report instead.
macro_rules! binop {
    ($tr:ident, $method:ident, $call:ident) => {
        impl<C: Scalar> ops::$tr<&QSeries<C>> for &QSeries<C> {
            type Output = QSeries<C>;
            fn $method(self, rhs: &QSeries<C>) -> QSeries<C> {
                QSeries::$call(self, rhs).expect("series lattice capacity exceeded")
            }
        }
    };
}
binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl<C: Scalar> ops::Neg for &QSeries<C> {
    type Output = QSeries<C>;
    fn neg(self) -> QSeries<C> {
        QSeries::neg(self)
    }
}
