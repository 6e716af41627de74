//! Wronskians of series vectors and the monic operator they determine.
//!
//! Derivatives are taken with `D = q·d/dq` (see [`QSeries::derive`]). Two
//! determinant algorithms are provided: fraction-free Bareiss elimination,
//! which is what the pipeline uses, and cofactor expansion as an
//! independent check.

use rayon::prelude::*;

use crate::builders::{bressoud_product, ABIndex};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{exp, Exponent, QSeries};

/// A rectangular matrix of series on a common lattice and cutoff.
#[derive(Clone, Debug)]
pub struct SeriesMatrix<C> {
    rows: usize,
    cols: usize,
    entries: Vec<QSeries<C>>,
}

impl<C: Scalar> SeriesMatrix<C> {
    /// Row-major entries, aligned to the lcm lattice and the minimum cutoff.
    pub fn new(rows: usize, cols: usize, entries: Vec<QSeries<C>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let mut lattice = 1i64;
        let mut t: Option<Exponent> = None;
        for e in &entries {
            lattice = num_integer::lcm(lattice, e.lattice());
            t = Some(t.map_or(e.truncation(), |t| t.min(e.truncation())));
        }
        let entries = match t {
            None => entries,
            Some(t) => entries
                .iter()
                .map(|e| Ok(e.relattice(lattice)?.truncate(t)))
                .collect::<Result<_>>()?,
        };
        Ok(SeriesMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Rows `D^first f, ..., D^{first+count−1} f` for the column vector `fs`.
    pub fn derivative_matrix(fs: &[QSeries<C>], first: usize, count: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(fs.len() * count);
        let mut current: Vec<QSeries<C>> = fs.iter().map(|f| f.derive_n(first)).collect();
        for r in 0..count {
            if r > 0 {
                current = current.iter().map(QSeries::derive).collect();
            }
            entries.extend(current.iter().cloned());
        }
        Self::new(count, fs.len(), entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &QSeries<C> {
        &self.entries[i * self.cols + j]
    }

    /// The submatrix on the given rows, in the given order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        let entries = rows
            .iter()
            .flat_map(|&i| (0..self.cols).map(move |j| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        SeriesMatrix {
            rows: rows.len(),
            cols: self.cols,
            entries,
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn to_rows(&self) -> Vec<Vec<QSeries<C>>> {
        self.entries.chunks(self.cols).map(|r| r.to_vec()).collect()
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols || self.rows == 0 {
            return Err(Error::InvalidArgument(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(self.rows)
    }
}

/// Fraction-free (Bareiss) elimination with valuation pivoting.
///
/// Each division by the previous pivot is exact in the ring, so truncation
/// bookkeeping stays sound. If a pivot column vanishes to working precision
/// the result is the zero series, known through a bound derived from the
/// cutoffs and valuations of the remaining block.
pub fn determinant_bareiss<C: Scalar>(m: &SeriesMatrix<C>) -> Result<QSeries<C>> {
    let n = m.require_square()?;
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev: Option<(QSeries<C>, QSeries<C>)> = None;
    for k in 0..n {
        let pivot = (k..n)
            .filter(|&i| !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].valuation().expect("nonzero"));
        let Some(p) = pivot else {
            return Ok(vanishing_bound(&a, k, prev.as_ref().map(|(p, _)| p)));
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        if k + 1 == n {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].mul(&a[i][j])?.sub(&a[i][k].mul(&a[k][j])?)?;
                a[i][j] = match &prev {
                    None => num,
                    Some((_, inv)) => num.mul(inv)?,
                };
            }
        }
        let inv = a[k][k].recip()?;
        prev = Some((a[k][k].clone(), inv));
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

fn vanishing_bound<C: Scalar>(
    a: &[Vec<QSeries<C>>],
    k: usize,
    prev: Option<&QSeries<C>>,
) -> QSeries<C> {
    let n = a.len();
    // det(trailing block) has valuation > min_i T_ik + Σ_{c≠k} min_i v(a_ic)
    let mut bound = (k..n)
        .map(|i| a[i][k].truncation())
        .min()
        .expect("nonempty");
    for c in (k..n).filter(|&c| c != k) {
        bound += (k..n)
            .map(|i| a[i][c].valuation_bound())
            .min()
            .expect("nonempty");
    }
    if let Some(p) = prev {
        bound -= p.valuation().expect("pivot is nonzero") * (n - k - 1) as i64;
    }
    QSeries::zero(a[k][k].lattice(), bound)
}

/// Laplace expansion along the first row.
pub fn determinant_cofactor<C: Scalar>(m: &SeriesMatrix<C>) -> Result<QSeries<C>> {
    let n = m.require_square()?;
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    cofactor(m, &rows, &cols)
}

fn cofactor<C: Scalar>(m: &SeriesMatrix<C>, rows: &[usize], cols: &[usize]) -> Result<QSeries<C>> {
    if rows.len() == 1 {
        return Ok(m.get(rows[0], cols[0]).clone());
    }
    let mut acc: Option<QSeries<C>> = None;
    for (pos, &c) in cols.iter().enumerate() {
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = cofactor(m, &rows[1..], &rest)?;
        let mut term = m.get(rows[0], c).mul(&minor)?;
        if pos % 2 == 1 {
            term = term.neg();
        }
        acc = Some(match acc {
            None => term,
            Some(a) => a.add(&term)?,
        });
    }
    Ok(acc.expect("nonempty"))
}

fn nonempty<C>(fs: &[QSeries<C>]) -> Result<()> {
    if fs.is_empty() {
        return Err(Error::InvalidArgument("Wronskian of an empty list".into()));
    }
    Ok(())
}

/// `det(D^r f_j)` for `r = 0..k−1`.
pub fn wronskian<C: Scalar>(fs: &[QSeries<C>]) -> Result<QSeries<C>> {
    nonempty(fs)?;
    determinant_bareiss(&SeriesMatrix::derivative_matrix(fs, 0, fs.len())?)
}

/// `det(D^r f_j)` for `r = 1..k`.
pub fn shifted_wronskian<C: Scalar>(fs: &[QSeries<C>]) -> Result<QSeries<C>> {
    nonempty(fs)?;
    determinant_bareiss(&SeriesMatrix::derivative_matrix(fs, 1, fs.len())?)
}

/// `B_{k,1}, ..., B_{k,k}`, each known through `truncation`.
pub fn bressoud_system<C: Scalar>(k: i64, truncation: Exponent) -> Result<Vec<QSeries<C>>> {
    Ok(ABIndex::family(k)?
        .iter()
        .map(|idx| bressoud_product(idx, truncation))
        .collect())
}

/// Valuation `(2k² − 4k + 1)/24` of `W_k`.
pub fn wronskian_valuation(k: i64) -> Exponent {
    exp(2 * k * k - 4 * k + 1, 24)
}

/// Runs `build` at increasing input cutoffs until the output reaches `target`.
///
/// Output cutoffs of every operation here shift one-for-one with the input
/// cutoff, so one correction step normally suffices.
fn with_precision<T>(
    target: Exponent,
    margin: Exponent,
    mut build: impl FnMut(Exponent) -> Result<T>,
    achieved: impl Fn(&T) -> Exponent,
) -> Result<T> {
    let mut input = target + margin;
    let mut last = None;
    for _ in 0..4 {
        let out = build(input)?;
        let got = achieved(&out);
        if got >= target {
            return Ok(out);
        }
        input += (target - got).max(Exponent::from(1));
        last = Some(got);
    }
    Err(Error::InsufficientPrecision {
        needed: target,
        available: last.expect("ran at least once"),
    })
}

fn default_margin(k: i64) -> Exponent {
    wronskian_valuation(k) + k
}

fn normalize<C: Scalar>(raw: QSeries<C>) -> Result<QSeries<C>> {
    let (_, lead) = raw
        .valuation_leading()
        .map_err(|_| Error::InsufficientPrecision {
            needed: raw.truncation(),
            available: raw.truncation(),
        })?;
    Ok(raw.scale(&(C::one() / lead)))
}

/// The raw Wronskian of `B_{k,1..k}`, known through `truncation`.
pub fn raw_bressoud_wronskian<C: Scalar>(k: i64, truncation: Exponent) -> Result<QSeries<C>> {
    with_precision(
        truncation,
        default_margin(k),
        |t| wronskian(&bressoud_system::<C>(k, t)?),
        QSeries::truncation,
    )
    .map(|w| w.truncate(truncation))
}

/// `W_k`: the Wronskian of `B_{k,1..k}` scaled to leading coefficient 1.
pub fn normalized_wronskian<C: Scalar>(k: i64, truncation: Exponent) -> Result<QSeries<C>> {
    normalize(raw_bressoud_wronskian(k, truncation)?)
}

/// `W̃_k`: the shifted Wronskian of `B_{k,1..k}` scaled to leading coefficient 1.
pub fn normalized_shifted_wronskian<C: Scalar>(k: i64, truncation: Exponent) -> Result<QSeries<C>> {
    let raw = with_precision(
        truncation,
        default_margin(k),
        |t| shifted_wronskian(&bressoud_system::<C>(k, t)?),
        QSeries::truncation,
    )?;
    normalize(raw.truncate(truncation))
}

/// `F_k = W̃_k / W_k`.
pub fn wronskian_quotient<C: Scalar>(k: i64, truncation: Exponent) -> Result<QSeries<C>> {
    let build = |t: Exponent| -> Result<QSeries<C>> {
        let fs = bressoud_system::<C>(k, t)?;
        let w = normalize(wronskian(&fs)?)?;
        let wt = normalize(shifted_wronskian(&fs)?)?;
        wt.mul(&w.recip()?)
    };
    let f = with_precision(
        truncation,
        default_margin(k) * 2,
        build,
        QSeries::truncation,
    )?;
    Ok(f.truncate(truncation))
}

/// `D^k + c_{k−1} D^{k−1} + ... + c_0` with `D = q·d/dq`.
#[derive(Clone, Debug)]
pub struct MonicODE<C> {
    coefficients: Vec<QSeries<C>>,
}

impl<C: Scalar> MonicODE<C> {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// `c_0, ..., c_{k−1}`.
    pub fn coefficients(&self) -> &[QSeries<C>] {
        &self.coefficients
    }

    pub fn constant_term(&self) -> &QSeries<C> {
        &self.coefficients[0]
    }

    /// `c_{k−1}`.
    pub fn top(&self) -> &QSeries<C> {
        self.coefficients.last().expect("order >= 1")
    }

    /// Smallest coefficient cutoff.
    pub fn truncation(&self) -> Exponent {
        self.coefficients
            .iter()
            .map(QSeries::truncation)
            .min()
            .expect("order >= 1")
    }

    /// `L y`.
    pub fn apply(&self, y: &QSeries<C>) -> Result<QSeries<C>> {
        let mut acc = y.derive_n(self.order());
        let mut dy = y.clone();
        for c in &self.coefficients {
            acc = acc.add(&c.mul(&dy)?)?;
            dy = dy.derive();
        }
        Ok(acc)
    }

    pub fn truncate(&self, t: Exponent) -> Self {
        MonicODE {
            coefficients: self.coefficients.iter().map(|c| c.truncate(t)).collect(),
        }
    }
}

/// The monic operator annihilating `fs`, by Cramer's rule on the derivative
/// matrix: `c_r = (−1)^{k−r} W_r / W`, where `W_r` drops row `r` and appends
/// row `k`.
pub fn ode_coefficients<C: Scalar>(fs: &[QSeries<C>]) -> Result<MonicODE<C>> {
    nonempty(fs)?;
    let k = fs.len();
    let full = SeriesMatrix::derivative_matrix(fs, 0, k + 1)?;
    let w = determinant_bareiss(&full.select_rows(&(0..k).collect::<Vec<_>>()))?;
    if w.is_zero() {
        return Err(Error::DependentSystem);
    }
    let inv = w.recip()?;
    let coefficients = (0..k)
        .into_par_iter()
        .map(|r| {
            let rows: Vec<usize> = (0..=k).filter(|&i| i != r).collect();
            let wr = determinant_bareiss(&full.select_rows(&rows))?;
            let c = wr.mul(&inv)?;
            Ok(if (k - r) % 2 == 1 { c.neg() } else { c })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MonicODE { coefficients })
}

/// The operator annihilating `B_{k,1..k}`, coefficients known through `truncation`.
pub fn bressoud_ode<C: Scalar>(k: i64, truncation: Exponent) -> Result<MonicODE<C>> {
    let ode = with_precision(
        truncation,
        default_margin(k) * 2,
        |t| ode_coefficients(&bressoud_system::<C>(k, t)?),
        MonicODE::truncation,
    )?;
    Ok(ode.truncate(truncation))
}
