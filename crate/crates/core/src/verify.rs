//! Named identity checks and the suite that runs them.
//!
//! Each check builds both sides of an identity independently to the requested
//! cutoff and compares them coefficient by coefficient. Failures of lower
//! layers (for instance, precision that could not be reached) are reported as
//! their own status and never as a mismatch.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::builders::{
    bressoud_product, bressoud_theta, character_alt, character_sum, eisenstein_2_1,
    eisenstein_paper, eta_quotient, jacobi_bilateral, jacobi_product, weber_f1, ABIndex,
    EtaQuotientSpec,
};
use crate::error::{Error, Result};
use crate::modular::certify_membership;
use crate::properties::run_properties;
use crate::series::{exp, Exponent};
use crate::wronskian::{
    bressoud_ode, normalized_wronskian, raw_bressoud_wronskian, wronskian_quotient,
    wronskian_valuation,
};
use crate::{Rational, Series};

/// Checks run once per `(k, j)`.
pub const PER_INDEX_CHECKS: [&str; 5] = [
    "triple-product",
    "char-factorization",
    "char-alt",
    "theta-decomposition",
    "support-lattice",
];

/// Checks run once per `k`.
pub const PER_K_CHECKS: [&str; 4] = [
    "wk-identity",
    "fk-modularity",
    "ode-top-coefficient",
    "fk-constant-term",
];

/// Checks that take a seed instead of an index.
pub const SEEDED_CHECKS: [&str; 1] = ["algebraic-properties"];

pub const DEFAULT_ORDER: i64 = 40;
pub const DEFAULT_MAX_K: i64 = 4;
pub const DEFAULT_SEED: u64 = 20240601;
pub const DEFAULT_PROPERTY_CASES: usize = 1000;

pub fn check_names() -> impl Iterator<Item = &'static str> {
    PER_INDEX_CHECKS
        .into_iter()
        .chain(PER_K_CHECKS)
        .chain(SEEDED_CHECKS)
}

/// Number of reports `run_suite(max_k, _)` returns: `Σ_{k=2}^{max_k} (5k + 4)`.
pub fn suite_size(max_k: i64) -> usize {
    (2..=max_k).map(|k| (5 * k + 4) as usize).sum()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckParams {
    pub k: Option<i64>,
    pub j: Option<i64>,
    pub order: Exponent,
    pub seed: Option<u64>,
    /// Negative control: perturb one side of the identity.
    pub perturb: bool,
}

impl CheckParams {
    pub fn new(order: Exponent) -> Self {
        CheckParams {
            k: None,
            j: None,
            order,
            seed: None,
            perturb: false,
        }
    }

    pub fn with_k(mut self, k: i64) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_j(mut self, j: i64) -> Self {
        self.j = Some(j);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn perturbed(mut self) -> Self {
        self.perturb = true;
        self
    }

    fn k(&self, check: &str) -> Result<i64> {
        self.k
            .ok_or_else(|| Error::InvalidArgument(format!("check {check} needs k")))
    }

    fn index(&self, check: &str) -> Result<ABIndex> {
        let j = self
            .j
            .ok_or_else(|| Error::InvalidArgument(format!("check {check} needs j")))?;
        ABIndex::new(self.k(check)?, j)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Mismatch,
    InsufficientPrecision,
    Error,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub exponent: Exponent,
    pub lhs: Rational,
    pub rhs: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub check_name: String,
    pub params: CheckParams,
    pub pass: bool,
    pub status: Status,
    pub first_mismatch: Option<Mismatch>,
    pub error: Option<String>,
    /// Outcome is recorded but does not count towards the suite result.
    pub informational: bool,
    pub note: Option<String>,
    pub runtime_ms: u64,
}

impl VerificationReport {
    /// Canonical JSON. `runtime_ms` is included only when asked for, so the
    /// default output is reproducible byte for byte.
    pub fn to_json(&self, timings: bool) -> serde_json::Value {
        let mut params = serde_json::Map::new();
        if let Some(k) = self.params.k {
            params.insert("k".into(), json!(k));
        }
        if let Some(j) = self.params.j {
            params.insert("j".into(), json!(j));
        }
        params.insert("order".into(), json!(self.params.order.to_string()));
        if let Some(s) = self.params.seed {
            params.insert("seed".into(), json!(s));
        }
        if self.params.perturb {
            params.insert("perturb".into(), json!(true));
        }
        let mut v = json!({
            "check_name": self.check_name,
            "params": params,
            "pass": self.pass,
            "status": self.status,
            "informational": self.informational,
            "first_mismatch": self.first_mismatch.as_ref().map(|m| json!({
                "exponent": m.exponent.to_string(),
                "lhs": m.lhs.to_string(),
                "rhs": m.rhs.to_string(),
            })),
        });
        let obj = v.as_object_mut().expect("object literal");
        if let Some(e) = &self.error {
            obj.insert("error".into(), json!(e));
        }
        if let Some(n) = &self.note {
            obj.insert("note".into(), json!(n));
        }
        if timings {
            obj.insert("runtime_ms".into(), json!(self.runtime_ms));
        }
        v
    }

    /// One aligned line for text output.
    pub fn summary_line(&self) -> String {
        let mut params = Vec::new();
        if let Some(k) = self.params.k {
            params.push(format!("k={k}"));
        }
        if let Some(j) = self.params.j {
            params.push(format!("j={j}"));
        }
        if let Some(s) = self.params.seed {
            params.push(format!("seed={s}"));
        }
        params.push(format!("order={}", self.params.order));
        let verdict = match (self.status, self.informational) {
            (Status::Pass, false) => "PASS",
            (Status::Pass, true) => "PASS (info)",
            (_, true) => "FAIL (info)",
            (Status::Mismatch, false) => "FAIL",
            (Status::InsufficientPrecision, false) => "FAIL (precision)",
            (Status::Error, false) => "FAIL (error)",
        };
        let mut line = format!(
            "{:<12} {:<22} {:<28}",
            verdict,
            self.check_name,
            params.join(" ")
        );
        if let Some(m) = &self.first_mismatch {
            line.push_str(&format!(
                " first mismatch at q^{}: {} vs {}",
                m.exponent, m.lhs, m.rhs
            ));
        }
        if let Some(e) = &self.error {
            line.push_str(&format!(" {e}"));
        }
        if let Some(n) = &self.note {
            line.push_str(&format!(" [{n}]"));
        }
        line.trim_end().to_string()
    }

    /// Counts towards the suite: not informational, or passing anyway.
    pub fn acceptable(&self) -> bool {
        self.pass || self.informational
    }
}

/// What a check body produces before it is wrapped into a report.
struct Outcome {
    mismatch: Option<Mismatch>,
    note: Option<String>,
}

impl Outcome {
    fn from(mismatch: Option<Mismatch>) -> Self {
        Outcome {
            mismatch,
            note: None,
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn to_mismatch((exponent, lhs, rhs): (Exponent, Rational, Rational)) -> Mismatch {
    Mismatch { exponent, lhs, rhs }
}

/// Both sides must be known through `order`; compares up to it.
fn compare(lhs: &Series, rhs: &Series, order: Exponent) -> Result<Option<Mismatch>> {
    let (lhs, rhs) = (lhs.require(order)?, rhs.require(order)?);
    Ok(lhs.first_mismatch(&rhs)?.map(to_mismatch))
}

fn triple_product(p: &CheckParams) -> Result<Outcome> {
    let idx = p.index("triple-product")?;
    let lhs: Series = jacobi_bilateral(&idx, p.order);
    let rhs: Series = jacobi_product(&idx, p.order);
    Ok(Outcome::from(compare(&lhs, &rhs, p.order)?))
}

fn char_factorization(p: &CheckParams) -> Result<Outcome> {
    let idx = p.index("char-factorization")?;
    let lhs: Series = character_sum(&idx, p.order);
    let wide = p.order + 1;
    let rhs = weber_f1::<Rational>(wide).mul(&bressoud_product(&idx, wide))?;
    Ok(Outcome::from(compare(&lhs, &rhs, p.order)?))
}

fn char_alt(p: &CheckParams) -> Result<Outcome> {
    let idx = p.index("char-alt")?;
    let lhs: Series = character_alt(&idx, p.order);
    let rhs: Series = character_sum(&idx, p.order);
    Ok(Outcome::from(compare(&lhs, &rhs, p.order)?))
}

fn theta_decomposition(p: &CheckParams) -> Result<Outcome> {
    let idx = p.index("theta-decomposition")?;
    let lhs: Series = bressoud_theta(&idx, p.order)?;
    let rhs: Series = bressoud_product(&idx, p.order);
    Ok(Outcome::from(compare(&lhs, &rhs, p.order)?))
}

fn support_lattice(p: &CheckParams) -> Result<Outcome> {
    let idx = p.index("support-lattice")?;
    let b: Series = bressoud_product(&idx, p.order);
    let bad = b.terms().find(|(e, _)| {
        let rel = *e - idx.a();
        !rel.is_integer() || rel < Exponent::from(0)
    });
    Ok(Outcome::from(bad.map(|(e, c)| Mismatch {
        exponent: e,
        lhs: c.clone(),
        rhs: Rational::from_integer(0.into()),
    }))
    .note(format!("exponents in {} + Z>=0", idx.a())))
}

fn wk_identity(p: &CheckParams) -> Result<Outcome> {
    let k = p.k("wk-identity")?;
    let lhs: Series = normalized_wronskian(k, p.order)?;
    let mut spec = EtaQuotientSpec::wronskian_shape(k);
    if p.perturb {
        spec = EtaQuotientSpec::new(vec![(1, 2 * k * k), (2, -(2 * k - 1))])?;
    }
    let rhs: Series = eta_quotient(&spec, p.order)?;
    Ok(Outcome::from(compare(&lhs, &rhs, p.order)?))
}

fn fk_modularity(p: &CheckParams) -> Result<Outcome> {
    let k = p.k("fk-modularity")?;
    let mut f: Series = wronskian_quotient(k, p.order)?;
    if p.perturb {
        // beyond the solve window, inside the verified range
        let e = Exponent::from(crate::modular::dimension(2 * k) as i64 + 2);
        f = f.add(&Series::monomial(
            e,
            Rational::from_integer(1.into()),
            f.truncation(),
        ))?;
    }
    let cert = certify_membership(&f, 2 * k)?;
    let mismatch = cert.first_mismatch.as_ref().map(|(e, x, y)| Mismatch {
        exponent: Exponent::from(*e),
        lhs: x.clone(),
        rhs: y.clone(),
    });
    let combo: Vec<String> = cert.combination.iter().map(|c| c.to_string()).collect();
    Ok(Outcome::from(mismatch).note(format!(
        "weight {}, matched through {}, sturm bound {}, coordinates on G2^a E4^b (a descending) [{}]; q-expansion at infinity only",
        2 * k,
        cert.matched_through,
        cert.sturm_bound,
        combo.join(", ")
    )))
}

/// Solves `c = x·E₂ + y·E_{2,1}` on the first two coefficients, then checks
/// the remainder through `order`.
fn eisenstein_span(c: &Series, order: Exponent) -> Result<(Rational, Rational, Option<Mismatch>)> {
    let e2: Series = eisenstein_paper(2, order)?;
    let e21: Series = eisenstein_2_1(order);
    // E₂ = 1/24 − q − ..., E_{2,1} = 1/24 + q + ...
    let (a0, a1) = (e2.coeff_at(0), e2.coeff_at(1));
    let (b0, b1) = (e21.coeff_at(0), e21.coeff_at(1));
    let (c0, c1) = (c.coeff_at(0), c.coeff_at(1));
    let det = a0.clone() * b1.clone() - a1.clone() * b0.clone();
    let x = (c0.clone() * b1 - c1.clone() * b0) / det.clone();
    let y = (a0 * c1 - a1 * c0) / det;
    let image = e2.scale(&x).add(&e21.scale(&y))?;
    Ok((x, y, compare(c, &image, order)?))
}

fn ode_top_coefficient(p: &CheckParams) -> Result<Outcome> {
    let k = p.k("ode-top-coefficient")?;
    let t = p.order;
    let ode = bressoud_ode::<Rational>(k, t)?;
    for idx in ABIndex::family(k)? {
        let b: Series = bressoud_product(&idx, t + k);
        let image = ode.apply(&b)?;
        let zero = Series::zero(1, image.truncation());
        if image.truncation() <= idx.a() {
            return Err(Error::InsufficientPrecision {
                needed: idx.a(),
                available: image.truncation(),
            });
        }
        if let Some(m) = image.first_mismatch(&zero)? {
            return Ok(Outcome::from(Some(to_mismatch(m)))
                .note(format!("annihilation fails for j={}", idx.j())));
        }
    }
    let w: Series = raw_bressoud_wronskian(k, t + wronskian_valuation(k) + 1)?;
    let abel = w.derive().mul(&w.recip()?)?.neg();
    if let Some(m) = compare(ode.top(), &abel, t)? {
        return Ok(Outcome::from(Some(m)).note("abel identity fails"));
    }
    let (x, y, m) = eisenstein_span(ode.top(), t)?;
    if m.is_some() {
        return Ok(Outcome::from(m).note("top coefficient not in the span of E2 and E2,1"));
    }
    let (ex, ey) = (
        Rational::from_integer((-2 * k * (k - 1)).into()),
        Rational::from_integer((2 * k - 1).into()),
    );
    let verdict = if (x.clone(), y.clone()) == (ex.clone(), ey.clone()) {
        "matches"
    } else {
        "differs from"
    };
    Ok(Outcome::from(None).note(format!(
        "c_{} = ({x})*E2 + ({y})*E2,1; {verdict} -(2k(k-1)E2 + (1-2k)E2,1) = ({ex})*E2 + ({ey})*E2,1",
        k - 1
    )))
}

fn fk_constant_term(p: &CheckParams) -> Result<Outcome> {
    let k = p.k("fk-constant-term")?;
    let f: Series = wronskian_quotient(k, p.order)?;
    let ode = bressoud_ode::<Rational>(k, p.order)?;
    let c0 = ode.constant_term().require(p.order)?;
    let f = f.require(p.order)?;
    match f.proportionality(&c0)? {
        Some(lambda) => {
            let one = Rational::from_integer(1.into());
            let unit = lambda == one || lambda == -one;
            Ok(Outcome::from(None).note(format!(
                "F_{k} = ({lambda})*c_0; the factor is {}",
                if unit { "a sign" } else { "not +-1" }
            )))
        }
        None => {
            let lead = c0.coeff_at(0);
            let lambda = if lead == Rational::from_integer(0.into()) {
                lead.clone()
            } else {
                f.coeff_at(0) / lead
            };
            Ok(
                Outcome::from(f.first_mismatch(&c0.scale(&lambda))?.map(to_mismatch))
                    .note("not proportional"),
            )
        }
    }
}

fn algebraic_properties(p: &CheckParams) -> Result<Outcome> {
    let seed = p.seed.unwrap_or(DEFAULT_SEED);
    let s = run_properties(seed, DEFAULT_PROPERTY_CASES);
    let note = format!("{} checks over {} cases", s.checks, s.cases);
    match s.failures.first() {
        None => Ok(Outcome::from(None).note(note)),
        Some(f) => Err(Error::InvalidArgument(format!(
            "{} failed in case {}: {}; {} failures in total",
            f.property,
            f.case,
            f.detail,
            s.failures.len()
        ))),
    }
}

/// Runs one named check. Only an unknown name or missing parameters are
/// errors; everything else is reported.
pub fn run_check(name: &str, params: &CheckParams) -> Result<VerificationReport> {
    let body: fn(&CheckParams) -> Result<Outcome> = match name {
        "triple-product" => triple_product,
        "char-factorization" => char_factorization,
        "char-alt" => char_alt,
        "theta-decomposition" => theta_decomposition,
        "support-lattice" => support_lattice,
        "wk-identity" => wk_identity,
        "fk-modularity" => fk_modularity,
        "ode-top-coefficient" => ode_top_coefficient,
        "fk-constant-term" => fk_constant_term,
        "algebraic-properties" => algebraic_properties,
        other => return Err(Error::UnknownCheck(other.to_string())),
    };
    if PER_INDEX_CHECKS.contains(&name) {
        params.index(name)?;
    } else if PER_K_CHECKS.contains(&name) {
        ABIndex::new(params.k(name)?, 1)?;
    }
    let start = Instant::now();
    let result = body(params);
    let runtime_ms = start.elapsed().as_millis() as u64;
    let informational = name == "char-factorization" && params.k.is_some_and(|k| k % 2 == 1);
    let mut report = VerificationReport {
        check_name: name.to_string(),
        params: params.clone(),
        pass: false,
        status: Status::Error,
        first_mismatch: None,
        error: None,
        informational,
        note: None,
        runtime_ms,
    };
    match result {
        Ok(outcome) => {
            report.status = if outcome.mismatch.is_some() {
                Status::Mismatch
            } else {
                Status::Pass
            };
            report.pass = outcome.mismatch.is_none();
            report.first_mismatch = outcome.mismatch;
            report.note = outcome.note;
        }
        Err(e) => {
            if matches!(e, Error::InsufficientPrecision { .. }) {
                report.status = Status::InsufficientPrecision;
            }
            report.error = Some(e.to_string());
        }
    }
    if informational {
        let tag = "odd k: recorded, not counted";
        report.note = Some(match report.note.take() {
            Some(n) => format!("{n}; {tag}"),
            None => tag.to_string(),
        });
    }
    Ok(report)
}

/// The schedule `run_suite` executes, in report order.
pub fn suite_plan(max_k: i64, order: Exponent) -> Result<Vec<(&'static str, CheckParams)>> {
    if max_k < 2 {
        return Err(Error::InvalidArgument(format!(
            "max_k = {max_k} must be at least 2"
        )));
    }
    let mut plan = Vec::with_capacity(suite_size(max_k));
    for k in 2..=max_k {
        for name in PER_INDEX_CHECKS {
            for j in 1..=k {
                plan.push((name, CheckParams::new(order).with_k(k).with_j(j)));
            }
        }
        for name in PER_K_CHECKS {
            plan.push((name, CheckParams::new(order).with_k(k)));
        }
    }
    Ok(plan)
}

/// Every check for `2 <= k <= max_k` and all `j`, in parallel, reported in
/// plan order.
pub fn run_suite(max_k: i64, order: Exponent) -> Result<Vec<VerificationReport>> {
    suite_plan(max_k, order)?
        .into_par_iter()
        .map(|(name, p)| run_check(name, &p))
        .collect()
}

pub fn default_order() -> Exponent {
    exp(DEFAULT_ORDER, 1)
}
