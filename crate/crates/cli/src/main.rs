use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use abseries::builders::{
    bressoud_product, bressoud_theta, character_alt, character_sum, dedekind_eta, eisenstein_2_1,
    eisenstein_e4, eisenstein_paper, eta_quotient, g2_level2, theta_congruent, weber_f1, ABIndex,
    EtaQuotientSpec,
};
use abseries::json::{self, parse_exponent};
use abseries::modular::certify_membership;
use abseries::verify::{self, CheckParams, VerificationReport};
use abseries::{wronskian, Exponent, Series};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Exact q-series for Andrews-Bressoud series, their Wronskians and
/// modularity certificates.
#[derive(Parser)]
#[command(name = "abw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Expand one series.
    Series(SeriesArgs),
    /// Normalized Wronskian W_k of B_{k,1..k}.
    Wronskian(KArgs),
    /// F_k, the shifted Wronskian over the Wronskian.
    Fk(KArgs),
    /// Coefficients c_0..c_{k-1} of the monic operator annihilating B_{k,1..k}.
    Ode(KArgs),
    /// Certify that a series in JSON form is a modular form on Gamma0(2).
    Certify(CertifyArgs),
    /// Run identity checks.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Builder {
    Eta,
    EtaQuotient,
    WeberF1,
    BressoudProduct,
    BressoudTheta,
    Theta,
    ChSum,
    ChAlt,
    E2,
    E21,
    E4,
    G2,
    Eisenstein,
}

#[derive(Args)]
struct SeriesArgs {
    builder: Builder,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    j: Option<i64>,
    #[arg(long)]
    h: Option<i64>,
    #[arg(long, default_value_t = 1)]
    scale: i64,
    /// Eta-quotient factors as scale:power pairs, e.g. 1:7,2:-3.
    #[arg(long)]
    factors: Option<String>,
    /// Weight 2l for the `eisenstein` builder.
    #[arg(long, default_value_t = 2)]
    weight: i64,
    /// Exponent cutoff, an integer or p/q.
    #[arg(long, default_value = "40", value_parser = order)]
    order: Exponent,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct KArgs {
    #[arg(long)]
    k: i64,
    #[arg(long, default_value = "40", value_parser = order)]
    order: Exponent,
    /// Aligned text instead of JSON.
    #[arg(long)]
    text: bool,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    weight: i64,
    /// Series JSON file, or `-` for standard input.
    #[arg(long)]
    input: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only this check.
    #[arg(long)]
    check: Option<String>,
    #[arg(long)]
    k: Option<i64>,
    #[arg(long)]
    j: Option<i64>,
    #[arg(long, default_value_t = verify::DEFAULT_MAX_K)]
    max_k: i64,
    #[arg(long, default_value = "40", value_parser = order)]
    order: Exponent,
    #[arg(long, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    /// Perturb one side of the identity (negative control).
    #[arg(long)]
    perturb: bool,
    #[arg(long)]
    json: bool,
    /// Include wall-clock times in JSON reports.
    #[arg(long)]
    timings: bool,
}

fn order(s: &str) -> Result<Exponent, String> {
    parse_exponent(s).map_err(|e| e.to_string())
}

fn need(v: Option<i64>, flag: &str) -> Result<i64> {
    v.with_context(|| format!("--{flag} is required for this builder"))
}

fn index(args: &SeriesArgs) -> Result<ABIndex> {
    Ok(ABIndex::new(need(args.k, "k")?, need(args.j, "j")?)?)
}

fn build(args: &SeriesArgs) -> Result<Series> {
    let t = args.order;
    Ok(match args.builder {
        Builder::Eta => dedekind_eta(args.scale, t)?,
        Builder::EtaQuotient => {
            let text = args
                .factors
                .as_deref()
                .context("--factors is required for eta-quotient")?;
            eta_quotient(&EtaQuotientSpec::parse(text)?, t)?
        }
        Builder::WeberF1 => weber_f1(t),
        Builder::BressoudProduct => bressoud_product(&index(args)?, t),
        Builder::BressoudTheta => bressoud_theta(&index(args)?, t)?,
        Builder::Theta => theta_congruent(need(args.k, "k")?, need(args.h, "h")?, t),
        Builder::ChSum => character_sum(&index(args)?, t),
        Builder::ChAlt => character_alt(&index(args)?, t),
        Builder::E2 => eisenstein_paper(2, t)?,
        Builder::E21 => eisenstein_2_1(t),
        Builder::E4 => eisenstein_e4(t),
        Builder::G2 => g2_level2(t),
        Builder::Eisenstein => eisenstein_paper(args.weight, t)?,
    })
}

const TABLE_TERMS: usize = 8;

fn table(s: &Series) -> String {
    let rows: Vec<(String, String)> = s
        .terms()
        .take(TABLE_TERMS)
        .map(|(e, c)| (e.to_string(), c.to_string()))
        .collect();
    let width = rows
        .iter()
        .map(|(e, _)| e.len())
        .max()
        .unwrap_or(0)
        .max("exponent".len());
    let mut out = format!("{:<width$}  coefficient\n", "exponent");
    for (e, c) in rows {
        out.push_str(&format!("{e:<width$}  {c}\n"));
    }
    let shown = s.len().min(TABLE_TERMS);
    out.push_str(&format!(
        "({shown} of {} known terms, truncation {})\n",
        s.len(),
        s.truncation()
    ));
    out
}

fn emit_series(s: &Series, text: bool) {
    if text {
        print!("{}", table(s));
    } else {
        println!("{}", json::to_string(s));
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn verify_reports(args: &VerifyArgs) -> Result<Vec<VerificationReport>> {
    let base = |k: Option<i64>, j: Option<i64>| {
        let mut p = CheckParams::new(args.order);
        p.k = k;
        p.j = j;
        p.perturb = args.perturb;
        p
    };
    let Some(name) = args.check.as_deref() else {
        let mut reports = verify::run_suite(args.max_k, args.order)?;
        reports.push(verify::run_check(
            "algebraic-properties",
            &base(None, None).with_seed(args.seed),
        )?);
        return Ok(reports);
    };
    if !verify::check_names().any(|n| n == name) {
        bail!(abseries::Error::UnknownCheck(name.to_string()));
    }
    let mut plan = Vec::new();
    let ks: Vec<i64> = match args.k {
        Some(k) => vec![k],
        None => (2..=args.max_k).collect(),
    };
    if verify::SEEDED_CHECKS.contains(&name) {
        plan.push(base(None, None).with_seed(args.seed));
    } else if verify::PER_K_CHECKS.contains(&name) {
        plan.extend(ks.iter().map(|&k| base(Some(k), None)));
    } else {
        for &k in &ks {
            match args.j {
                Some(j) => plan.push(base(Some(k), Some(j))),
                None => plan.extend((1..=k).map(|j| base(Some(k), Some(j)))),
            }
        }
    }
    plan.iter()
        .map(|p| verify::run_check(name, p).map_err(Into::into))
        .collect()
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Series(args) => {
            let s = build(&args)?;
            emit_series(&s, !args.json);
        }
        Command::Wronskian(a) => {
            emit_series(&wronskian::normalized_wronskian(a.k, a.order)?, a.text)
        }
        Command::Fk(a) => emit_series(&wronskian::wronskian_quotient(a.k, a.order)?, a.text),
        Command::Ode(a) => {
            let ode = wronskian::bressoud_ode::<abseries::Rational>(a.k, a.order)?;
            if a.text {
                for (r, c) in ode.coefficients().iter().enumerate() {
                    println!("c_{r}");
                    print!("{}", table(c));
                }
            } else {
                let coeffs: Vec<_> = ode.coefficients().iter().map(json::to_value).collect();
                println!("{}", json!({ "k": a.k, "coefficients": coeffs }));
            }
        }
        Command::Certify(a) => {
            let f = json::from_str(&read_input(&a.input)?)?;
            let cert = certify_membership(&f, a.weight)?;
            println!("{}", cert.to_json());
            return Ok(cert.pass);
        }
        Command::Verify(args) => {
            let reports = verify_reports(&args)?;
            if args.json {
                let all: Vec<_> = reports.iter().map(|r| r.to_json(args.timings)).collect();
                println!("{}", serde_json::Value::Array(all));
            } else {
                for r in &reports {
                    println!("{}", r.summary_line());
                }
                let failed = reports.iter().filter(|r| !r.acceptable()).count();
                println!("{} checks, {} failed", reports.len(), failed);
            }
            return Ok(reports.iter().all(VerificationReport::acceptable));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
