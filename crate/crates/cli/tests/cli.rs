use std::path::PathBuf;
use std::process::{Command, Output};

use abseries::json;

fn abw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("abw-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn series_text_table() {
    let o = abw(&["series", "eta", "--order", "10"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0].split_whitespace().collect::<Vec<_>>(),
        ["exponent", "coefficient"]
    );
    assert_eq!(
        lines[1].split_whitespace().collect::<Vec<_>>(),
        ["1/24", "1"]
    );
    assert_eq!(
        lines[2].split_whitespace().collect::<Vec<_>>(),
        ["25/24", "-1"]
    );
    assert!(lines.last().unwrap().contains("truncation 10"));
}

#[test]
fn table_shows_eight_terms() {
    let o = abw(&[
        "series",
        "bressoud-product",
        "--k",
        "3",
        "--j",
        "2",
        "--order",
        "30",
    ]);
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 1 + 8 + 1);
}

#[test]
fn series_json_is_canonical() {
    let o = abw(&[
        "series",
        "eta-quotient",
        "--factors",
        "2:1,1:-1",
        "--order",
        "3",
        "--json",
    ]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o).trim(),
        r#"{"lattice":24,"truncation":"3","terms":[[1,"1"],[25,"1"],[49,"1"]]}"#
    );
    let weber = abw(&["series", "weber-f1", "--order", "3", "--json"]);
    assert_eq!(stdout(&weber), stdout(&o));
}

#[test]
fn missing_parameters_are_usage_errors() {
    let o = abw(&["series", "bressoud-product", "--k", "2", "--order", "5"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--j"));
    assert_eq!(abw(&["series", "nope"]).status.code(), Some(2));
}

#[test]
fn fk_certifies() {
    let o = abw(&["fk", "--k", "2", "--order", "24"]);
    assert!(o.status.success());
    let path = scratch("f2.json");
    std::fs::write(&path, stdout(&o)).unwrap();
    let c = abw(&[
        "certify",
        "--weight",
        "4",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert!(c.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&c)).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["combination"], serde_json::json!(["3/8", "5/8"]));
    assert_eq!(v["sturm_bound"], "1");
    let wrong = abw(&[
        "certify",
        "--weight",
        "2",
        "--input",
        path.to_str().unwrap(),
    ]);
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn wronskian_and_ode_json() {
    let w = abw(&["wronskian", "--k", "2", "--order", "5"]);
    let eta = abw(&[
        "series",
        "eta-quotient",
        "--factors",
        "1:7,2:-3",
        "--order",
        "5",
        "--json",
    ]);
    assert!(w.status.success());
    let w = json::from_str(&stdout(&w)).unwrap();
    let eta = json::from_str(&stdout(&eta)).unwrap();
    assert_eq!(w.truncation(), eta.truncation());
    assert!(w.first_mismatch(&eta).unwrap().is_none());
    let o = abw(&["ode", "--k", "2", "--order", "4"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let coeffs = v["coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 2);
    assert!(serde_json::to_string(&coeffs[0])
        .unwrap()
        .starts_with(r#"{"lattice":192,"truncation":"4","terms":[[0,"-1/288"]"#));
}

#[test]
fn verify_single_check_and_control() {
    let ok = abw(&[
        "verify",
        "--check",
        "wk-identity",
        "--k",
        "2",
        "--order",
        "40",
    ]);
    assert!(ok.status.success());
    assert!(stdout(&ok).starts_with("PASS"));
    let bad = abw(&[
        "verify",
        "--check",
        "wk-identity",
        "--k",
        "2",
        "--order",
        "40",
        "--perturb",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("first mismatch at q^1/24"));
    let unknown = abw(&["verify", "--check", "nope"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("nope"));
}

#[test]
fn verify_json_is_reproducible() {
    let args = ["verify", "--max-k", "2", "--order", "20", "--json"];
    let a = abw(&args);
    let b = abw(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 14 + 1);
    assert!(reports.iter().all(|r| r.get("runtime_ms").is_none()));
    assert_eq!(
        reports.last().unwrap()["check_name"],
        "algebraic-properties"
    );
}

#[test]
fn odd_k_does_not_fail_the_run() {
    let o = abw(&[
        "verify",
        "--check",
        "char-factorization",
        "--k",
        "3",
        "--order",
        "12",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("(info)"));
}
