use abseries::json;
use abseries::modular::certify_membership;
use abseries::verify::{run_check, run_suite, suite_size, CheckParams, Status};
use abseries::wronskian::{normalized_shifted_wronskian, normalized_wronskian, wronskian_quotient};
use abseries::{Exponent, Series};

#[test]
fn suite_at_k2_passes() {
    let reports = run_suite(2, Exponent::from(40)).unwrap();
    assert_eq!(reports.len(), suite_size(2));
    for r in &reports {
        assert!(r.pass, "{}", r.summary_line());
        assert_eq!(r.first_mismatch.is_none(), r.pass);
    }
}

#[test]
fn suite_count_and_policy() {
    let reports = run_suite(3, Exponent::from(20)).unwrap();
    assert_eq!(reports.len(), 14 + 19);
    let odd: Vec<_> = reports
        .iter()
        .filter(|r| r.check_name == "char-factorization" && r.params.k == Some(3))
        .collect();
    assert_eq!(odd.len(), 3);
    assert!(odd.iter().all(|r| r.informational));
    assert!(reports
        .iter()
        .filter(|r| r.informational)
        .all(|r| r.params.k == Some(3)));
}

#[test]
fn reports_are_deterministic() {
    let a = run_suite(2, Exponent::from(15)).unwrap();
    let b = run_suite(2, Exponent::from(15)).unwrap();
    let text = |rs: &[abseries::verify::VerificationReport]| {
        rs.iter()
            .map(|r| r.to_json(false).to_string())
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(text(&a), text(&b));
}

#[test]
fn perturbed_control_fails_with_mismatch() {
    let r = run_check(
        "wk-identity",
        &CheckParams::new(Exponent::from(40)).with_k(2).perturbed(),
    )
    .unwrap();
    assert_eq!(r.status, Status::Mismatch);
    assert!(r.first_mismatch.is_some());
}

#[test]
fn quotient_is_ratio_of_normalized_wronskians() {
    let t = Exponent::from(20);
    let f: Series = wronskian_quotient(3, t).unwrap();
    let w: Series = normalized_wronskian(3, Exponent::from(25)).unwrap();
    let wt: Series = normalized_shifted_wronskian(3, Exponent::from(25)).unwrap();
    let prod = f.mul(&w).unwrap();
    assert!(prod.truncation() >= t);
    assert!(prod == wt);
}

#[test]
fn json_round_trip_through_certification() {
    let f: Series = wronskian_quotient(2, Exponent::from(24)).unwrap();
    let decoded = json::from_str(&json::to_string(&f)).unwrap();
    assert!(decoded.identical(&f));
    let a = certify_membership(&f, 4).unwrap();
    let b = certify_membership(&decoded, 4).unwrap();
    assert_eq!(a, b);
    assert!(a.pass);
}
