//! Job selection, report determinism and serialization of the verification driver.

use dlimit_core::suite::{self, CheckKind, Filter, SuiteConfig, SuiteOutput};
use dlimit_core::tables::TableId;

fn rows(ids: &[&str]) -> Vec<String> {
    ids.iter().map(|s| s.to_string()).collect()
}

#[test]
fn empty_filter_runs_nothing() {
    let r = suite::run_suite(&Filter::default(), &SuiteConfig::default()).unwrap();
    assert!(r.is_empty());
    assert!(suite::suite_passed(&r));
}

#[test]
fn first_kac_rows_pass_at_dmax_4() {
    let filter = Filter {
        tables: vec![TableId::Kac],
        rows: rows(&["1", "2", "3", "4"]),
        ..Filter::kinds(&[CheckKind::Mf])
    };
    let config = SuiteConfig {
        dmax: Some(4),
        ..Default::default()
    };
    let r = suite::run_suite(&filter, &config).unwrap();
    assert_eq!(r.len(), 4);
    assert!(r.iter().all(|x| x.passed), "{r:#?}");
    assert!(r.iter().all(|x| x.inputs["dmax"] == "4"));
}

#[test]
fn heisenberg_pfaffians_confirm_t_to_the_n() {
    let r = suite::run_suite(
        &Filter::kinds(&[CheckKind::Pfaffian]),
        &SuiteConfig::default(),
    )
    .unwrap();
    let h: Vec<_> = r
        .iter()
        .filter(|x| x.job_id.starts_with("pfaffian/h(") && x.job_id.ends_with(";C)"))
        .collect();
    assert_eq!(h.len(), 4);
    assert!(h.iter().all(|x| x.passed));
    assert!(r.iter().all(|x| x.passed), "{}", suite::render_markdown(&r));
}

#[test]
fn failures_carry_witnesses_and_reports_are_deterministic() {
    let filter = Filter {
        tables: vec![TableId::Jaw],
        rows: rows(&["5b", "1"]),
        ..Filter::kinds(&[CheckKind::Stability, CheckKind::Chain, CheckKind::Mf])
    };
    let config = SuiteConfig {
        seed: 11,
        ..Default::default()
    };
    let a = suite::run_suite(&filter, &config).unwrap();
    let b = suite::run_suite(&filter, &config).unwrap();
    assert_eq!(suite::to_json(&a), suite::to_json(&b));
    let ids: Vec<&str> = a.iter().map(|r| r.job_id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    let failing: Vec<_> = a.iter().filter(|r| !r.passed).collect();
    assert_eq!(failing.len(), 1);
    assert_eq!(failing[0].job_id, "stability/jaw/5b");
    for r in &a {
        for c in &r.results {
            assert_eq!(c.passed, c.witness.is_none());
        }
    }
    let parsed: SuiteOutput = serde_json::from_str(&suite::to_json(&a)).unwrap();
    assert_eq!(parsed.schema_version, suite::SCHEMA_VERSION);
    assert!(!parsed.passed);
    assert!(suite::render_markdown(&a).contains("| stability/jaw/5b | FAIL |"));
}

#[test]
fn row_bound_jobs() {
    let filter = Filter {
        tables: vec![TableId::IndVin],
        rows: rows(&["18"]),
        ..Filter::kinds(&[
            CheckKind::Stabilizer,
            CheckKind::Centralizer,
            CheckKind::Fock,
        ])
    };
    let r = suite::run_suite(&filter, &SuiteConfig::default()).unwrap();
    assert_eq!(r.len(), 2);
    assert!(r
        .iter()
        .all(|x| x.passed && x.kind == CheckKind::Stabilizer));
}

#[test]
fn fock_and_centralizer_jobs() {
    let config = SuiteConfig {
        quad_order: 8,
        ..Default::default()
    };
    let r = suite::run_suite(
        &Filter::kinds(&[CheckKind::Fock, CheckKind::Centralizer]),
        &config,
    )
    .unwrap();
    assert_eq!(r.len(), 9);
    assert!(r.iter().all(|x| x.passed), "{}", suite::render_markdown(&r));
}
