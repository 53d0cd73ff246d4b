use hgc_core::verify::{lookup, registry, run_check, sweep, sweep_qs, CheckOptions, Status, SweepReport};
use hgc_core::Error;

fn opts() -> CheckOptions {
    CheckOptions::default()
}

#[test]
fn thm1_4_1_at_13() {
    let rows = run_check("thm1.4.1", Some(13), &opts()).unwrap();
    assert_eq!(rows.len(), 2);
    for r in rows {
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.lhs, r.rhs);
        assert_eq!(r.lhs["m"], 12);
    }
}

#[test]
fn eq1_1_skips_at_5() {
    let rows = run_check("eq1.1", Some(5), &opts()).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].status, Status::Skipped);
    assert!(!rows[0].guard_ok);
    assert_eq!(rows[0].lhs, serde_json::Value::Null);
}

#[test]
fn conjecture_rows_are_report_only() {
    let rows = run_check("conj1.3", Some(7), &opts()).unwrap();
    let n3 = rows.iter().find(|r| r.variant == "n=3").unwrap();
    assert!(matches!(n3.status, Status::ReportOnlyPass | Status::ReportOnlyFail));
    assert_eq!(n3.modulus, "p^3");
}

#[test]
fn prime_scoped_checks_skip_prime_powers() {
    let rows = run_check("eq1.1", Some(25), &opts()).unwrap();
    assert_eq!(rows[0].status, Status::Skipped);
    let rows = run_check("thm1.4.2", Some(25), &opts()).unwrap();
    assert!(rows.iter().all(|r| r.status == Status::Pass));
}

#[test]
fn unknown_id_is_an_error() {
    assert!(matches!(run_check("thm9.9", Some(7), &opts()), Err(Error::UnknownCheck(_))));
    assert!(lookup("thm1.7").is_ok());
}

#[test]
fn empty_id_list_gives_an_empty_report() {
    let rep = sweep(&[], 3, 50, 2, &opts(), false, "hgc sweep").unwrap();
    assert!(rep.reports.is_empty());
    assert!(!rep.summary().fatal());
}

#[test]
fn lambda_zero_discrepancy_is_report_only() {
    let rows = run_check("thm1.2.lambda0", Some(7), &opts()).unwrap();
    let ran: Vec<_> = rows.iter().filter(|r| r.status != Status::Skipped).collect();
    assert_eq!(ran.len(), 2);
    assert!(ran.iter().all(|r| r.status == Status::ReportOnlyFail));
}

#[test]
fn resource_cap_propagates() {
    let small = CheckOptions { count_cap: 100, ..opts() };
    assert!(matches!(run_check("thm1.2", Some(13), &small), Err(Error::ResourceCap(_))));
}

#[test]
fn independent_checks_have_no_field_size() {
    let rows = run_check("classical.kummer", None, &opts()).unwrap();
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].q, None);
    assert_eq!(rows[0].status, Status::Pass);
}

#[test]
fn every_entry_runs_at_thirteen() {
    for e in registry() {
        let rows = run_check(e.id, Some(13), &opts()).unwrap();
        assert!(!rows.is_empty(), "{}", e.id);
        for r in rows {
            if e.proven {
                assert!(matches!(r.status, Status::Pass | Status::Skipped), "{} {} {:?}", e.id, r.variant, r.status);
            } else {
                assert!(!r.status.is_fatal(), "{}", e.id);
            }
        }
    }
}

#[test]
fn sweep_is_ordered_and_round_trips() {
    let ids: Vec<String> = ["thm1.6", "eq1.1", "psi"].iter().map(|s| s.to_string()).collect();
    let rep = sweep_qs(&ids, &[19, 7, 13], 3, &opts(), false, "test").unwrap();
    let keys: Vec<(String, Option<u64>)> = rep.reports.iter().map(|r| (r.check.clone(), r.q)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert!(rep.reports.iter().all(|r| r.millis.is_none()));
    let v: serde_json::Value = serde_json::from_str(&rep.to_json_string()).unwrap();
    assert_eq!(SweepReport::from_json(&v).unwrap(), rep);
}

#[test]
fn sweeps_do_not_depend_on_thread_count() {
    let ids: Vec<String> = ["thm1.4.2", "lemma5.3", "thm2.7", "gk.jacobi"].iter().map(|s| s.to_string()).collect();
    let a = sweep_qs(&ids, &[13, 17, 25, 29], 1, &opts(), false, "x").unwrap().to_json_string();
    let b = sweep_qs(&ids, &[13, 17, 25, 29], 4, &opts(), false, "x").unwrap().to_json_string();
    assert_eq!(a, b);
}

#[test]
fn timings_are_recorded_only_on_request() {
    let rep = sweep_qs(&["eq1.1".to_string()], &[7], 1, &opts(), true, "t").unwrap();
    assert!(rep.reports[0].millis.is_some());
}
