use std::process::{Command, Output};

use serde_json::Value;

fn hgc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = hgc(&a);
    (serde_json::from_str(&stdout(&o)).expect("valid json"), o.status.code().unwrap())
}

#[test]
fn jacobi_norm_is_thirteen() {
    let o = hgc(&["jacobi", "--p", "13", "--orders", "3,3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.lines().any(|l| l.starts_with("|J|^2") && l.trim_end().ends_with("13")), "{s}");
    let (v, _) = json(&["jacobi", "--p", "13", "--orders", "3,3"]);
    assert_eq!(v["J"]["m"], 12);
}

#[test]
fn count_routes_agree() {
    let (v, code) = json(&["count", "--p", "7", "--n", "3", "--lambda", "1", "--route", "both"]);
    assert_eq!(code, 0);
    assert_eq!(v["brute_count"], v["hgf_count"]);
    assert_eq!(v["agree"], true);
}

#[test]
fn verify_thm1_7_sweep() {
    let (v, code) = json(&["verify", "--id", "thm1.7", "--primes", "1..100"]);
    assert_eq!(code, 0);
    assert_eq!(v["summary"]["fail"], 0);
    assert_eq!(v["summary"]["pass"], 11);
    assert_eq!(v["invocation"], "hgc verify --id thm1.7 --primes 1..100 --format json");
    let first = &v["reports"][0];
    for key in ["check", "variant", "q", "guard", "modulus", "status", "lhs", "rhs", "millis"] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
    assert_eq!(first["millis"], Value::Null);
}

#[test]
fn report_file_and_invocation_ignore_jobs_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let p = path.to_str().unwrap();
    let o = hgc(&["sweep", "--ids", "eq1.1,psi", "--primes", "3..40", "--jobs", "3", "--out", p]);
    assert_eq!(o.status.code(), Some(0));
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(saved["invocation"], "hgc sweep --ids eq1.1,psi --primes 3..40");
    let path2 = dir.path().join("r2.json");
    hgc(&["sweep", "--ids", "eq1.1,psi", "--primes", "3..40", "--jobs", "1", "--out", path2.to_str().unwrap()]);
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&path2).unwrap());
}

#[test]
fn table_rows_match_json_rows() {
    let args = ["verify", "--id", "thm1.4.1", "--q", "7,13"];
    let table = stdout(&hgc(&args));
    let (v, _) = json(&args);
    let rows: Vec<&str> = table.lines().skip(1).filter(|l| !l.starts_with("summary")).collect();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(rows.len(), reports.len());
    for (line, r) in rows.iter().zip(reports) {
        assert!(line.contains(r["status"].as_str().unwrap()));
        assert!(line.contains(&r["lhs"].to_string()));
    }
}

#[test]
fn csv_has_a_header_and_one_row_per_report() {
    let o = hgc(&["verify", "--id", "eq1.1", "--q", "7,13,19", "--format", "csv"]);
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next().unwrap(), "check,variant,q,guard,guard_ok,modulus,status,lhs,rhs");
    assert_eq!(lines.count(), 3);
}

#[test]
fn empty_verify_is_an_empty_report() {
    let (v, code) = json(&["verify"]);
    assert_eq!(code, 0);
    assert_eq!(v["reports"].as_array().unwrap().len(), 0);
}

#[test]
fn exit_codes() {
    assert_eq!(hgc(&["nonsense"]).status.code(), Some(2));
    assert_eq!(hgc(&["verify", "--id", "nope", "--q", "7"]).status.code(), Some(2));
    assert_eq!(hgc(&["field", "--p", "9"]).status.code(), Some(2));
    assert_eq!(hgc(&["count", "--p", "13", "--n", "4", "--lambda", "1", "--count-cap", "100"]).status.code(), Some(3));
    assert_eq!(hgc(&["verify", "--id", "thm1.2.lambda0", "--q", "7"]).status.code(), Some(0));
}

#[test]
fn single_evaluations() {
    let (v, _) = json(&["field", "--p", "5"]);
    assert_eq!(v["generator"], 2);
    let (v, _) = json(&["gammap", "--p", "7", "--r", "2", "--x", "0"]);
    assert_eq!(v["gamma_p"]["residue"], 1);
    let (v, _) = json(&["eta", "--n", "5"]);
    assert_eq!(v["a"], serde_json::json!([1, 0, -4, 0, -2]));
    let (v, _) = json(&["psi", "--p", "13"]);
    assert_eq!(v["psi"], v["-J"]);
    let (v, _) = json(&["ghf", "--p", "7", "--upper", "2:1,2:1", "--lower", "0", "--x", "-1"]);
    assert!(v["value"]["coeffs"].as_array().unwrap().iter().all(|c| c == 0));
    let (v, _) = json(&["trunc", "--upper", "1/3,1/3,1/3", "--lower", "1,1", "--m", "6", "--p", "7", "--r", "3", "--exact"]);
    assert_eq!(v["value"]["r"], 3);
    let (v, code) = json(&["zeta", "--p", "7", "--n", "3", "--s-max", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["N_s"].as_array().unwrap().len(), 2);
    let (v, _) = json(&["starred", "--p", "17", "--upper", "4,4", "--lower", "0", "--x", "-1"]);
    assert!(v["value"].get("den").is_some());
    let (v, _) = json(&["dwork", "--upper", "1/3,1/3,1/3", "--lower", "1,1", "--p", "7"]);
    assert_eq!(v["ratio"]["r"], 2);
    let (v, _) = json(&["char", "--p", "13", "--chi", "2:1", "--at", "4,5"]);
    assert_eq!(v["order"], 2);
}

#[test]
fn timings_only_with_flag() {
    let (v, _) = json(&["verify", "--id", "eq1.1", "--q", "7", "--timings"]);
    assert!(v["reports"][0]["millis"].is_u64());
}
