use std::process::{Command, Output};

use serde_json::Value;

fn solvforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_solvforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn construct_inoue_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("inoue.json");
    let p = path.to_str().unwrap();
    let o = solvforge(&["construct", "--p-coeffs", "0,1", "--shift", "3", "--json", p]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["field"]["Q"], serde_json::json!(["1", "-3", "1"]));
    assert_eq!(report["splitting"]["w2_dim"], 0);
    assert_eq!(report["nilalgebra"]["dim"], 3);
    assert_eq!(report["gamma_n"]["denominator"], "2");
    assert_eq!(report["cohomology"]["match"], true);
    assert_eq!(solvforge(&["verify", p]).status.code(), Some(0));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["construct", "--p-coeffs=-2,0,1", "--shift", "4", "--unit-bound", "1"];
    let (a, b) = (solvforge(&args), solvforge(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn quartic_report_has_anosov_units() {
    let o = solvforge(&["construct", "--p-coeffs=-2,0,1", "--shift", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["field"]["Q"], serde_json::json!(["1", "-8", "16", "-8", "1"]));
    assert_eq!((r["splitting"]["w1_dim"].as_u64(), r["splitting"]["w2_dim"].as_u64()), (Some(2), Some(4)));
    let derived = r["units"]["derived"].as_array().unwrap();
    assert!(derived.iter().any(|u| u["anosov"] == "Anosov"));
    assert_eq!(r["units"]["anosov_summary"]["mixed"], 0);
    assert_eq!(r["units"]["log_rank"]["rank_lower_bound"], 2);
}

#[test]
fn tampered_and_stale_reports_fail_verification() {
    let dir = tempfile::tempdir().unwrap();
    let o = solvforge(&["construct", "--p-coeffs", "0,1", "--shift", "3", "--unit-bound", "1"]);
    let text = stdout(&o);
    let mut v: Value = serde_json::from_str(&text).unwrap();
    v["cohomology"]["kunneth"][2] = serde_json::json!(7);
    let tampered = dir.path().join("tampered.json");
    std::fs::write(&tampered, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    let o = solvforge(&["verify", tampered.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/cohomology/kunneth/2"));

    let mut old: Value = serde_json::from_str(&text).unwrap();
    old["schema_version"] = serde_json::json!(0);
    let stale = dir.path().join("stale.json");
    std::fs::write(&stale, old.to_string()).unwrap();
    let o = solvforge(&["verify", stale.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("schema_version"));
}

#[test]
fn construction_failure_names_stage() {
    let o = solvforge(&["construct", "--p-coeffs=-2,0,1", "--shift", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("build_field"));
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(solvforge(&["construct", "--p-coeffs", "a,b", "--shift", "3"]).status.code(), Some(1));
    assert_eq!(solvforge(&["construct", "--shift", "3"]).status.code(), Some(1));
    assert_eq!(solvforge(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(solvforge(&["cohomology", "--d", "0"]).status.code(), Some(1));
    assert_eq!(solvforge(&["--help"]).status.code(), Some(0));
}

#[test]
fn cohomology_subcommand() {
    let o = solvforge(&["cohomology", "--d", "2", "--oracle"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("(1,2,1,2,4,2,1,2,1)"));
    assert!(out.contains("MATCH") && !out.contains("MISMATCH"));
    let o = solvforge(&["cohomology", "--d", "1"]);
    assert!(stdout(&o).contains("kunneth: (1,1,0,1,1)"));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    solvforge(&["cohomology", "--d", "1", "--oracle", "--json", path.to_str().unwrap()]);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["ce"], serde_json::json!([1, 1, 0, 1, 1]));
    assert_eq!(v["euler"], 0);
    assert_eq!(v["match"], true);
}

#[test]
fn units_subcommand_on_inoue_field() {
    let o = solvforge(&["units", "--p-coeffs", "0,1", "--shift", "3", "--unit-bound", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let searched = v["searched"].as_array().unwrap();
    let find = |c: [&str; 2]| searched.iter().find(|u| u["coords"] == serde_json::json!(c)).cloned();
    let u0 = find(["0", "1"]).expect("u0 listed");
    assert_eq!(u0["in_gamma_A"], true);
    let u0m1 = find(["-1", "1"]).expect("u0 - 1 listed");
    assert_eq!(u0m1["norm"], "-1");
    for u in searched {
        for key in ["coords", "norm", "totally_positive", "in_gamma_A", "multipliers", "anosov"] {
            assert!(u.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn report_renders_text() {
    let o = solvforge(&["report", "--p-coeffs", "0,1", "--shift", "3", "--unit-bound", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("W: dim 1, W1 dim 1, W2 dim 0"));
    assert!(out.contains("denominator D = 2"));
}
