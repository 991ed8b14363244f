use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lgi(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgi"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = lgi(args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn number(v: &Value, key: &str) -> f64 {
    v[key]
        .as_str()
        .unwrap_or_else(|| panic!("{key} missing in {v}"))
        .parse()
        .unwrap()
}

#[test]
fn eval_standard_k3_peak() {
    let v = json(&[
        "eval",
        "--spec",
        "+[1,2]+[2,3]-[1,3]",
        "--g",
        "0.5236",
        "--theta",
        "0",
        "--phi",
        "0",
    ]);
    assert!((number(&v, "value") - 1.5).abs() < 1e-6);
    assert_eq!(number(&v, "macrorealist_max"), 1.0);
    assert_eq!(number(&v, "algebraic_max"), 3.0);
    assert_eq!(v["violated"], Value::Bool(true));
    assert_eq!(v["spec"], "+[1,2] +[2,3] -[1,3]");
}

#[test]
fn eval_variant_at_published_point() {
    // the published curve value 1.93 is not reproduced here; this is the
    // simulated value under the stated conventions
    let v = json(&[
        "eval",
        "--spec",
        "+[1,2,3]+[1,2]-[3]",
        "--g",
        "1.72",
        "--theta",
        "2.04",
        "--phi",
        "1.5708",
    ]);
    assert!((number(&v, "value") + 0.355_287).abs() < 1e-4, "{v}");
    assert_eq!(v["violated"], Value::Bool(false));
}

#[test]
fn eval_without_evolution_sums_signs() {
    for (spec, expected) in [
        ("K:4", 3.0 - 1.0),
        ("K3var:5", 1.0),
        ("+[1,2] +[2,3] +[1,3]", 3.0),
    ] {
        let v = json(&["eval", "--spec", spec, "--g", "0"]);
        assert!(
            (number(&v, "value") - expected).abs() < 1e-12,
            "{spec}: {v}"
        );
    }
}

#[test]
fn eval_per_interval_couplings() {
    let v = json(&[
        "eval",
        "--spec",
        "K3var:3",
        "--g",
        "0,0.785398163397448",
        "--theta",
        "0.785398163397448",
        "--phi",
        "1.5707963267949",
    ]);
    assert!((number(&v, "value") - 2.0).abs() < 1e-9);
    assert_eq!(v["couplings"].as_array().unwrap().len(), 2);
}

#[test]
fn eval_long_chain_omits_enumerated_bounds() {
    let v = json(&[
        "eval",
        "--spec",
        "K3var",
        "--n",
        "200",
        "--g",
        "0.007853981633974483",
    ]);
    assert!(number(&v, "value") >= 2.97);
    assert!(v.get("macrorealist_max").is_none());
}

#[test]
fn bounds_of_four_time_variant() {
    let v = json(&["bounds", "--spec", "+[1,2,3,4]+[1,2,3]-[4]"]);
    assert_eq!(number(&v, "macrorealist_max"), 1.0);
    assert_eq!(number(&v, "algebraic_max"), 3.0);
}

#[test]
fn nsit_without_evolution_is_undisturbed() {
    let v = json(&["nsit", "--g", "0", "--theta", "0", "--phi", "0"]);
    let obj = v.as_object().unwrap();
    let d_keys: Vec<&String> = obj.keys().filter(|k| k.starts_with('D')).collect();
    assert_eq!(d_keys.len(), 4 + 4 + 4 + 2);
    for k in d_keys {
        assert_eq!(number(&v, k), 0.0, "{k}");
    }
}

#[test]
fn nsit_quarter_turn() {
    let v = json(&["nsit", "--g", "0.7853981633974483"]);
    assert!((number(&v, "D12(+)") + 0.5).abs() < 1e-9);
    assert!((number(&v, "D12(-)") - 0.5).abs() < 1e-9);
    assert_eq!(number(&v, "D3(+,+)"), 0.0);
}

#[test]
fn optimize_unequal_variant() {
    let v = json(&["optimize", "--spec", "K3var:3", "--unequal"]);
    assert!(number(&v, "best_value") >= 1.99, "{v}");
    assert_eq!(v["couplings_mode"], "unequal");
}

#[test]
fn sweep_over_g_as_csv() {
    let out = lgi(&[
        "sweep",
        "--spec",
        "K:3",
        "--axis",
        "g",
        "--range",
        "0,3.141592653589793",
        "--points",
        "7",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "g,value");
    assert_eq!(lines.len(), 8);
    assert_eq!(lines[2], "0.523598775598,1.50000000000");
}

#[test]
fn sweep_over_n() {
    let v = json(&["sweep", "--spec", "L3var", "--axis", "n", "--n", "3..9:2"]);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    let n5: f64 = rows[1]["value"].as_str().unwrap().parse().unwrap();
    assert!((n5 - 2.118_033_988_75).abs() < 1e-9);
}

#[test]
fn out_flag_writes_identical_files() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str| {
        let path = dir.path().join(name);
        let out = lgi(&[
            "eval",
            "--spec",
            "L3var:4",
            "--g",
            "0.42",
            "--theta",
            "0.21",
            "--phi",
            "4.71238898038469",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        assert!(out.stdout.is_empty());
        std::fs::read(path).unwrap()
    };
    assert_eq!(write("a.json"), write("b.json"));
}

#[test]
fn exit_codes() {
    // malformed input
    assert_eq!(
        lgi(&["eval", "--spec", "+[1,", "--g", "0.1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        lgi(&["eval", "--spec", "K:3", "--g", "x"]).status.code(),
        Some(2)
    );
    assert_eq!(lgi(&["frobnicate"]).status.code(), Some(2));
    // numeric contract violations
    assert_eq!(
        lgi(&["eval", "--spec", "K:3", "--g", "0.1", "--theta", "4"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        lgi(&["eval", "--spec", "K:4", "--g", "0.1,0.2"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        lgi(&["bounds", "--spec", "K3var:30"]).status.code(),
        Some(3)
    );
    let out = lgi(&["nsit", "--g", "nan"]);
    assert_eq!(
        out.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn reproduce_writes_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let out = lgi(&["reproduce", "--out", dir.path().to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    for f in [
        "manifest.json",
        "manifest.csv",
        "fig1.csv",
        "fig2_l3_odd.csv",
        "fig2_l3_even.csv",
        "kn_table.csv",
    ] {
        assert!(Path::new(&dir.path().join(f)).exists(), "{f}");
    }
    let manifest: Value =
        serde_json::from_slice(&std::fs::read(dir.path().join("manifest.json")).unwrap()).unwrap();
    let rows = manifest["rows"].as_array().unwrap();
    assert!(rows.len() >= 10);
    let k3 = rows.iter().find(|r| r["id"] == "K3_max").unwrap();
    assert!((k3["value"].as_str().unwrap().parse::<f64>().unwrap() - 1.5).abs() < 1e-6);
    assert!(rows.iter().all(|r| r["status"] != "fail"));
    let odd = std::fs::read_to_string(dir.path().join("fig2_l3_odd.csv")).unwrap();
    assert_eq!(odd.lines().count(), 1 + 100);
}
