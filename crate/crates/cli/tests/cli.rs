use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_largebohr"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn ok(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    json(&out)
}

fn f(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

#[test]
fn coeffs_examples() {
    let v = ok(&["coeffs", "--order", "2", "--exact"]);
    assert_eq!(v["results"]["A"], serde_json::json!([1, 8, 44]));
    assert_eq!(v["results"]["j"], serde_json::json!([0, 16, -128, 704]));
    assert_eq!(v["schema"], 1);

    let v = ok(&["coeffs", "--order", "0"]);
    assert_eq!(v["results"]["A"].as_array().unwrap().len(), 1);
    assert_eq!(f(&v["results"]["A"][0]), 1.0);

    let v = ok(&["coeffs", "--order", "20"]);
    let exact = ok(&["coeffs", "--order", "20", "--exact"]);
    for n in 0..=20 {
        assert_eq!(f(&v["results"]["A"][n]), f(&exact["results"]["A"][n]));
    }
}

#[test]
fn coeffs_rejects_bad_orders() {
    for args in [
        &["coeffs", "--order", "-1"][..],
        &["coeffs", "--order", "21", "--exact"],
        &["coeffs", "--order", "100000"],
        &["coeffs"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn eval_examples() {
    let v = ok(&["eval", "--re", "0.0432139182637722", "--im", "0", "--fn", "j"]);
    assert!((f(&v["results"]["re"]) - 0.5).abs() < 1e-12);
    assert!(f(&v["results"]["im"]).abs() < 1e-15);

    let v = ok(&["eval", "--re", "0", "--im", "0", "--fn", "j"]);
    assert_eq!(f(&v["results"]["abs"]), 0.0);

    let v = ok(&["eval", "--fn", "q", "--alpha", "3.141592653589793", "--re", "0", "--im", "0"]);
    assert!((f(&v["results"]["re"]) - 0.5).abs() < 1e-12);

    let v = ok(&["eval", "--re", "-0.04321391826377224", "--im", "0"]);
    assert!((f(&v["results"]["abs"]) - 1.0).abs() < 1e-12);
}

#[test]
fn eval_domain_errors_are_usage_errors() {
    for args in [
        &["eval", "--re", "1", "--im", "0"][..],
        &["eval", "--re", "0.8", "--im", "0.8"],
        &["eval", "--re", "NaN", "--im", "0"],
        &["eval", "--re", "0", "--im", "0", "--fn", "q", "--alpha", "-1"],
        &["eval", "--re", "0", "--im", "0", "--fn", "q", "--alpha", "inf"],
        &["eval", "--re", "0", "--im", "0", "--fn", "x"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bohr_radius_examples() {
    let v = ok(&["bohr-radius"]);
    assert_eq!(v["pass"], true);
    assert!((f(&v["results"]["radius"]) - 0.04321391826377224).abs() < 1e-9);
    assert!(f(&v["results"]["residual"]) < 1e-12);

    let a = f(&ok(&["bohr-radius", "--order", "150"])["results"]["radius"]);
    let b = f(&ok(&["bohr-radius", "--order", "300"])["results"]["radius"]);
    assert!((a - b).abs() < 1e-9);

    assert_eq!(run(&["bohr-radius", "--order", "5"]).status.code(), Some(2));
}

#[test]
fn verify_examples() {
    let v = ok(&["verify", "littlewood", "--seed", "7", "--trials", "100"]);
    assert_eq!(v["pass"], true);
    assert!(f(&v["results"]["summary"]["max_ratio"]) <= 1.0 + 1e-9);

    let v = ok(&["verify", "theorem4", "--seed", "7", "--trials", "100"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["results"]["rows"].as_array().unwrap().len(), 100);

    let v = ok(&["verify", "max-modulus", "--trials", "20"]);
    let step = f(&v["results"]["summary"]["grid_step"]);
    for row in v["results"]["rows"].as_array().unwrap() {
        let angle = f(&row["detail"]["argmax_angle"]);
        assert!((angle - std::f64::consts::PI).abs() <= step);
    }
}

#[test]
fn failing_trials_carry_recipes() {
    let out = run(&["verify", "theorem4", "--seed", "1", "--trials", "8", "--alpha-min", "0.8", "--alpha-max", "1.0"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["pass"], false);
    let failing: Vec<&Value> = v["results"]["rows"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|r| r["pass"] == false)
        .collect();
    assert!(!failing.is_empty());
    for row in failing {
        assert!(row["recipe"].as_str().unwrap().starts_with("large("));
    }
    assert!(String::from_utf8_lossy(&out.stderr).contains("FAIL theorem4"));
}

#[test]
fn identical_invocations_give_identical_json() {
    let args = ["verify", "harmonic", "--seed", "3", "--trials", "6"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["results"]["trials"], 6);
}

#[test]
fn reals_are_printed_with_17_digits() {
    let out = run(&["eval", "--re", "0.1", "--im", "0"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"re\":1.0000000000000001e-1"), "{text}");
}

#[test]
fn report_all_writes_one_csv_row_per_check() {
    let dir = std::env::temp_dir().join(format!("largebohr-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("all.csv");
    let v = ok(&["report", "--all", "--trials", "4", "--csv", csv.to_str().unwrap()]);
    assert_eq!(v["pass"], true);
    let checks: u64 = v["results"]["overview"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["checks"].as_u64().unwrap())
        .sum();
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("check,lhs,rhs,slack,pass"));
    assert_eq!(lines.count() as u64, checks);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn forced_failure_is_isolated() {
    let out = run(&["report", "--all", "--trials", "3", "--force-fail", "classical-bohr"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    for s in v["results"]["overview"].as_array().unwrap() {
        assert_eq!(s["pass"], s["suite"] != "classical-bohr", "{s}");
    }
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("FAIL classical-bohr"));
}

#[test]
fn adversarial_flags_never_panic() {
    let cases: &[&[&str]] = &[
        &[],
        &["--bogus"],
        &["verify"],
        &["verify", "nope"],
        &["verify", "theorem4", "--trials", "0"],
        &["verify", "theorem4", "--trials", "-5"],
        &["verify", "theorem4", "--order", "3"],
        &["verify", "theorem4", "--order", "99999999999999999999"],
        &["verify", "theorem4", "--seed", "-1"],
        &["verify", "theorem4", "--slack", "nan"],
        &["verify", "theorem4", "--slack", "inf"],
        &["verify", "theorem4", "--alpha-min", "0"],
        &["verify", "theorem4", "--alpha-min", "3", "--alpha-max", "2"],
        &["verify", "theorem4", "--alpha-max", "inf"],
        &["report"],
        &["report", "--all", "--force-fail", "nope"],
        &["report", "--all", "--csv", "/nonexistent-dir/x.csv", "--trials", "1"],
        &["eval", "--re", "x", "--im", "0"],
        &["coeffs", "--order", ""],
    ];
    for args in cases {
        let out = run(args);
        let code = out.status.code();
        assert_eq!(code, Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!String::from_utf8_lossy(&out.stderr).contains("panicked"));
    }
    // valid but extreme inputs run to a verdict
    for args in [
        &["verify", "univalence", "--trials", "1", "--seed", "18446744073709551615"][..],
        &["verify", "theorem4", "--trials", "2", "--slack", "-1e308"],
        &["verify", "algebra", "--trials", "1", "--order", "256"],
    ] {
        let out = run(args);
        assert!(matches!(out.status.code(), Some(0 | 1)), "{args:?}");
        assert!(!String::from_utf8_lossy(&out.stderr).contains("panicked"));
    }
}
