use serde_json::Value;
use std::process::{Command, Output};

fn latdet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latdet"))
        .args(args)
        .env_remove("LATDET_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = latdet(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

/// Paths of numeric leaves that sit outside any `{value, method}` object.
fn untagged(v: &Value, path: &str, out: &mut Vec<String>) {
    match v {
        Value::Object(m) if m.contains_key("method") => {}
        Value::Object(m) => m.iter().for_each(|(k, x)| untagged(x, &format!("{path}.{k}"), out)),
        Value::Array(a) => a.iter().for_each(|x| untagged(x, &format!("{path}[]"), out)),
        Value::Number(_) => out.push(path.to_string()),
        _ => {}
    }
}

#[test]
fn tree_counts_print_as_integers() {
    for (args, want) in [
        (&["tau", "grid", "3", "3"][..], "192"),
        (&["tau", "grid", "2", "3"][..], "15"),
        (&["tau", "torus", "1", "2"][..], "2304"),
        (&["tau", "qad", "3"][..], "4"),
    ] {
        let o = latdet(args);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o).trim(), want, "{args:?}");
    }
}

#[test]
fn large_counts_fall_back_to_logarithms() {
    let v = json(&["--format", "json", "tau", "grid", "40", "40"]);
    assert_eq!(v["log_tau"]["method"], "series");
    assert!(v["log_tau"]["value"].as_f64().unwrap() > 1000.0);
}

#[test]
fn exact_count_is_a_decimal_string() {
    let v = json(&["--format", "json", "tau", "torus", "2", "2"]);
    assert_eq!(v["tau"]["method"], "exact");
    let digits = v["tau"]["value"].as_str().unwrap();
    assert!(digits.chars().all(|c| c.is_ascii_digit()), "{digits}");
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["frobnicate"][..],
        &["tau", "grid", "0"][..],
        &["sweep", "theorem1", "--n", "8,x"][..],
        &["constants", "--d", "9"][..],
        &["--tolerance", "-1", "constants", "--d", "2"][..],
    ] {
        assert_eq!(latdet(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn unreachable_tolerance_exits_with_three() {
    let o = latdet(&["--tolerance", "1e-30", "constants", "--d", "3"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("did not converge"));
}

#[test]
fn verification_suites_pass() {
    for target in ["theta", "inversion", "theorem2", "qad-identity", "forests"] {
        let o = latdet(&["verify", target]);
        assert_eq!(o.status.code(), Some(0), "{target}: {}", stdout(&o));
        let last = stdout(&o).lines().last().unwrap().to_string();
        assert!(last.starts_with("PASS"), "{last}");
    }
}

#[test]
fn sweep_csv_layout() {
    let o = latdet(&["sweep", "theorem1", "--n", "8,16,32", "--alphas", "1,1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,lhs,rhs_partial,residual,residual_delta");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].ends_with(','), "first row has no delta");
    assert_eq!(lines[3].split(',').count(), 5);
}

#[test]
fn outputs_are_identical_across_thread_counts() {
    let commands: [&[&str]; 4] = [
        &["sweep", "theorem1", "--n", "8,16,32", "--alphas", "1,2"],
        &["sweep", "theorem3", "--n", "16,32,64"],
        &["theta", "torus", "3", "5", "--t", "0.4"],
        &["constants", "--d", "3"],
    ];
    for args in commands {
        let parallel = latdet(args);
        let sequential = latdet(&[&["--sequential"][..], args].concat());
        assert_eq!(parallel.status.code(), Some(0));
        assert_eq!(parallel.stdout, sequential.stdout, "{args:?}");
        assert_eq!(parallel.stdout, latdet(args).stdout, "{args:?} rerun");
    }
}

#[test]
fn computed_numbers_carry_method_tags() {
    // inputs, residuals, gaps and exponents are allowed to be bare
    let bare = [
        ".d", ".tolerance", ".t", ".sizes[]", ".lengths[]", ".alphas[]", ".exact_limit_vertices",
        ".records[].n", ".records[].residual", ".records[].residual_delta", ".candidates[].gap",
        ".rhs.terms[].power", ".residual_star", ".residual_torus", ".c_d_closed_form_gap", ".watson_closed_form_gap",
    ];
    for args in [
        &["constants", "--d", "3"][..],
        &["constants", "--d", "4"][..],
        &["sweep", "theorem1", "--n", "8,16", "--alphas", "1,1"][..],
        &["sweep", "theorem3", "--n", "8,16"][..],
        &["theta", "grid", "3", "4", "--t", "0.7", "--decomposition"][..],
        &["zeta", "orthotope", "1", "2"][..],
        &["zeta", "triangle"][..],
        &["--format", "json", "tau", "grid", "40", "40"][..],
    ] {
        let mut paths = Vec::new();
        untagged(&json(args), "", &mut paths);
        paths.retain(|p| !bare.contains(&p.as_str()));
        assert!(paths.is_empty(), "{args:?}: {paths:?}");
    }
}

#[test]
fn zeta_reports_both_torus_routes() {
    let v = json(&["zeta", "orthotope", "1", "1"]);
    let a = v["zeta_prime0"]["value"].as_f64().unwrap();
    let b = v["zeta_prime0_eta_oracle"]["value"].as_f64().unwrap();
    assert_eq!(v["zeta_prime0_eta_oracle"]["method"], "eta-oracle");
    assert!((a - b).abs() < 1e-9);
}

#[test]
fn numbers_use_seventeen_significant_digits() {
    let o = latdet(&["theta", "grid", "3", "4", "--t", "0.7"]);
    let text = stdout(&o);
    let line = text.lines().find(|l| l.contains("\"value\"")).unwrap();
    let digits: String = line.split(':').nth(1).unwrap().chars().filter(|c| c.is_ascii_digit()).collect();
    assert_eq!(digits.len(), 17, "{line}");
}
