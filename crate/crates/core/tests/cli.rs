//! Black-box tests of the `lpgn` binary: output formats, exit codes,
//! file routing, environment handling, and run-to-run determinism.

use std::process::{Command, Output};

fn lpgn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lpgn"))
        .args(args)
        .env_remove("LPGN_THREADS")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn norm_emits_one_json_line_with_the_schema_field_first() {
    let out = lpgn(&["norm", "--group", "Z4", "--gelfand", "1,i,-1,-i", "--p", "3/2"]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 1, "expected a single NDJSON line");
    assert!(text.starts_with("{\"schema\":\"1\","), "schema must lead: {text}");
    let v: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(v["command"], "norm");
    assert_eq!(v["p"], "3/2");
    let (lo, hi) = (v["lower"].as_f64().unwrap(), v["upper"].as_f64().unwrap());
    // Unimodular Gelfand data: the norm is 1 exactly.
    assert!(lo <= 1.0 + 1e-9 && 1.0 <= hi + 1e-9, "[{lo}, {hi}]");
}

#[test]
fn delta_curve_csv_uses_crlf_and_the_documented_header() {
    let out = lpgn(&["delta-curve", "--format", "csv"]);
    assert!(out.status.success(), "{out:?}");
    let text = stdout(&out);
    let lines: Vec<&str> = text.split("\r\n").collect();
    assert_eq!(lines[0], "t,lower,upper,closed_form,abs_err");
    assert_eq!(lines.len(), 10, "header + 8 rows + trailing empty: {lines:?}");
    assert_eq!(*lines.last().unwrap(), "");
    assert!(!text.contains("\n\r"), "stray bare line endings");
    // Every data row is plain numeric/fraction fields — no quoting needed,
    // so none should appear.
    for row in &lines[1..9] {
        assert_eq!(row.split(',').count(), 5, "row {row:?}");
        assert!(!row.contains('"'), "row {row:?}");
    }
}

#[test]
fn exit_codes_follow_the_contract() {
    // 0: successful computation.
    let ok = lpgn(&["delta-curve", "--ts", "2"]);
    assert_eq!(ok.status.code(), Some(0));

    // 2: out-of-scope request — conjugate exponents admit no witness.
    let conj = lpgn(&["witness", "--group", "Z2", "--p", "1.5", "--q", "3"]);
    assert_eq!(conj.status.code(), Some(2), "{conj:?}");
    assert!(conj.stdout.is_empty(), "no data on the failure path");
    assert!(!conj.stderr.is_empty(), "diagnostic expected on stderr");

    // 2: malformed input.
    let bad = lpgn(&["norm", "--group", "Z4", "--gelfand", "1,i,-1,-i", "--p", "0.5"]);
    assert_eq!(bad.status.code(), Some(2), "{bad:?}");
}

#[test]
fn out_flag_routes_data_to_the_file_and_keeps_stdout_empty() {
    let dir = std::env::temp_dir().join(format!("lpgn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("curve.csv");

    let piped = lpgn(&["delta-curve", "--format", "csv"]);
    let routed = lpgn(&["delta-curve", "--format", "csv", "--out", path.to_str().unwrap()]);
    assert!(routed.status.success(), "{routed:?}");
    assert!(routed.stdout.is_empty(), "data leaked to stdout");
    let on_disk = std::fs::read(&path).unwrap();
    assert_eq!(on_disk, piped.stdout, "file content differs from piped output");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn thread_cap_env_is_accepted_and_does_not_change_results() {
    let base = lpgn(&["verify", "--suite", "gamma", "--seed", "3", "--trials", "5"]);
    assert!(base.status.success(), "{base:?}");

    let capped = Command::new(env!("CARGO_BIN_EXE_lpgn"))
        .args(["verify", "--suite", "gamma", "--seed", "3", "--trials", "5"])
        .env("LPGN_THREADS", "1")
        .output()
        .unwrap();
    assert!(capped.status.success(), "{capped:?}");
    assert_eq!(base.stdout, capped.stdout);

    // A junk value is warned about, not fatal.
    let junk = Command::new(env!("CARGO_BIN_EXE_lpgn"))
        .args(["delta-curve", "--ts", "2"])
        .env("LPGN_THREADS", "many")
        .output()
        .unwrap();
    assert!(junk.status.success(), "{junk:?}");
    assert!(String::from_utf8(junk.stderr).unwrap().contains("LPGN_THREADS"));
}

#[test]
fn identical_configurations_give_byte_identical_output() {
    for args in [
        vec!["norm", "--group", "Z5", "--coeffs", "0.5,0.25,0,0,0.25", "--p", "4/3", "--seed", "11"],
        vec!["witness", "--group", "Z3", "--p", "1", "--q", "2", "--seed", "5"],
        vec!["delta-curve", "--format", "json"],
    ] {
        let a = lpgn(&args);
        let b = lpgn(&args);
        assert!(a.status.success(), "{args:?}: {a:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?} not reproducible");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn kernel_norms_are_reachable_from_the_command_line() {
    let out = lpgn(&["norm", "--kernel", "0:1,1:1", "--p", "2", "--N", "32"]);
    assert!(out.status.success(), "{out:?}");
    let v: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    // Convolution by δ₀+δ₁ has norm 2 on ℓ²; the window-32 compression
    // certifies a lower bound strictly inside (1, 2] and an upper bound
    // at or above 2.
    let (lo, hi) = (v["lower"].as_f64().unwrap(), v["upper"].as_f64().unwrap());
    assert!(lo > 1.9 && lo <= 2.0 + 1e-9, "lower {lo}");
    assert!(hi >= lo && hi <= 2.0 + 1e-3, "upper {hi}");
}
