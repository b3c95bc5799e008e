//! End-to-end behavior of the `mhqmo` binary: output schemas, exit
//! codes, byte stability and the user-observables path.

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mhqmo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mhqmo"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("process exited")
}

fn write_temp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mhqmo-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

fn maximally_mixed_qubit_json() -> String {
    r#"{"dim": 2, "entries": [[0.5, 0.0], [0.0, 0.0], [0.0, 0.0], [0.5, 0.0]]}"#.to_string()
}

#[test]
fn build_qubit_at_half_eta_matches_fixture() {
    let out = run(&["build", "--scenario", "qubit", "--eta", "0.5"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["eta"], serde_json::json!(0.5));
    let elements = doc["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 4);
    let first = &elements[0];
    assert_eq!(first["outcome"], serde_json::json!([1.0, 1.0]));
    // 1/4 (I + 0.5 sigma_x + 0.5 sigma_z) = [[0.375, 0.125], [0.125, 0.125]]
    let entries = first["matrix"]["entries"].as_array().unwrap();
    let want = [[0.375, 0.0], [0.125, 0.0], [0.125, 0.0], [0.125, 0.0]];
    for (entry, expected) in entries.iter().zip(want) {
        assert_eq!(entry[0].as_f64().unwrap(), expected[0]);
        assert_eq!(entry[1].as_f64().unwrap(), expected[1]);
    }
}

#[test]
fn build_qutrit_at_zero_eta_is_diagonal() {
    let out = run(&["build", "--scenario", "qutrit", "--eta", "0"]);
    let doc = stdout_json(&out);
    let elements = doc["elements"].as_array().unwrap();
    assert_eq!(elements.len(), 9);
    for element in elements {
        let entries = element["matrix"]["entries"].as_array().unwrap();
        assert_eq!(entries.len(), 9);
        let diag = entries[0][0].as_f64().unwrap();
        for (k, entry) in entries.iter().enumerate() {
            let (i, j) = (k / 3, k % 3);
            let want = if i == j { diag } else { 0.0 };
            assert_eq!(entry[0].as_f64().unwrap(), want);
            assert_eq!(entry[1].as_f64().unwrap(), 0.0);
        }
    }
}

#[test]
fn build_two_qubit_has_sixteen_elements() {
    let out = run(&["build", "--scenario", "two-qubit", "--eta", "1"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["elements"].as_array().unwrap().len(), 16);
    assert_eq!(doc["outcomes"].as_array().unwrap().len(), 4);
}

#[test]
#[allow(clippy::approx_constant)] // reference values quoted at 1e-6
fn threshold_values_match_the_reference_scenarios() {
    let out = run(&["threshold", "--scenario", "qubit"]);
    let t = stdout_json(&out)["threshold"].as_f64().unwrap();
    assert!((t - 0.7071068).abs() < 1e-6);

    let out = run(&["threshold", "--scenario", "qutrit"]);
    let t = stdout_json(&out)["threshold"].as_f64().unwrap();
    assert!((t - 0.6435943).abs() < 1e-5);

    let out = run(&["threshold", "--scenario", "two-qubit"]);
    let t = stdout_json(&out)["threshold"].as_f64().unwrap();
    assert!((t - 0.6435943).abs() < 1e-5);
}

#[test]
fn scan_two_steps_hits_closed_form_endpoints() {
    let out = run(&[
        "scan",
        "--scenario",
        "qubit",
        "--steps",
        "2",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "eta,min_eig");
    assert_eq!(lines[1], "0.000000000e+00,2.500000000e-01");
    let last: Vec<&str> = lines[2].split(',').collect();
    assert_eq!(last[0], "1.000000000e+00");
    let min_eig: f64 = last[1].parse().unwrap();
    assert!((min_eig - (1.0 - 2.0_f64.sqrt()) / 4.0).abs() < 1e-9);
}

#[test]
fn scan_qutrit_crosses_zero_between_064_and_065() {
    let out = run(&[
        "scan",
        "--scenario",
        "qutrit",
        "--min",
        "0",
        "--max",
        "1",
        "--steps",
        "101",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<(f64, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let mut parts = l.split(',');
            (
                parts.next().unwrap().parse().unwrap(),
                parts.next().unwrap().parse().unwrap(),
            )
        })
        .collect();
    assert_eq!(rows.len(), 101);
    let at = |eta: f64| rows.iter().find(|(e, _)| (e - eta).abs() < 1e-9).unwrap().1;
    assert!(at(0.64) > 0.0);
    assert!(at(0.65) < 0.0);
}

#[test]
fn quasiprob_qutrit_maximally_mixed_matches_trace_oracle() {
    let third = 1.0 / 3.0;
    let state = write_temp(
        "mixed3.json",
        &format!(
            r#"{{"dim": 3, "entries": [[{third}, 0.0], [0.0, 0.0], [0.0, 0.0],
                                        [0.0, 0.0], [{third}, 0.0], [0.0, 0.0],
                                        [0.0, 0.0], [0.0, 0.0], [{third}, 0.0]]}}"#
        ),
    );
    let out = run(&[
        "quasiprob",
        "--scenario",
        "qutrit",
        "--eta",
        "1",
        "--state",
        state.to_str().unwrap(),
    ]);
    let doc = stdout_json(&out);
    let fam = mhqmo::scenario::family_at(mhqmo::scenario::ScenarioKind::Qutrit, 1.0).unwrap();
    let entries = doc["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 9);
    for entry in entries {
        let outcome: Vec<f64> = entry["outcome"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_f64().unwrap())
            .collect();
        let element = fam.element(&outcome).unwrap();
        let expected = element.trace().re / 3.0;
        assert!((entry["p"].as_f64().unwrap() - expected).abs() < 1e-9);
    }
}

#[test]
fn scan_rejects_degenerate_ranges() {
    let out = run(&[
        "scan",
        "--scenario",
        "qubit",
        "--min",
        "0.5",
        "--max",
        "0.5",
        "--steps",
        "2",
    ]);
    assert_eq!(exit_code(&out), 2);
    let out = run(&[
        "scan",
        "--scenario",
        "qubit",
        "--min",
        "0.9",
        "--max",
        "0.1",
    ]);
    assert_eq!(exit_code(&out), 2);
    let out = run(&["scan", "--scenario", "qubit", "--steps", "1"]);
    assert_eq!(exit_code(&out), 2);
    let out = run(&["scan", "--scenario", "qubit", "--max", "1.5"]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn scan_per_element_emits_eigenvalue_columns() {
    let out = run(&[
        "scan",
        "--scenario",
        "qubit",
        "--steps",
        "3",
        "--per-element",
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let header = text.lines().next().unwrap();
    assert!(header.starts_with("eta,min_eig,eig[1|1]1,eig[1|1]2,"));
    // 2 + 4 elements x 2 eigenvalues
    assert_eq!(header.split(',').count(), 10);

    let out = run(&[
        "scan",
        "--scenario",
        "qubit",
        "--steps",
        "3",
        "--per-element",
    ]);
    let doc = stdout_json(&out);
    let row = &doc["grid"][0];
    assert_eq!(row["elements"].as_array().unwrap().len(), 4);
    assert_eq!(
        row["elements"][0]["eigenvalues"].as_array().unwrap().len(),
        2
    );
}

#[test]
fn quasiprob_uniform_for_maximally_mixed_state() {
    let state = write_temp("mixed.json", &maximally_mixed_qubit_json());
    let out = run(&[
        "quasiprob",
        "--scenario",
        "qubit",
        "--eta",
        "1",
        "--state",
        state.to_str().unwrap(),
    ]);
    let doc = stdout_json(&out);
    for entry in doc["entries"].as_array().unwrap() {
        assert_eq!(entry["p"].as_f64().unwrap(), 0.25);
        assert!(entry.get("negative").is_none());
    }
}

#[test]
fn quasiprob_flags_negative_entries() {
    let b = std::f64::consts::FRAC_1_SQRT_2;
    let state = write_temp(
        "bloch.json",
        &format!(
            r#"{{"dim": 2, "entries": [[{}, 0.0], [{}, 0.0], [{}, 0.0], [{}, 0.0]]}}"#,
            0.5 * (1.0 + b),
            0.5 * b,
            0.5 * b,
            0.5 * (1.0 - b)
        ),
    );
    let out = run(&[
        "quasiprob",
        "--scenario",
        "qubit",
        "--eta",
        "1",
        "--state",
        state.to_str().unwrap(),
    ]);
    let doc = stdout_json(&out);
    let entries = doc["entries"].as_array().unwrap();
    let neg: Vec<_> = entries
        .iter()
        .filter(|e| {
            e.get("negative")
                .map(|v| v.as_bool().unwrap())
                .unwrap_or(false)
        })
        .collect();
    assert_eq!(neg.len(), 1);
    assert_eq!(neg[0]["outcome"], serde_json::json!([-1.0, -1.0]));
    assert_eq!(neg[0]["p"].as_f64().unwrap(), -0.103553391);

    // at eta = 0.5 the same state yields no negative entries
    let out = run(&[
        "quasiprob",
        "--scenario",
        "qubit",
        "--eta",
        "0.5",
        "--state",
        state.to_str().unwrap(),
    ]);
    let doc = stdout_json(&out);
    for entry in doc["entries"].as_array().unwrap() {
        assert!(entry.get("negative").is_none());
        assert!(entry["p"].as_f64().unwrap() >= 0.0);
    }
}

#[test]
fn quasiprob_rejects_invalid_states() {
    // trace 2
    let state = write_temp(
        "bad-trace.json",
        r#"{"dim": 2, "entries": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [1.0, 0.0]]}"#,
    );
    let out = run(&[
        "quasiprob",
        "--scenario",
        "qubit",
        "--state",
        state.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 3);

    // valid state of the wrong dimension
    let state = write_temp(
        "wrong-dim.json",
        r#"{"dim": 3, "entries": [[0.34, 0.0], [0.0, 0.0], [0.0, 0.0],
                                   [0.0, 0.0], [0.33, 0.0], [0.0, 0.0],
                                   [0.0, 0.0], [0.0, 0.0], [0.33, 0.0]]}"#,
    );
    let out = run(&[
        "quasiprob",
        "--scenario",
        "qubit",
        "--state",
        state.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 3);

    // unreadable file
    let out = run(&[
        "quasiprob",
        "--scenario",
        "qubit",
        "--state",
        "/nonexistent.json",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(exit_code(&run(&["threshold"])), 2); // no source
    assert_eq!(exit_code(&run(&["threshold", "--scenario", "qudit"])), 2);
    assert_eq!(
        exit_code(&run(&["build", "--scenario", "qubit", "--format", "csv"])),
        2
    );
    let obs = write_temp("also.json", "{}");
    let out = run(&[
        "threshold",
        "--scenario",
        "qubit",
        "--observables",
        obs.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2); // sources are mutually exclusive
}

#[test]
fn eta_out_of_range_is_a_validation_error() {
    let out = run(&["build", "--scenario", "qubit", "--eta", "1.5"]);
    assert_eq!(exit_code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("[0, 1]"));
}

#[test]
#[allow(clippy::approx_constant)] // reference values quoted at 1e-6
fn custom_observables_reproduce_the_qubit_scenario() {
    let obs = write_temp(
        "pair.json",
        r#"{
            "observables": [
                {"dim": 2, "entries": [[0.0, 0.0], [1.0, 0.0], [1.0, 0.0], [0.0, 0.0]]},
                {"dim": 2, "entries": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [-1.0, 0.0]]}
            ],
            "grouping": [[0], [1]]
        }"#,
    );
    let out = run(&["threshold", "--observables", obs.to_str().unwrap()]);
    let t = stdout_json(&out)["threshold"].as_f64().unwrap();
    assert!((t - 0.7071068).abs() < 1e-6);

    let out = run(&[
        "build",
        "--observables",
        obs.to_str().unwrap(),
        "--eta",
        "0.5",
    ]);
    let doc = stdout_json(&out);
    assert_eq!(doc["elements"].as_array().unwrap().len(), 4);
}

#[test]
fn custom_observables_validation_and_parse_errors() {
    let non_hermitian = write_temp(
        "nonherm.json",
        r#"{
            "observables": [
                {"dim": 2, "entries": [[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]}
            ],
            "grouping": [[0]]
        }"#,
    );
    assert_eq!(
        exit_code(&run(&[
            "threshold",
            "--observables",
            non_hermitian.to_str().unwrap()
        ])),
        3
    );

    let garbage = write_temp("garbage.json", "not json at all");
    assert_eq!(
        exit_code(&run(&[
            "threshold",
            "--observables",
            garbage.to_str().unwrap()
        ])),
        2
    );

    assert_eq!(
        exit_code(&run(&[
            "threshold",
            "--observables",
            "/does/not/exist.json"
        ])),
        2
    );

    // a qutrit observable cannot be fuzzified away from eta = 1
    let qutrit = write_temp(
        "qutrit.json",
        r#"{
            "observables": [
                {"dim": 3, "entries": [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0],
                                        [0.0, 0.0], [0.0, 0.0], [0.0, 0.0],
                                        [0.0, 0.0], [0.0, 0.0], [-1.0, 0.0]]}
            ],
            "grouping": [[0]]
        }"#,
    );
    let out = run(&[
        "build",
        "--observables",
        qutrit.to_str().unwrap(),
        "--eta",
        "1",
    ]);
    assert!(out.status.success(), "sharp build works for any dimension");
    let out = run(&[
        "build",
        "--observables",
        qutrit.to_str().unwrap(),
        "--eta",
        "0.5",
    ]);
    assert_eq!(exit_code(&out), 3);
}

#[test]
fn identical_configs_produce_identical_bytes() {
    for args in [
        vec![
            "scan",
            "--scenario",
            "qutrit",
            "--steps",
            "21",
            "--format",
            "csv",
        ],
        vec!["build", "--scenario", "two-qubit", "--eta", "0.7"],
        vec!["threshold", "--scenario", "qubit"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "outputs differ for {args:?}");
    }
}

#[test]
fn out_flag_writes_the_same_bytes_atomically() {
    let dir = std::env::temp_dir().join(format!("mhqmo-out-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("curve.csv");
    let args = [
        "scan",
        "--scenario",
        "qubit",
        "--steps",
        "5",
        "--format",
        "csv",
    ];
    let direct = run(&args);
    let out = run(&[
        "scan",
        "--scenario",
        "qubit",
        "--steps",
        "5",
        "--format",
        "csv",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read(&path).unwrap(), direct.stdout);

    // failed runs must not leave partial files behind
    let missing = dir.join("never-written.json");
    let out = run(&[
        "quasiprob",
        "--scenario",
        "qubit",
        "--state",
        "/nonexistent.json",
        "--out",
        missing.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);
    assert!(!missing.exists());
}

#[test]
fn verify_reports_at_least_twelve_checks() {
    let out = run(&["verify"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let passes = text.lines().filter(|l| l.starts_with("PASS ")).count();
    assert!(passes >= 12, "only {passes} checks reported");
    assert_eq!(text.lines().filter(|l| l.starts_with("FAIL ")).count(), 0);
    for needle in [
        "charfn-vs-jordan-qubit",
        "charfn-vs-jordan-qutrit",
        "charfn-vs-jordan-two-qubit",
        "qutrit-closed-form",
    ] {
        assert!(text.contains(needle), "missing check {needle}");
    }
}

#[test]
fn positivity_slack_env_override() {
    // a huge slack certifies the qubit family on all of [0, 1]
    let out = run_env(&["threshold", "--scenario", "qubit"], "MHQMO_TOL", "0.2");
    let doc = stdout_json(&out);
    assert!(doc["threshold"].is_null());

    let out = run_env(&["threshold", "--scenario", "qubit"], "MHQMO_TOL", "bogus");
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn quasiprob_csv_layout() {
    let state = write_temp("mixed2.json", &maximally_mixed_qubit_json());
    let out = run(&[
        "quasiprob",
        "--scenario",
        "qubit",
        "--eta",
        "0.5",
        "--state",
        state.to_str().unwrap(),
        "--format",
        "csv",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "o1,o2,p,negative");
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[1], "1,1,2.500000000e-01,false");
}
