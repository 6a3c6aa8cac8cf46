//! End-to-end tests against the compiled binary.

use std::process::{Command, Output};

fn fermatq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermatq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "expected success, got {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_q81_pair_of_quartics_is_minimal() {
    let out = fermatq(&["classify", "--p", "3", "--n", "4", "--d", "4,4", "--a", "1,1", "--b", "1"]);
    let v = stdout_json(&out);
    assert_eq!(v["status"], "minimal");
    assert_eq!(v["count"], 24);
    assert_eq!(v["bound"]["lower"], 24);
    assert_eq!(v["r"], 1);
}

#[test]
fn bound_q9_pair_of_quartics() {
    let out = fermatq(&["bound", "--p", "3", "--n", "2", "--s", "2", "--d", "4,4"]);
    let v = stdout_json(&out);
    assert_eq!(v["i_value"], 3);
    assert_eq!(v["lower"], 0);
    assert_eq!(v["upper"], 30);
    assert_eq!(v["exact"], true);
}

#[test]
fn count_circle_over_f5() {
    let out = fermatq(&[
        "count", "--p", "5", "--n", "1", "--d", "2,2", "--a", "1,1", "--b", "1", "--method", "brute",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["n_points"], 4);
    assert_eq!(v["method"], "bruteforce");
}

#[test]
fn count_methods_agree_and_accept_generator_powers() {
    let brute = stdout_json(&fermatq(&[
        "count", "--p", "3", "--n", "4", "--d", "4,4", "--a", "g^0,g^2", "--b", "g^1", "--method", "brute",
    ]));
    let charsum = stdout_json(&fermatq(&[
        "count", "--p", "3", "--n", "4", "--d", "4,4", "--a", "g^0,g^2", "--b", "g^1", "--method", "charsum",
    ]));
    assert_eq!(brute["n_points"], charsum["n_points"]);
}

#[test]
fn verify_passes_on_small_fields() {
    for (p, n) in [("2", "2"), ("3", "2"), ("5", "1"), ("7", "1")] {
        let v = stdout_json(&fermatq(&["verify", "--p", p, "--n", n]));
        assert_eq!(v["pass"], true, "identity suite failed for p={p} n={n}");
    }
}

#[test]
fn bad_input_exits_2() {
    // 4 is prime? no — composite p must be rejected
    let out = fermatq(&["bound", "--p", "4", "--n", "1", "--s", "2", "--d", "2,2"]);
    assert_eq!(out.status.code(), Some(2));
    // d does not divide q-1
    let out = fermatq(&["count", "--p", "5", "--n", "1", "--d", "3,3", "--a", "1,1", "--b", "1", "--method", "brute"]);
    assert_eq!(out.status.code(), Some(2));
    // zero coefficient
    let out = fermatq(&["count", "--p", "5", "--n", "1", "--d", "2,2", "--a", "0,1", "--b", "1", "--method", "brute"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn q_cap_env_exits_4() {
    let out = Command::new(env!("CARGO_BIN_EXE_fermatq"))
        .env("FERMATQ_Q_CAP", "16")
        .args(["count", "--p", "5", "--n", "2", "--d", "2,2", "--a", "1,1", "--b", "1", "--method", "brute"])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn scan_is_deterministic_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let out_a = dir.path().join("a.jsonl");
    let out_b = dir.path().join("b.jsonl");
    for path in [&out_a, &out_b] {
        let out = fermatq(&[
            "scan",
            "--p-min", "2", "--p-max", "3",
            "--n-min", "1", "--n-max", "2",
            "--s-min", "2", "--s-max", "3",
            "--max-d", "4",
            "--verify-sample-rate", "0.5",
            "--seed", "42",
            "--out", path.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let a = std::fs::read(&out_a).unwrap();
    let b = std::fs::read(&out_b).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "two runs of the same scan differ");
}

#[test]
fn scan_job_file_matches_flags() {
    let dir = tempfile::tempdir().unwrap();
    let out_flags = dir.path().join("flags.jsonl");
    let out_job = dir.path().join("job.jsonl");
    let job_path = dir.path().join("job.json");
    std::fs::write(
        &job_path,
        serde_json::json!({
            "p_min": 3, "p_max": 3, "n_min": 2, "n_max": 2,
            "s_min": 2, "s_max": 2, "max_d": 4,
            "sampling": "representatives",
            "out": out_job, "seed": 1
        })
        .to_string(),
    )
    .unwrap();
    let a = fermatq(&[
        "scan", "--p-min", "3", "--p-max", "3", "--n-min", "2", "--n-max", "2",
        "--s-min", "2", "--s-max", "2", "--max-d", "4", "--seed", "1",
        "--out", out_flags.to_str().unwrap(),
    ]);
    let b = fermatq(&["scan", "--job", job_path.to_str().unwrap(), "--out", "ignored"]);
    assert!(a.status.success() && b.status.success());
    assert_eq!(std::fs::read(&out_flags).unwrap(), std::fs::read(&out_job).unwrap());
}

#[test]
fn scan_rows_round_trip_into_valid_count_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rt.jsonl");
    let out = fermatq(&[
        "scan", "--p-min", "3", "--p-max", "3", "--n-min", "2", "--n-max", "2",
        "--s-min", "2", "--s-max", "2", "--max-d", "4",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    for line in text.lines().take(10) {
        let row: serde_json::Value = serde_json::from_str(line).unwrap();
        let d: Vec<String> = row["d"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
        let a: Vec<String> = row["a"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
        let rerun = fermatq(&[
            "count",
            "--p", &row["p"].to_string(),
            "--n", &row["n"].to_string(),
            "--d", &d.join(","),
            "--a", &a.join(","),
            "--b", &row["b"].to_string(),
            "--method", "brute",
        ]);
        assert!(rerun.status.success(), "row does not re-parse: {line}");
    }
}

#[test]
fn scan_guard_truncates_with_marker_and_exit_4() {
    // exhaustive sampling over q=81 with s up to 4 blows past the spec guard
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("big.jsonl");
    let out = fermatq(&[
        "scan", "--p-min", "3", "--p-max", "3", "--n-min", "4", "--n-max", "4",
        "--s-min", "4", "--s-max", "4", "--max-d", "2", "--sampling", "exhaustive",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(4));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().last().unwrap(), "{\"truncated\":true}");
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["truncated"], true);
}

#[test]
fn scan_empty_grid_is_ok() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("empty.jsonl");
    // q-1 = 4 has no divisor in [2,3] besides 2; require gcd > 2 filters everything
    let out = fermatq(&[
        "scan", "--p-min", "5", "--p-max", "5", "--n-min", "1", "--n-max", "1",
        "--s-min", "2", "--s-max", "2", "--max-d", "3", "--require-gcd-gt-2",
        "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read(&path).unwrap(), b"");
    let summary: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(summary["total"], 0);
}
