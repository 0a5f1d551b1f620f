use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
        .display()
        .to_string()
}

fn fermat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermat"))
        .args(args)
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn num(v: &Value, key: &str) -> f64 {
    v[key]
        .as_f64()
        .unwrap_or_else(|| panic!("{key} missing in {v}"))
}

fn point(v: &Value, key: &str) -> Vec<f64> {
    v[key]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}

#[test]
fn solve_three_disks() {
    let v = json(&fermat(&[
        "solve",
        "--problem",
        &fixture("disks3"),
        "--start",
        "5,7",
        "--steps",
        "harmonic",
        "--max-iters",
        "100000",
    ]));
    assert_eq!(format!("{:.4}", num(&v, "best_value")), "2.4721");
    assert_eq!(v["iterations"], 100000);
    assert_eq!(v["stop_reason"], "MaxIters");
    assert_eq!(v["guarantee"], "Sufficient");
}

#[test]
fn solve_five_squares_box_dynamics() {
    let v = json(&fermat(&[
        "solve",
        "--problem",
        &fixture("squares5_boxdyn"),
        "--start",
        "1,1",
        "--steps",
        "harmonic",
        "--max-iters",
        "100000",
    ]));
    let x = point(&v, "best_point");
    assert!(x[0].abs() < 1e-3 && (x[1] - 1.0).abs() < 1e-3, "{x:?}");
    assert_eq!(format!("{:.4}", num(&v, "best_value")), "3.7500");
}

#[test]
fn solve_reports_error_bound_and_stops_early() {
    let v = json(&fermat(&[
        "solve",
        "--problem",
        &fixture("disks3"),
        "--start",
        "5,7",
        "--max-iters",
        "1000",
        "--error-bound",
    ]));
    let d = num(&v, "dist_to_solution");
    assert!((d - (25.0f64 + 36.0).sqrt()).abs() < 1e-3);
    let bound = num(&v, "error_bound");
    assert!(num(&v, "best_value") - 2.4721 <= bound);
    let v = json(&fermat(&[
        "solve",
        "--problem",
        &fixture("disks3"),
        "--start",
        "5,7",
        "--tol",
        "1e-3",
        "--trace-every",
        "10",
    ]));
    assert_eq!(v["stop_reason"], "ResidualTol");
    assert!(v["iterations"].as_u64().unwrap() < 100000);
    let v = json(&fermat(&[
        "solve",
        "--problem",
        &fixture("disks3"),
        "--start",
        "5,7",
        "--steps",
        "constant:0.01",
        "--max-iters",
        "100",
        "--error-bound",
    ]));
    assert!(v["error_bound"].is_null());
}

#[test]
fn validation_errors_name_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"dimension": 2, "dynamics": {"kind": "euclidean_ball"}, "targets": [{"kind": "ball", "center": [0, 0], "radius": -1}]}"#,
    )
    .unwrap();
    let out = fermat(&[
        "solve",
        "--problem",
        path.to_str().unwrap(),
        "--start",
        "1,1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("targets[0].radius"));

    let out = fermat(&["solve", "--problem", &fixture("disks3"), "--start", "1,2,3"]);
    assert_eq!(out.status.code(), Some(1));
    let out = fermat(&[
        "solve",
        "--problem",
        &fixture("disks3"),
        "--start",
        "1,1",
        "--steps",
        "polyak",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let out = fermat(&["solve", "--problem", "/nonexistent.json", "--start", "1,1"]);
    assert_eq!(out.status.code(), Some(1));
    let out = fermat(&["solve", "--bogus"]);
    assert_eq!(out.status.code(), Some(1));
    let out = fermat(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn unsupported_pair_and_divergence_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    std::fs::write(
        &path,
        r#"{"dimension": 2, "dynamics": {"kind": "unit_box"}, "targets": [{"kind": "ball", "center": [0, 0], "radius": 1}]}"#,
    )
    .unwrap();
    let out = fermat(&[
        "solve",
        "--problem",
        path.to_str().unwrap(),
        "--start",
        "3,3",
    ]);
    assert_eq!(out.status.code(), Some(2));
    let out = fermat(&["oracle", "--problem", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let out = fermat(&[
        "solve",
        "--problem",
        &fixture("disks3"),
        "--start",
        "5,7",
        "--steps",
        "constant:1e13",
        "--max-iters",
        "10",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn check_examples() {
    let v = json(&fermat(&[
        "check",
        "--problem",
        &fixture("ex45"),
        "--point",
        "-0.8706,-2.4920",
        "--tol",
        "1e-3",
    ]));
    assert_eq!(v["holds"], true);
    assert_eq!(v["mode"], "NecessaryOnly");
    assert_eq!(v["active_target"], 0);

    let v = json(&fermat(&[
        "check",
        "--problem",
        &fixture("disks3"),
        "--point",
        "0,1",
        "--tol",
        "1e-6",
    ]));
    assert_eq!(v["holds"], true);
    assert_eq!(v["mode"], "Sufficient");
    assert_eq!(v["three_set"]["case"], "InOne");
    assert_eq!(v["three_set"]["satisfied"], true);

    // unit vectors from the centers toward the origin: (1,0), (0,-1), (-1,0)
    let v = json(&fermat(&[
        "check",
        "--problem",
        &fixture("disks3"),
        "--point",
        "0,0",
        "--tol",
        "1e-6",
    ]));
    assert_eq!(v["holds"], false);
    assert!((num(&v, "residual") - 1.0).abs() < 1e-12);
    assert_eq!(v["three_set"]["case"], "InNone");

    let v = json(&fermat(&[
        "check",
        "--problem",
        &fixture("squares5_boxdyn"),
        "--point",
        "0,1",
    ]));
    assert!(v.get("three_set").is_none());
}

#[test]
fn check_rejects_points_in_two_targets() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("overlap.json");
    std::fs::write(
        &path,
        r#"{"dimension": 2, "dynamics": {"kind": "euclidean_ball"}, "targets": [
            {"kind": "ball", "center": [0, 0], "radius": 1},
            {"kind": "ball", "center": [1, 0], "radius": 1},
            {"kind": "singleton", "point": [5, 5]}]}"#,
    )
    .unwrap();
    let out = fermat(&[
        "check",
        "--problem",
        path.to_str().unwrap(),
        "--point",
        "0.5,0",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn oracle_examples() {
    for (name, value, at) in [
        ("disks4", 4.7141, [0.8453, 0.0]),
        ("disks5", 3.2973, [0.0, 0.8505]),
        ("squares5", 4.3014, [0.0, 0.7242]),
    ] {
        let v = json(&fermat(&["oracle", "--problem", &fixture(name)]));
        assert!((num(&v, "min_value") - value).abs() < 1e-3, "{name}: {v}");
        let x = point(&v, "argmin");
        assert!(
            (x[0] - at[0]).abs() < 2e-3 && (x[1] - at[1]).abs() < 2e-3,
            "{name}: {x:?}"
        );
    }
    let v = json(&fermat(&[
        "oracle",
        "--problem",
        &fixture("disks3"),
        "--bbox",
        "-4,-4,4,4",
        "--coarse-n",
        "200",
        "--refinements",
        "4",
    ]));
    assert!((num(&v, "min_value") - 2.4721).abs() < 1e-3);
    assert!(num(&v, "cell_size") < 1e-6);
    let out = fermat(&[
        "oracle",
        "--problem",
        &fixture("disks3"),
        "--bbox",
        "4,4,-4,-4",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn intervals_examples() {
    let v = json(&fermat(&["intervals", "0,1", "2,3", "4,5"]));
    assert_eq!(v["optimal_interval"], serde_json::json!([2.0, 3.0]));
    assert_eq!(num(&v, "value"), 3.0);
    let v = json(&fermat(&["intervals", "0,1", "2,3"]));
    assert_eq!(v["optimal_interval"], serde_json::json!([1.0, 2.0]));
    assert_eq!(num(&v, "value"), 1.0);
    let v = json(&fermat(&["intervals", "-5,-4", "-1,0", "3,3"]));
    assert_eq!(v["optimal_interval"], serde_json::json!([-1.0, 0.0]));
    assert_eq!(fermat(&["intervals", "2,3", "0,1"]).status.code(), Some(1));
    assert_eq!(fermat(&["intervals", "0,1", "1,2"]).status.code(), Some(1));
    assert_eq!(fermat(&["intervals", "0"]).status.code(), Some(1));
}

#[test]
fn torricelli_example() {
    let v = json(&fermat(&["torricelli", "-1,0", "0,1", "1,0"]));
    let x = point(&v, "point");
    assert!(x[0].abs() < 1e-9 && (x[1] - 1.0 / 3f64.sqrt()).abs() < 1e-9);
    assert_eq!(
        fermat(&["torricelli", "0,0", "0,0", "1,0"]).status.code(),
        Some(1)
    );
}

#[test]
fn pretty_output_is_text() {
    let out = fermat(&["--pretty", "intervals", "0,1", "2,3", "4,5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("optimal set [2, 3]"), "{text}");
    let out = fermat(&[
        "check",
        "--pretty",
        "--problem",
        &fixture("disks3"),
        "--point",
        "0,1",
    ]);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("certificate holds"));
}

#[test]
fn trailing_pretty_flag_is_not_a_positional_value() {
    let out = fermat(&["torricelli", "0,0", "4,0", "-2,3", "--pretty"]);
    assert!(out.status.success(), "{:?}", out);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("Torricelli point"), "{text}");
    let out = fermat(&["intervals", "-3,-2", "0,1", "--pretty"]);
    assert!(out.status.success(), "{:?}", out);
    // after `--` it is an ordinary value again
    let out = fermat(&["intervals", "--", "0,1", "--pretty"]);
    assert_eq!(out.status.code(), Some(1));
}
