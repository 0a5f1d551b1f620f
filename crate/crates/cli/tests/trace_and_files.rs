use std::path::PathBuf;
use std::process::Command;

use fermat_cli::trace::{header, read_trace};
use fermat_cli::{load_problem, ProblemFile};
use proptest::prelude::*;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.json"))
}

/// Sum of distances to the three disks of the `disks3` fixture, computed
/// without the library.
fn disks3_value(x: &[f64]) -> f64 {
    [[-2.0, 0.0], [0.0, 2.0], [2.0, 0.0]]
        .iter()
        .map(|c: &[f64; 2]| (((x[0] - c[0]).powi(2) + (x[1] - c[1]).powi(2)).sqrt() - 1.0).max(0.0))
        .sum()
}

#[test]
fn trace_rows_match_recomputed_values() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("trace.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_fermat"))
        .args(["solve", "--problem"])
        .arg(fixture("disks3"))
        .args([
            "--start",
            "5,7",
            "--max-iters",
            "1000",
            "--trace-every",
            "10",
            "--trace",
        ])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let raw = std::fs::read(&path).unwrap();
    assert!(!raw.contains(&b'\r'));
    let (h, rows) = read_trace(&raw[..]).unwrap();
    assert_eq!(h, header(2));
    assert_eq!(h.join(","), "k,x1,x2,value,best_value");
    let ks: Vec<usize> = rows.iter().map(|r| r.0).collect();
    assert_eq!(ks, (0..=100).map(|i| i * 10).collect::<Vec<_>>());
    assert_eq!(rows[0].1, vec![5.0, 7.0]);
    let mut best = f64::INFINITY;
    for (k, x, value, best_value) in &rows {
        assert!((disks3_value(x) - value).abs() <= 1e-12, "row {k}");
        best = best.min(*value);
        assert!(*best_value <= best);
    }
}

#[test]
fn fixtures_round_trip() {
    for name in [
        "disks3",
        "disks4",
        "disks5",
        "squares3",
        "squares5",
        "squares3_boxdyn",
        "squares5_boxdyn",
        "ex45",
        "singletons3",
        "singletons3_boxdyn",
    ] {
        let p = load_problem(&fixture(name)).unwrap();
        let again = ProblemFile::from_json(&ProblemFile::from_problem(&p).to_json())
            .unwrap()
            .to_problem()
            .unwrap();
        assert_eq!(again, p, "{name}");
    }
}

fn target_json() -> impl Strategy<Value = String> {
    let c = || (-1e3..1e3f64, -1e3..1e3f64);
    let r = || 1e-6..1e3f64;
    prop_oneof![
        c().prop_map(|(a, b)| format!(r#"{{"kind":"singleton","point":[{a:?},{b:?}]}}"#)),
        (c(), r()).prop_map(|((a, b), r)| format!(
            r#"{{"kind":"ball","center":[{a:?},{b:?}],"radius":{r:?}}}"#
        )),
        (c(), r()).prop_map(|((a, b), r)| format!(
            r#"{{"kind":"box","center":[{a:?},{b:?}],"radius":{r:?}}}"#
        )),
        (c(), r(), r()).prop_map(|((a, b), r, s)| format!(
            r#"{{"kind":"axis_box","center":[{a:?},{b:?}],"radii":[{r:?},{s:?}]}}"#
        )),
        c().prop_map(|(a, b)| format!(r#"{{"kind":"abs_epigraph","apex":[{a:?},{b:?}]}}"#)),
    ]
}

proptest! {
    #[test]
    fn serialized_problems_reparse_identically(targets in proptest::collection::vec(target_json(), 1..6), unit in any::<bool>()) {
        let dynamics = if unit { "unit_box" } else { "euclidean_ball" };
        let text = format!(r#"{{"dimension":2,"dynamics":{{"kind":"{dynamics}"}},"targets":[{}]}}"#, targets.join(","));
        let file = ProblemFile::from_json(&text).unwrap();
        let problem = file.to_problem().unwrap();
        let back = ProblemFile::from_problem(&problem);
        prop_assert_eq!(&back, &file);
        let reparsed = ProblemFile::from_json(&back.to_json()).unwrap().to_problem().unwrap();
        prop_assert_eq!(reparsed, problem);
    }
}
