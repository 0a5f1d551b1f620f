//! JSON problem files.
//!
//! ```json
//! {
//!   "dimension": 2,
//!   "dynamics": { "kind": "euclidean_ball" },
//!   "targets": [
//!     { "kind": "ball", "center": [-2, 0], "radius": 1 },
//!     { "kind": "singleton", "point": [0, 2] }
//!   ]
//! }
//! ```
//!
//! Every validation failure names the JSON path of the offending field,
//! e.g. `targets[0].radius`.

use std::fs;
use std::path::Path;

use fermat_core::{Dynamics, Point, Problem, Target, TargetKind};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub dimension: usize,
    pub dynamics: DynamicsSpec,
    pub targets: Vec<TargetSpec>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum DynamicsSpec {
    EuclideanBall,
    UnitBox,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TargetSpec {
    Singleton { point: Vec<f64> },
    Ball { center: Vec<f64>, radius: f64 },
    Box { center: Vec<f64>, radius: f64 },
    AxisBox { center: Vec<f64>, radii: Vec<f64> },
    Interval { a: f64, b: f64 },
    AbsEpigraph { apex: Vec<f64> },
}

impl From<DynamicsSpec> for Dynamics {
    fn from(d: DynamicsSpec) -> Self {
        match d {
            DynamicsSpec::EuclideanBall => Dynamics::EuclideanBall,
            DynamicsSpec::UnitBox => Dynamics::UnitBox,
        }
    }
}

impl From<Dynamics> for DynamicsSpec {
    fn from(d: Dynamics) -> Self {
        match d {
            Dynamics::EuclideanBall => DynamicsSpec::EuclideanBall,
            Dynamics::UnitBox => DynamicsSpec::UnitBox,
        }
    }
}

fn vector(path: &str, values: &[f64], dim: usize) -> Result<Point, CliError> {
    if values.len() != dim {
        return Err(CliError::invalid(
            path,
            format!("expected {dim} coordinates, found {}", values.len()),
        ));
    }
    Point::from_slice(values).map_err(|e| CliError::invalid(path, e.to_string()))
}

fn positive(path: &str, r: f64) -> Result<f64, CliError> {
    if r.is_finite() && r > 0.0 {
        Ok(r)
    } else {
        Err(CliError::invalid(
            path,
            format!("must be positive and finite, found {r}"),
        ))
    }
}

fn require_dim(path: &str, kind: &str, need: usize, dim: usize) -> Result<(), CliError> {
    if dim == need {
        Ok(())
    } else {
        Err(CliError::invalid(
            path,
            format!("{kind} targets require dimension {need}, problem has dimension {dim}"),
        ))
    }
}

impl TargetSpec {
    fn to_target(&self, index: usize, dim: usize) -> Result<Target, CliError> {
        let at = |field: &str| format!("targets[{index}].{field}");
        let kind = match self {
            TargetSpec::Singleton { point } => TargetKind::Singleton {
                point: vector(&at("point"), point, dim)?,
            },
            TargetSpec::Ball { center, radius } => TargetKind::Ball {
                center: vector(&at("center"), center, dim)?,
                radius: positive(&at("radius"), *radius)?,
            },
            TargetSpec::Box { center, radius } => TargetKind::Box {
                center: vector(&at("center"), center, dim)?,
                radius: positive(&at("radius"), *radius)?,
            },
            TargetSpec::AxisBox { center, radii } => {
                let center = vector(&at("center"), center, dim)?;
                if radii.len() != dim {
                    return Err(CliError::invalid(
                        at("radii"),
                        format!("expected {dim} half-widths, found {}", radii.len()),
                    ));
                }
                for (j, r) in radii.iter().enumerate() {
                    positive(&format!("targets[{index}].radii[{j}]"), *r)?;
                }
                TargetKind::AxisBox {
                    center,
                    radii: radii.clone(),
                }
            }
            TargetSpec::Interval { a, b } => {
                require_dim(&at("kind"), "interval", 1, dim)?;
                if a > b {
                    return Err(CliError::invalid(
                        at("b"),
                        format!("must be >= a ({a}), found {b}"),
                    ));
                }
                TargetKind::Interval { a: *a, b: *b }
            }
            TargetSpec::AbsEpigraph { apex } => {
                require_dim(&at("kind"), "abs_epigraph", 2, dim)?;
                TargetKind::AbsEpigraph {
                    apex: vector(&at("apex"), apex, dim)?,
                }
            }
        };
        Target::new(kind).map_err(|e| CliError::invalid(format!("targets[{index}]"), e.to_string()))
    }

    fn from_target(t: &Target) -> Self {
        match t.kind() {
            TargetKind::Singleton { point } => TargetSpec::Singleton {
                point: point.to_vec(),
            },
            TargetKind::Ball { center, radius } => TargetSpec::Ball {
                center: center.to_vec(),
                radius: *radius,
            },
            TargetKind::Box { center, radius } => TargetSpec::Box {
                center: center.to_vec(),
                radius: *radius,
            },
            TargetKind::AxisBox { center, radii } => TargetSpec::AxisBox {
                center: center.to_vec(),
                radii: radii.clone(),
            },
            TargetKind::Interval { a, b } => TargetSpec::Interval { a: *a, b: *b },
            TargetKind::AbsEpigraph { apex } => TargetSpec::AbsEpigraph {
                apex: apex.to_vec(),
            },
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    dimension: usize,
    dynamics: DynamicsSpec,
    targets: Vec<serde_json::Value>,
}

mod fields {
    use serde::Deserialize;

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Singleton {
        pub point: Vec<f64>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Round {
        pub center: Vec<f64>,
        pub radius: f64,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct AxisBox {
        pub center: Vec<f64>,
        pub radii: Vec<f64>,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Interval {
        pub a: f64,
        pub b: f64,
    }

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct AbsEpigraph {
        pub apex: Vec<f64>,
    }
}

fn parse_fields<T: for<'de> Deserialize<'de>>(
    prefix: &str,
    value: serde_json::Value,
) -> Result<T, CliError> {
    serde_path_to_error::deserialize(value).map_err(|e| {
        let inner = e.path().to_string();
        let path = if inner == "." {
            prefix.to_owned()
        } else {
            format!("{prefix}.{inner}")
        };
        CliError::invalid(path, e.into_inner().to_string())
    })
}

/// Parses one target object, dispatching on `kind` before deserializing the
/// remaining fields so that errors keep their full path.
fn parse_target(index: usize, value: serde_json::Value) -> Result<TargetSpec, CliError> {
    let prefix = format!("targets[{index}]");
    let serde_json::Value::Object(mut map) = value else {
        return Err(CliError::invalid(prefix, "expected an object"));
    };
    let kind = match map.remove("kind") {
        Some(serde_json::Value::String(k)) => k,
        Some(_) => {
            return Err(CliError::invalid(
                format!("{prefix}.kind"),
                "expected a string",
            ))
        }
        None => return Err(CliError::invalid(prefix, "missing field `kind`")),
    };
    let rest = serde_json::Value::Object(map);
    Ok(match kind.as_str() {
        "singleton" => {
            let f: fields::Singleton = parse_fields(&prefix, rest)?;
            TargetSpec::Singleton { point: f.point }
        }
        "ball" => {
            let f: fields::Round = parse_fields(&prefix, rest)?;
            TargetSpec::Ball {
                center: f.center,
                radius: f.radius,
            }
        }
        "box" => {
            let f: fields::Round = parse_fields(&prefix, rest)?;
            TargetSpec::Box {
                center: f.center,
                radius: f.radius,
            }
        }
        "axis_box" => {
            let f: fields::AxisBox = parse_fields(&prefix, rest)?;
            TargetSpec::AxisBox {
                center: f.center,
                radii: f.radii,
            }
        }
        "interval" => {
            let f: fields::Interval = parse_fields(&prefix, rest)?;
            TargetSpec::Interval { a: f.a, b: f.b }
        }
        "abs_epigraph" => {
            let f: fields::AbsEpigraph = parse_fields(&prefix, rest)?;
            TargetSpec::AbsEpigraph { apex: f.apex }
        }
        other => {
            return Err(CliError::invalid(
                format!("{prefix}.kind"),
                format!("unknown target kind `{other}`"),
            ))
        }
    })
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let raw: RawFile = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::invalid(path, e.into_inner().to_string())
        })?;
        let targets = raw
            .targets
            .into_iter()
            .enumerate()
            .map(|(i, v)| parse_target(i, v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ProblemFile {
            dimension: raw.dimension,
            dynamics: raw.dynamics,
            targets,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("problem files always serialize")
    }

    pub fn to_problem(&self) -> Result<Problem, CliError> {
        if self.dimension == 0 {
            return Err(CliError::invalid("dimension", "must be at least 1"));
        }
        if self.targets.is_empty() {
            return Err(CliError::invalid(
                "targets",
                "at least one target is required",
            ));
        }
        let targets = self
            .targets
            .iter()
            .enumerate()
            .map(|(i, t)| t.to_target(i, self.dimension))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Problem::new(self.dimension, self.dynamics.into(), targets)?)
    }

    pub fn from_problem(problem: &Problem) -> Self {
        ProblemFile {
            dimension: problem.dimension(),
            dynamics: problem.dynamics().into(),
            targets: problem
                .targets()
                .iter()
                .map(TargetSpec::from_target)
                .collect(),
        }
    }
}

/// Reads and validates a problem file.
pub fn load_problem(path: &Path) -> Result<Problem, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    ProblemFile::from_json(&text)?.to_problem()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_path(json: &str) -> String {
        match ProblemFile::from_json(json).and_then(|f| f.to_problem()) {
            Err(CliError::Invalid { path, .. }) => path,
            other => panic!("expected a validation error, got {other:?}"),
        }
    }

    #[test]
    fn parses_all_kinds() {
        let f = ProblemFile::from_json(
            r#"{"dimension": 2, "dynamics": {"kind": "euclidean_ball"}, "targets": [
                {"kind": "singleton", "point": [0, 1]},
                {"kind": "ball", "center": [1, 2], "radius": 0.5},
                {"kind": "box", "center": [3, 2], "radius": 0.5},
                {"kind": "axis_box", "center": [5, 2], "radii": [0.5, 1]},
                {"kind": "abs_epigraph", "apex": [0, -9]}
            ]}"#,
        )
        .unwrap();
        let p = f.to_problem().unwrap();
        assert_eq!(p.targets().len(), 5);
        let iv = ProblemFile::from_json(
            r#"{"dimension": 1, "dynamics": {"kind": "unit_box"}, "targets": [{"kind": "interval", "a": 0, "b": 1}]}"#,
        )
        .unwrap();
        assert_eq!(iv.to_problem().unwrap().dynamics(), Dynamics::UnitBox);
    }

    #[test]
    fn reports_json_paths() {
        let base = |t: &str| {
            format!(
                r#"{{"dimension": 2, "dynamics": {{"kind": "euclidean_ball"}}, "targets": [{t}]}}"#
            )
        };
        assert_eq!(
            err_path(&base(r#"{"kind": "ball", "center": [0, 0], "radius": -1}"#)),
            "targets[0].radius"
        );
        assert_eq!(
            err_path(&base(r#"{"kind": "ball", "center": [0], "radius": 1}"#)),
            "targets[0].center"
        );
        assert_eq!(
            err_path(&base(
                r#"{"kind": "ball", "center": [0, 0], "radius": "x"}"#
            )),
            "targets[0].radius"
        );
        assert_eq!(
            err_path(&base(
                r#"{"kind": "axis_box", "center": [0, 0], "radii": [1, 0]}"#
            )),
            "targets[0].radii[1]"
        );
        assert_eq!(
            err_path(&base(r#"{"kind": "interval", "a": 0, "b": 1}"#)),
            "targets[0].kind"
        );
        assert_eq!(
            err_path(&base(r#"{"kind": "disk", "center": [0, 0]}"#)),
            "targets[0].kind"
        );
        assert_eq!(
            err_path(&base(
                r#"{"kind": "ball", "center": [0, 0], "radius": 1, "colour": 2}"#
            )),
            "targets[0].colour"
        );
        assert_eq!(err_path(&base("")), "targets");
        assert_eq!(
            err_path(r#"{"dimension": 2, "dynamics": {"kind": "square"}, "targets": []}"#),
            "dynamics.kind"
        );
        assert_eq!(
            err_path(r#"{"dimension": 0, "dynamics": {"kind": "unit_box"}, "targets": []}"#),
            "dimension"
        );
    }

    #[test]
    fn round_trips() {
        let f = ProblemFile::from_json(
            r#"{"dimension": 2, "dynamics": {"kind": "unit_box"}, "targets": [
                {"kind": "box", "center": [0.1, -2.5], "radius": 0.25},
                {"kind": "axis_box", "center": [3, 1e-7], "radii": [0.5, 1]}
            ]}"#,
        )
        .unwrap();
        let p = f.to_problem().unwrap();
        let again = ProblemFile::from_json(&ProblemFile::from_problem(&p).to_json()).unwrap();
        assert_eq!(again, f);
        assert_eq!(again.to_problem().unwrap(), p);
    }
}
