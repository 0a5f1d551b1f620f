//! Minimal time functions `T_F(x; Omega) = inf { t >= 0 : Omega ∩ (x + tF) != ∅ }`.
//!
//! Supported combinations: the Euclidean ball with every target kind (the
//! minimal time function is then the Euclidean distance), and the unit box
//! with box-like targets (cube, axis box, singleton), where it is the
//! Chebyshev distance to the box.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{first_argmax_abs, linalg, Dynamics, Point, Target, TargetKind};

/// Where the evaluation point sits relative to the target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    InSetInterior,
    InSetBoundary,
    OutOfSet,
}

/// A selected subgradient of a minimal time function.
#[derive(Debug, Clone, PartialEq)]
pub struct MtSubgradient {
    pub vector: Point,
    pub regime: Regime,
    /// The generalized projection the vector was built from (out-of-set only).
    pub witness_projection: Option<Point>,
    /// Set for nonconvex targets: the vector is then only an element of the
    /// upper estimate of the limiting subdifferential, not a convex
    /// subgradient.
    pub upper_estimate: bool,
}

pub fn is_supported(dynamics: Dynamics, target: &Target) -> bool {
    match dynamics {
        Dynamics::EuclideanBall => true,
        Dynamics::UnitBox => matches!(
            target.kind(),
            TargetKind::Box { .. } | TargetKind::AxisBox { .. } | TargetKind::Singleton { .. }
        ),
    }
}

pub(crate) fn check_pair(dynamics: Dynamics, target: &Target) -> Result<()> {
    if is_supported(dynamics, target) {
        Ok(())
    } else {
        Err(Error::UnsupportedPair {
            dynamics,
            target: target.tag(),
        })
    }
}

fn check(dynamics: Dynamics, target: &Target, x: &Point) -> Result<()> {
    check_pair(dynamics, target)?;
    x.expect_dim(target.dim())
}

pub fn minimal_time(dynamics: Dynamics, target: &Target, x: &Point) -> Result<f64> {
    check(dynamics, target, x)?;
    Ok(minimal_time_raw(dynamics, target, x))
}

/// Generalized projections `(x + T(x) F) ∩ Omega`. For the box dynamics the
/// coordinatewise clamp is returned, one deterministic member of a set that
/// is generally not a singleton.
pub fn generalized_project(dynamics: Dynamics, target: &Target, x: &Point) -> Result<Vec<Point>> {
    check(dynamics, target, x)?;
    Ok(generalized_project_raw(dynamics, target, x)
        .into_iter()
        .map(Point::from_raw)
        .collect())
}

/// Subgradient selection: zero in the set, otherwise the unit vector from
/// the (first) projection toward `x` for the Euclidean ball, and
/// `sign(x_j - w_j) e_j` on the first coordinate achieving the Chebyshev gap
/// for the unit box.
pub fn mt_subgradient(dynamics: Dynamics, target: &Target, x: &Point) -> Result<MtSubgradient> {
    check(dynamics, target, x)?;
    let dim = x.dim();
    let upper_estimate = !target.is_convex();
    if target.distance_raw(x) == 0.0 {
        let cone = target.normal_cone(x, 0.0)?;
        let regime = if cone.is_trivial() {
            Regime::InSetInterior
        } else {
            Regime::InSetBoundary
        };
        return Ok(MtSubgradient {
            vector: Point::zeros(dim),
            regime,
            witness_projection: None,
            upper_estimate,
        });
    }
    let witness = generalized_project_raw(dynamics, target, x)
        .into_iter()
        .next()
        .expect("nonempty projection");
    let vector = out_of_set_vector(dynamics, target, x, &witness);
    Ok(MtSubgradient {
        vector: Point::from_raw(vector),
        regime: Regime::OutOfSet,
        witness_projection: Some(Point::from_raw(witness)),
        upper_estimate,
    })
}

pub(crate) fn minimal_time_raw(dynamics: Dynamics, target: &Target, x: &[f64]) -> f64 {
    match dynamics {
        Dynamics::EuclideanBall => target.distance_raw(x),
        Dynamics::UnitBox => (0..x.len()).fold(0.0, |m, i| f64::max(m, target.axis_gap(i, x[i]))),
    }
}

pub(crate) fn generalized_project_raw(
    dynamics: Dynamics,
    target: &Target,
    x: &[f64],
) -> Vec<Vec<f64>> {
    match dynamics {
        Dynamics::EuclideanBall => target.project_raw(x),
        Dynamics::UnitBox => {
            let (lo, hi) = target.bounds().expect("supported box-like target");
            vec![linalg::clamp(x, &lo, &hi)]
        }
    }
}

/// The subgradient for `x` outside the target given a projection `w`.
pub(crate) fn out_of_set_vector(
    dynamics: Dynamics,
    target: &Target,
    x: &[f64],
    w: &[f64],
) -> Vec<f64> {
    match dynamics {
        Dynamics::EuclideanBall => {
            // For balls (x - c)/|x - c| equals (x - w)/|x - w| and is the
            // form used by the disk iteration.
            let d = match target.kind() {
                TargetKind::Ball { center, .. } => linalg::sub(x, center),
                _ => linalg::sub(x, w),
            };
            let n = linalg::norm(&d);
            linalg::scale(&d, 1.0 / n)
        }
        Dynamics::UnitBox => {
            let gap = linalg::sub(x, w);
            let mut v = vec![0.0; x.len()];
            if let Some(j) = first_argmax_abs(&gap) {
                v[j] = linalg::sign(gap[j]);
            }
            v
        }
    }
}

/// Accumulates the selected subgradient for `x` into `acc`. Returns without
/// touching `acc` when `x` is in the target.
pub(crate) fn add_subgradient_raw(dynamics: Dynamics, target: &Target, x: &[f64], acc: &mut [f64]) {
    if target.distance_raw(x) == 0.0 {
        return;
    }
    let witness = generalized_project_raw(dynamics, target, x).swap_remove(0);
    linalg::add_assign(acc, &out_of_set_vector(dynamics, target, x, &witness));
}
