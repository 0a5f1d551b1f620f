//! Normal cones of the supported target families and their intersection
//! with the dual set `C* = { v : support(-v) <= 1 }`.

use alloc::vec::Vec;

use super::dynamics::Dynamics;
use super::point::linalg;

/// Sign constraint on one coordinate of a product cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxisCone {
    Zero,
    NonNeg,
    NonPos,
    Free,
}

impl AxisCone {
    fn project(self, v: f64) -> f64 {
        match self {
            AxisCone::Zero => 0.0,
            AxisCone::NonNeg => v.max(0.0),
            AxisCone::NonPos => v.min(0.0),
            AxisCone::Free => v,
        }
    }
}

/// A normal cone at a point of a target.
#[derive(Debug, Clone, PartialEq)]
pub enum NormalCone {
    /// Product of per-coordinate sign cones. All `Zero` is the trivial cone
    /// of an interior point; all `Free` is the whole space.
    Product(Vec<AxisCone>),
    /// Union of one or two rays spanned by unit directions.
    Rays(Vec<Vec<f64>>),
}

impl NormalCone {
    pub fn trivial(dim: usize) -> Self {
        NormalCone::Product(alloc::vec![AxisCone::Zero; dim])
    }

    pub fn whole(dim: usize) -> Self {
        NormalCone::Product(alloc::vec![AxisCone::Free; dim])
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            NormalCone::Product(axes) => axes.iter().all(|a| *a == AxisCone::Zero),
            NormalCone::Rays(rays) => rays.is_empty(),
        }
    }

    /// Euclidean distance from `v` to the cone.
    pub fn distance(&self, v: &[f64]) -> f64 {
        match self {
            NormalCone::Product(axes) => {
                let p: Vec<f64> = axes.iter().zip(v).map(|(a, x)| a.project(*x)).collect();
                linalg::dist(v, &p)
            }
            NormalCone::Rays(rays) => rays
                .iter()
                .map(|n| segment_distance(v, n, f64::INFINITY))
                .fold(linalg::norm(v), f64::min),
        }
    }

    /// Whether `v` lies in the cone up to a relative (angular) tolerance:
    /// `distance(v) <= tol * |v|`.
    pub fn contains(&self, v: &[f64], tol: f64) -> bool {
        let n = linalg::norm(v);
        n == 0.0 || self.distance(v) <= tol * n
    }

    /// Euclidean distance from `y` to `cone ∩ C*` where `C*` is the dual
    /// unit ball of `dynamics` (Euclidean ball or l1 ball).
    pub fn distance_to_capped(&self, y: &[f64], dynamics: Dynamics) -> f64 {
        match self {
            NormalCone::Rays(rays) => rays
                .iter()
                .map(|n| segment_distance(y, n, 1.0 / dynamics.support_raw(n)))
                .fold(linalg::norm(y), f64::min),
            NormalCone::Product(axes) => {
                let p = match dynamics {
                    Dynamics::EuclideanBall => {
                        let p: Vec<f64> = axes.iter().zip(y).map(|(a, x)| a.project(*x)).collect();
                        let n = linalg::norm(&p);
                        if n > 1.0 {
                            linalg::scale(&p, 1.0 / n)
                        } else {
                            p
                        }
                    }
                    Dynamics::UnitBox => project_signed_l1(axes, y),
                };
                linalg::dist(y, &p)
            }
        }
    }
}

/// Distance from `y` to the segment `{ t n : 0 <= t <= t_max }`, `n` a unit
/// vector.
fn segment_distance(y: &[f64], n: &[f64], t_max: f64) -> f64 {
    let t = linalg::dot(y, n).clamp(0.0, t_max);
    linalg::dist(y, &linalg::scale(n, t))
}

/// Projection onto `{ v in product cone : |v|_1 <= 1 }`.
fn project_signed_l1(axes: &[AxisCone], y: &[f64]) -> Vec<f64> {
    // Work in flipped coordinates where every admissible component is >= 0.
    let flips: Vec<f64> = axes
        .iter()
        .zip(y)
        .map(|(a, v)| match a {
            AxisCone::NonNeg => 1.0,
            AxisCone::NonPos => -1.0,
            AxisCone::Free => {
                if *v < 0.0 {
                    -1.0
                } else {
                    1.0
                }
            }
            AxisCone::Zero => 0.0,
        })
        .collect();
    let w: Vec<f64> = flips.iter().zip(y).map(|(f, v)| (f * v).max(0.0)).collect();
    let total: f64 = w.iter().sum();
    let u = if total <= 1.0 { w } else { project_simplex(&w) };
    u.iter().zip(&flips).map(|(u, f)| u * f).collect()
}

/// Projection of a nonnegative vector with sum > 1 onto the unit simplex.
fn project_simplex(w: &[f64]) -> Vec<f64> {
    let mut sorted = w.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (k, v) in sorted.iter().enumerate() {
        cumsum += v;
        let t = (cumsum - 1.0) / (k + 1) as f64;
        if *v - t > 0.0 {
            theta = t;
        }
    }
    w.iter().map(|v| (v - theta).max(0.0)).collect()
}
