//! Closed target sets with closed-form Euclidean projections and normal
//! cones.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use super::cone::{AxisCone, NormalCone};
use super::point::{linalg, Point};
use crate::error::{Error, Result};

/// Absolute slack added on top of caller tolerances when classifying
/// boundary points, scaled by the target's coordinate magnitude.
pub(crate) const GEOM_EPS: f64 = 1e-12;

/// Geometric description of a target.
#[derive(Debug, Clone, PartialEq)]
pub enum TargetKind {
    Singleton {
        point: Point,
    },
    /// Closed Euclidean ball.
    Ball {
        center: Point,
        radius: f64,
    },
    /// Axis-aligned cube `center + [-radius, radius]^d`.
    Box {
        center: Point,
        radius: f64,
    },
    /// Axis-aligned box with per-axis half-widths.
    AxisBox {
        center: Point,
        radii: Vec<f64>,
    },
    /// `[a, b]` on the real line.
    Interval {
        a: f64,
        b: f64,
    },
    /// `{ x in R^2 : x2 - p2 >= -|x1 - p1| }`, the nonconvex union of two
    /// half-planes meeting at `apex`.
    AbsEpigraph {
        apex: Point,
    },
}

/// Discriminant of [`TargetKind`], used in diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TargetTag {
    Singleton,
    Ball,
    Box,
    AxisBox,
    Interval,
    AbsEpigraph,
}

/// A validated closed target set.
#[derive(Debug, Clone, PartialEq)]
pub struct Target {
    kind: TargetKind,
}

impl Target {
    pub fn new(kind: TargetKind) -> Result<Self> {
        match &kind {
            TargetKind::Singleton { .. } => {}
            TargetKind::Ball { radius, .. } | TargetKind::Box { radius, .. } => {
                check_radius(*radius, "radius")?;
            }
            TargetKind::AxisBox { center, radii } => {
                if radii.len() != center.dim() {
                    return Err(Error::DimensionMismatch {
                        expected: center.dim(),
                        found: radii.len(),
                    });
                }
                for r in radii {
                    check_radius(*r, "radii")?;
                }
            }
            TargetKind::Interval { a, b } => {
                if !a.is_finite() || !b.is_finite() {
                    return Err(Error::NonFinite {
                        context: "interval",
                    });
                }
                if a > b {
                    return Err(Error::InvalidParameter {
                        field: "b",
                        reason: "interval requires a <= b",
                    });
                }
            }
            TargetKind::AbsEpigraph { apex } => {
                if apex.dim() != 2 {
                    return Err(Error::DimensionMismatch {
                        expected: 2,
                        found: apex.dim(),
                    });
                }
            }
        }
        Ok(Self { kind })
    }

    pub fn singleton(point: Point) -> Self {
        Self {
            kind: TargetKind::Singleton { point },
        }
    }

    pub fn ball(center: Point, radius: f64) -> Result<Self> {
        Self::new(TargetKind::Ball { center, radius })
    }

    pub fn cube(center: Point, radius: f64) -> Result<Self> {
        Self::new(TargetKind::Box { center, radius })
    }

    pub fn axis_box(center: Point, radii: Vec<f64>) -> Result<Self> {
        Self::new(TargetKind::AxisBox { center, radii })
    }

    pub fn interval(a: f64, b: f64) -> Result<Self> {
        Self::new(TargetKind::Interval { a, b })
    }

    pub fn abs_epigraph(apex: Point) -> Result<Self> {
        Self::new(TargetKind::AbsEpigraph { apex })
    }

    pub fn kind(&self) -> &TargetKind {
        &self.kind
    }

    pub fn tag(&self) -> TargetTag {
        match self.kind {
            TargetKind::Singleton { .. } => TargetTag::Singleton,
            TargetKind::Ball { .. } => TargetTag::Ball,
            TargetKind::Box { .. } => TargetTag::Box,
            TargetKind::AxisBox { .. } => TargetTag::AxisBox,
            TargetKind::Interval { .. } => TargetTag::Interval,
            TargetKind::AbsEpigraph { .. } => TargetTag::AbsEpigraph,
        }
    }

    pub fn dim(&self) -> usize {
        match &self.kind {
            TargetKind::Singleton { point } => point.dim(),
            TargetKind::Ball { center, .. }
            | TargetKind::Box { center, .. }
            | TargetKind::AxisBox { center, .. } => center.dim(),
            TargetKind::Interval { .. } => 1,
            TargetKind::AbsEpigraph { .. } => 2,
        }
    }

    pub fn is_convex(&self) -> bool {
        !matches!(self.kind, TargetKind::AbsEpigraph { .. })
    }

    pub fn is_bounded(&self) -> bool {
        self.is_convex()
    }

    /// Lower and upper corners for the box-like kinds (singletons included).
    pub fn bounds(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        match &self.kind {
            TargetKind::Singleton { point } => Some((point.to_vec(), point.to_vec())),
            TargetKind::Box { center, radius } => Some((
                center.iter().map(|c| c - radius).collect(),
                center.iter().map(|c| c + radius).collect(),
            )),
            TargetKind::AxisBox { center, radii } => Some((
                center.iter().zip(radii).map(|(c, r)| c - r).collect(),
                center.iter().zip(radii).map(|(c, r)| c + r).collect(),
            )),
            TargetKind::Interval { a, b } => Some((vec![*a], vec![*b])),
            TargetKind::Ball { .. } | TargetKind::AbsEpigraph { .. } => None,
        }
    }

    /// Axis-aligned box enclosing the target's defining parameters (the
    /// apex alone for the unbounded epigraph).
    pub fn parameter_extent(&self) -> (Vec<f64>, Vec<f64>) {
        match &self.kind {
            TargetKind::Ball { center, radius } => (
                center.iter().map(|c| c - radius).collect(),
                center.iter().map(|c| c + radius).collect(),
            ),
            TargetKind::AbsEpigraph { apex } => (apex.to_vec(), apex.to_vec()),
            _ => self.bounds().expect("box-like target"),
        }
    }

    fn scale(&self) -> f64 {
        let (lo, hi) = self.parameter_extent();
        lo.iter()
            .chain(&hi)
            .fold(1.0, |m, v| f64::max(m, libm::fabs(*v)))
    }

    fn slack(&self, tol: f64) -> f64 {
        tol + GEOM_EPS * self.scale()
    }

    /// Euclidean distance from `x` to the set.
    pub fn distance(&self, x: &Point) -> Result<f64> {
        x.expect_dim(self.dim())?;
        Ok(self.distance_raw(x))
    }

    /// Whether `x` lies in the set inflated by `tol` in the Euclidean metric.
    pub fn contains(&self, x: &Point, tol: f64) -> Result<bool> {
        Ok(self.distance(x)? <= tol)
    }

    /// All Euclidean nearest points of the set to `x` (one, or two for the
    /// epigraph on its symmetry axis). Points inside project to themselves.
    pub fn euclidean_project(&self, x: &Point) -> Result<Vec<Point>> {
        x.expect_dim(self.dim())?;
        Ok(self
            .project_raw(x)
            .into_iter()
            .map(Point::from_raw)
            .collect())
    }

    /// Normal cone at `omega`, which must lie within `tol` of the set.
    ///
    /// Points within `tol` of the boundary are classified as boundary
    /// points, so the cone is that of the nearest boundary piece.
    pub fn normal_cone(&self, omega: &Point, tol: f64) -> Result<NormalCone> {
        omega.expect_dim(self.dim())?;
        let distance = self.distance_raw(omega);
        let slack = self.slack(tol);
        if distance > slack {
            return Err(Error::NotInTarget { distance });
        }
        let w: &[f64] = omega;
        Ok(match &self.kind {
            TargetKind::Singleton { .. } => NormalCone::whole(w.len()),
            TargetKind::Ball { center, radius } => {
                let d = linalg::sub(w, center);
                let n = linalg::norm(&d);
                if n < radius - slack || n == 0.0 {
                    NormalCone::trivial(w.len())
                } else {
                    NormalCone::Rays(vec![linalg::scale(&d, 1.0 / n)])
                }
            }
            TargetKind::Box { .. } | TargetKind::AxisBox { .. } | TargetKind::Interval { .. } => {
                let (lo, hi) = self.bounds().expect("box-like target");
                NormalCone::Product(
                    w.iter()
                        .zip(lo.iter().zip(&hi))
                        .map(|(v, (l, u))| {
                            let at_lo = *v <= l + slack;
                            let at_hi = *v >= u - slack;
                            match (at_lo, at_hi) {
                                _ if l == u => AxisCone::Free,
                                (true, true) => AxisCone::Free,
                                (true, false) => AxisCone::NonPos,
                                (false, true) => AxisCone::NonNeg,
                                (false, false) => AxisCone::Zero,
                            }
                        })
                        .collect(),
                )
            }
            TargetKind::AbsEpigraph { apex } => {
                let (s1, s2) = epigraph_offsets(w, apex);
                if s1.max(s2) > slack {
                    NormalCone::trivial(2)
                } else {
                    // Outward unit normals of the two boundary lines.
                    let mut rays = Vec::new();
                    if s1 >= -slack {
                        rays.push(vec![-FRAC_1_SQRT_2, -FRAC_1_SQRT_2]);
                    }
                    if s2 >= -slack {
                        rays.push(vec![FRAC_1_SQRT_2, -FRAC_1_SQRT_2]);
                    }
                    NormalCone::Rays(rays)
                }
            }
        })
    }

    /// Whether `v` belongs to the normal cone at `omega`, with `tol` used
    /// both for the membership of `omega` and as the angular tolerance.
    pub fn normal_cone_contains(&self, omega: &Point, v: &Point, tol: f64) -> Result<bool> {
        v.expect_dim(self.dim())?;
        Ok(self.normal_cone(omega, tol)?.contains(v, tol))
    }

    pub(crate) fn distance_raw(&self, x: &[f64]) -> f64 {
        match &self.kind {
            TargetKind::Ball { center, radius } => (linalg::dist(x, center) - radius).max(0.0),
            TargetKind::AbsEpigraph { apex } => {
                let (s1, s2) = epigraph_offsets(x, apex);
                (-s1.max(s2)).max(0.0)
            }
            _ => libm::sqrt(
                (0..x.len())
                    .map(|i| self.axis_gap(i, x[i]))
                    .map(|g| g * g)
                    .sum(),
            ),
        }
    }

    /// Distance from `v` to the `i`-th coordinate range of a box-like target.
    pub(crate) fn axis_gap(&self, i: usize, v: f64) -> f64 {
        let (lo, hi) = match &self.kind {
            TargetKind::Singleton { point } => (point[i], point[i]),
            TargetKind::Box { center, radius } => (center[i] - radius, center[i] + radius),
            TargetKind::AxisBox { center, radii } => (center[i] - radii[i], center[i] + radii[i]),
            TargetKind::Interval { a, b } => (*a, *b),
            TargetKind::Ball { .. } | TargetKind::AbsEpigraph { .. } => {
                unreachable!("not box-like")
            }
        };
        (lo - v).max(v - hi).max(0.0)
    }

    pub(crate) fn project_raw(&self, x: &[f64]) -> Vec<Vec<f64>> {
        match &self.kind {
            TargetKind::Singleton { point } => vec![point.to_vec()],
            TargetKind::Ball { center, radius } => {
                let d = linalg::sub(x, center);
                let n = linalg::norm(&d);
                if n <= *radius {
                    vec![x.to_vec()]
                } else {
                    vec![linalg::axpy(center, radius / n, &d)]
                }
            }
            TargetKind::Box { .. } | TargetKind::AxisBox { .. } | TargetKind::Interval { .. } => {
                let (lo, hi) = self.bounds().expect("box-like target");
                vec![linalg::clamp(x, &lo, &hi)]
            }
            TargetKind::AbsEpigraph { apex } => {
                let (s1, s2) = epigraph_offsets(x, apex);
                if s1 >= 0.0 || s2 >= 0.0 {
                    return vec![x.to_vec()];
                }
                let onto_first = vec![x[0] - s1 * FRAC_1_SQRT_2, x[1] - s1 * FRAC_1_SQRT_2];
                let onto_second = vec![x[0] + s2 * FRAC_1_SQRT_2, x[1] - s2 * FRAC_1_SQRT_2];
                let gap = s1 - s2;
                if libm::fabs(gap) <= GEOM_EPS * (1.0 + libm::fabs(s1)) {
                    let mut both = vec![onto_first, onto_second];
                    both.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
                    both
                } else if s1 > s2 {
                    vec![onto_first]
                } else {
                    vec![onto_second]
                }
            }
        }
    }
}

/// Signed distances of `x` into the half-planes `{ x2 - p2 >= -(x1 - p1) }`
/// and `{ x2 - p2 >= x1 - p1 }`; nonnegative means inside.
fn epigraph_offsets(x: &[f64], apex: &[f64]) -> (f64, f64) {
    let u = x[0] - apex[0];
    let w = x[1] - apex[1];
    ((u + w) * FRAC_1_SQRT_2, (w - u) * FRAC_1_SQRT_2)
}

fn check_radius(r: f64, field: &'static str) -> Result<()> {
    if !r.is_finite() {
        return Err(Error::NonFinite { context: field });
    }
    if r <= 0.0 {
        return Err(Error::InvalidParameter {
            field,
            reason: "must be positive",
        });
    }
    Ok(())
}
