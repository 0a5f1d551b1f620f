//! Brute-force verification: refined grid search for the minimum of `T`.
//!
//! Each pass evaluates `T` on a uniform `n^d` grid over the current box and
//! then shrinks the box to four cells centered at the incumbent. A refined
//! box whose incumbent ends on its boundary has not bracketed the minimum;
//! it is recentered at the same resolution (at most [`MAX_SLIDES`] times per
//! pass) before shrinking again. The search is deterministic; ties are
//! broken by lexicographic coordinate order.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::problem::Problem;

/// Margin added around target parameters by [`default_bbox`].
pub const DEFAULT_MARGIN: f64 = 2.0;

/// Recentering limit per refinement pass.
pub const MAX_SLIDES: usize = 64;

/// Axis-aligned search box.
#[derive(Debug, Clone, PartialEq)]
pub struct BBox {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

impl BBox {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty()
            || lower.len() != upper.len()
            || lower
                .iter()
                .zip(&upper)
                .any(|(l, u)| !l.is_finite() || !u.is_finite() || l > u)
        {
            return Err(Error::EmptyBBox);
        }
        Ok(Self { lower, upper })
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub argmin: Point,
    pub min_value: f64,
    /// Largest grid spacing of the final pass.
    pub cell_size: f64,
    /// Box searched in the final pass.
    pub bbox: BBox,
}

/// Box enclosing every target's parameters (inflated by radii), plus
/// `margin` on each side.
pub fn default_bbox(problem: &Problem, margin: f64) -> BBox {
    let d = problem.dimension();
    let mut lower = vec![f64::INFINITY; d];
    let mut upper = vec![f64::NEG_INFINITY; d];
    for t in problem.targets() {
        let (lo, hi) = t.parameter_extent();
        for i in 0..d {
            lower[i] = lower[i].min(lo[i]);
            upper[i] = upper[i].max(hi[i]);
        }
    }
    BBox {
        lower: lower.iter().map(|v| v - margin).collect(),
        upper: upper.iter().map(|v| v + margin).collect(),
    }
}

fn better(value: f64, point: &[f64], best_value: f64, best_point: &[f64]) -> bool {
    match value.total_cmp(&best_value) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => {
            for (a, b) in point.iter().zip(best_point) {
                match a.total_cmp(b) {
                    Ordering::Less => return true,
                    Ordering::Greater => return false,
                    Ordering::Equal => {}
                }
            }
            false
        }
    }
}

/// Evaluates `T` on the `n^d` grid over `[lower, upper]`, updating the
/// incumbent.
fn scan(
    problem: &Problem,
    lower: &[f64],
    upper: &[f64],
    spacing: &[f64],
    n: usize,
    best_value: &mut f64,
    best_point: &mut [f64],
) {
    let d = lower.len();
    let mut idx = vec![0usize; d];
    let mut node = lower.to_vec();
    let mut done = false;
    while !done {
        for i in 0..d {
            node[i] = if idx[i] == n - 1 {
                upper[i]
            } else {
                lower[i] + idx[i] as f64 * spacing[i]
            };
        }
        let v = problem.total_value_raw(&node);
        if better(v, &node, *best_value, best_point) {
            *best_value = v;
            best_point.copy_from_slice(&node);
        }
        // odometer over the grid, last axis fastest
        let mut axis = d;
        loop {
            if axis == 0 {
                done = true;
                break;
            }
            axis -= 1;
            idx[axis] += 1;
            if idx[axis] < n {
                break;
            }
            idx[axis] = 0;
        }
    }
}

/// Refined grid minimization of `T` over `bbox` with `coarse_n` nodes per
/// axis and `refinements` additional passes.
pub fn grid_minimize(
    problem: &Problem,
    bbox: &BBox,
    coarse_n: usize,
    refinements: usize,
) -> Result<OracleResult> {
    problem.check_supported()?;
    let d = problem.dimension();
    if bbox.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: bbox.dim(),
        });
    }
    if coarse_n < 2 {
        return Err(Error::InvalidParameter {
            field: "coarse_n",
            reason: "need at least two nodes per axis",
        });
    }

    let mut lower = bbox.lower.clone();
    let mut upper = bbox.upper.clone();
    let mut best_point = vec![0.0; d];
    let mut best_value = f64::INFINITY;
    let mut spacing = vec![0.0; d];

    for pass in 0..=refinements {
        for i in 0..d {
            spacing[i] = (upper[i] - lower[i]) / (coarse_n - 1) as f64;
        }
        let mut slides = 0;
        loop {
            scan(
                problem,
                &lower,
                &upper,
                &spacing,
                coarse_n,
                &mut best_value,
                &mut best_point,
            );
            let on_edge = (0..d).any(|i| {
                best_point[i] <= lower[i] + 0.5 * spacing[i]
                    || best_point[i] >= upper[i] - 0.5 * spacing[i]
            });
            if pass == 0 || !on_edge || slides == MAX_SLIDES {
                break;
            }
            slides += 1;
            for i in 0..d {
                let half = 0.5 * (upper[i] - lower[i]);
                lower[i] = best_point[i] - half;
                upper[i] = best_point[i] + half;
            }
        }
        if pass < refinements {
            for i in 0..d {
                lower[i] = best_point[i] - 2.0 * spacing[i];
                upper[i] = best_point[i] + 2.0 * spacing[i];
            }
        }
    }

    Ok(OracleResult {
        argmin: Point::from_raw(best_point),
        min_value: best_value,
        cell_size: spacing.iter().copied().fold(0.0, f64::max),
        bbox: BBox { lower, upper },
    })
}
