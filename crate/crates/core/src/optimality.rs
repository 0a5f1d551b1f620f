//! Optimality conditions: the Fermat rule `0 ∈ sum_i A_i(x)`, its three-set
//! specialization, and two closed-form solvers (intervals on the line and the
//! classical three-point problem).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{linalg, Dynamics, NormalCone, Point};
use crate::minimal_time::{self, out_of_set_vector};
use crate::problem::Problem;

/// The set `A_i(x)` attached to target `i`.
#[derive(Debug, Clone, PartialEq)]
pub enum ASetKind {
    /// `x` is interior to the target: `A_i(x) = {0}`.
    Zero,
    /// `x` is outside the target and the projection is unique.
    SingletonVec(Point),
    /// `x` is outside the epigraph target with two nearest points.
    SingletonPair([Point; 2]),
    /// `x` is on the target's boundary: `N(x; Omega_i) ∩ C*`.
    ConeCapBall(NormalCone),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ASet {
    pub source_target: usize,
    pub kind: ASetKind,
}

impl ASet {
    /// The candidate vectors of an out-of-set `A_i`; empty for in-set kinds.
    pub fn vectors(&self) -> Vec<&Point> {
        match &self.kind {
            ASetKind::SingletonVec(v) => vec![v],
            ASetKind::SingletonPair([a, b]) => vec![a, b],
            ASetKind::Zero | ASetKind::ConeCapBall(_) => Vec::new(),
        }
    }
}

/// Whether a certificate proves global optimality or only the necessary
/// condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateMode {
    /// All targets are convex: the condition characterizes global minimizers.
    Sufficient,
    /// Some target is nonconvex: the condition is only necessary.
    NecessaryOnly,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub holds: bool,
    /// Euclidean distance from 0 to the nearest achievable element of
    /// `sum_i A_i(x)`.
    pub residual: f64,
    pub active_target: Option<usize>,
    pub mode: CertificateMode,
}

/// Builds `A_i(x)`. Points within `tol` of the target count as in the set.
pub fn a_set(problem: &Problem, index: usize, x: &Point, tol: f64) -> Result<ASet> {
    let targets = problem.targets();
    let target = targets.get(index).ok_or(Error::IndexOutOfRange {
        index,
        len: targets.len(),
    })?;
    x.expect_dim(problem.dimension())?;
    minimal_time::check_pair(problem.dynamics(), target)?;

    let kind = if target.distance_raw(x) <= tol {
        let cone = target.normal_cone(x, tol)?;
        if cone.is_trivial() {
            ASetKind::Zero
        } else {
            ASetKind::ConeCapBall(cone)
        }
    } else {
        let dynamics = problem.dynamics();
        let mut vs: Vec<Point> = minimal_time::generalized_project_raw(dynamics, target, x)
            .iter()
            .map(|w| Point::from_raw(out_of_set_vector(dynamics, target, x, w)))
            .collect();
        if vs.len() == 2 {
            let b = vs.pop().expect("two vectors");
            let a = vs.pop().expect("two vectors");
            ASetKind::SingletonPair([a, b])
        } else {
            ASetKind::SingletonVec(vs.swap_remove(0))
        }
    };
    Ok(ASet {
        source_target: index,
        kind,
    })
}

fn active_targets(problem: &Problem, x: &Point, tol: f64) -> Vec<usize> {
    problem
        .targets()
        .iter()
        .enumerate()
        .filter(|(_, t)| t.distance_raw(x) <= tol)
        .map(|(i, _)| i)
        .collect()
}

/// Calls `visit` with every combination picking one vector per list.
fn for_each_choice(lists: &[Vec<&Point>], mut visit: impl FnMut(&[&Point])) {
    let mut idx = vec![0usize; lists.len()];
    let mut pick: Vec<&Point> = lists.iter().map(|l| l[0]).collect();
    loop {
        visit(&pick);
        let mut k = 0;
        loop {
            if k == lists.len() {
                return;
            }
            idx[k] += 1;
            if idx[k] < lists[k].len() {
                pick[k] = lists[k][idx[k]];
                break;
            }
            idx[k] = 0;
            pick[k] = lists[k][0];
            k += 1;
        }
    }
}

/// Checks the Fermat rule `0 ∈ sum_i A_i(x)` and quantifies it by a
/// distance residual. `tol` is used both for target membership and as the
/// residual threshold.
pub fn certificate_check(problem: &Problem, x: &Point, tol: f64) -> Result<Certificate> {
    x.expect_dim(problem.dimension())?;
    problem.check_supported()?;
    let active = active_targets(problem, x, tol);
    if active.len() > 1 {
        return Err(Error::MultipleActiveTargets { indices: active });
    }
    let active_target = active.first().copied();

    let sets: Vec<ASet> = (0..problem.targets().len())
        .map(|i| a_set(problem, i, x, tol))
        .collect::<Result<_>>()?;
    let lists: Vec<Vec<&Point>> = sets
        .iter()
        .map(ASet::vectors)
        .filter(|v| !v.is_empty())
        .collect();
    let cone = active_target.and_then(|j| match &sets[j].kind {
        ASetKind::ConeCapBall(c) => Some(c),
        _ => None,
    });

    let dim = problem.dimension();
    let mut residual = f64::INFINITY;
    let mut evaluate = |pick: &[&Point]| {
        let mut s = vec![0.0; dim];
        for v in pick {
            linalg::add_assign(&mut s, v);
        }
        let r = match cone {
            Some(c) => c.distance_to_capped(&linalg::scale(&s, -1.0), problem.dynamics()),
            None => linalg::norm(&s),
        };
        residual = residual.min(r);
    };
    if lists.is_empty() {
        evaluate(&[]);
    } else {
        for_each_choice(&lists, &mut evaluate);
    }

    let mode = if problem.is_convex() {
        CertificateMode::Sufficient
    } else {
        CertificateMode::NecessaryOnly
    };
    Ok(Certificate {
        holds: residual <= tol,
        residual,
        active_target,
        mode,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThreeSetCase {
    /// `x` lies in exactly the given target.
    InOne { active: usize },
    /// `x` lies in none of the targets.
    InNone,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThreeSetReport {
    pub case: ThreeSetCase,
    /// `[<a_j, a_k>]` for the two inactive targets in case `InOne`;
    /// `[<a_1,a_2>, <a_1,a_3>, <a_2,a_3>]` in case `InNone`.
    pub inner_products: Vec<f64>,
    pub satisfied: bool,
}

/// The three-set alternative for Euclidean distances: with `x` in one target
/// the two other unit vectors must satisfy `<a_j, a_k> <= -1/2` and
/// `-a_j - a_k ∈ N(x; Omega_active)`; with `x` in none, all pairwise inner
/// products must equal `-1/2`.
pub fn three_set_check(problem: &Problem, x: &Point, tol: f64) -> Result<ThreeSetReport> {
    let n = problem.targets().len();
    if n != 3 {
        return Err(Error::WrongArity {
            expected: 3,
            found: n,
        });
    }
    if problem.dynamics() != Dynamics::EuclideanBall {
        return Err(Error::RequiresEuclidean);
    }
    x.expect_dim(problem.dimension())?;
    problem.check_supported()?;
    let active = active_targets(problem, x, tol);
    if active.len() > 1 {
        return Err(Error::AmbiguousCase { indices: active });
    }

    let sets: Vec<ASet> = (0..3)
        .map(|i| a_set(problem, i, x, tol))
        .collect::<Result<_>>()?;
    let mut report: Option<ThreeSetReport> = None;

    match active.first().copied() {
        Some(j) => {
            let target = &problem.targets()[j];
            let lists: Vec<Vec<&Point>> = (0..3)
                .filter(|i| *i != j)
                .map(|i| sets[i].vectors())
                .collect();
            let mut failure = None;
            for_each_choice(&lists, |pick| {
                if report.is_some() {
                    return;
                }
                let ip = linalg::dot(pick[0], pick[1]);
                let mut minus_sum = linalg::scale(pick[0], -1.0);
                linalg::add_assign(&mut minus_sum, &linalg::scale(pick[1], -1.0));
                let in_cone = target
                    .normal_cone(x, tol)
                    .map(|c| c.contains(&minus_sum, tol))
                    .unwrap_or(false);
                let r = ThreeSetReport {
                    case: ThreeSetCase::InOne { active: j },
                    inner_products: vec![ip],
                    satisfied: ip <= -0.5 + tol && in_cone,
                };
                if r.satisfied {
                    report = Some(r);
                } else if failure.is_none() {
                    failure = Some(r);
                }
            });
            Ok(report.or(failure).expect("at least one combination"))
        }
        None => {
            let lists: Vec<Vec<&Point>> = sets.iter().map(ASet::vectors).collect();
            let mut failure = None;
            for_each_choice(&lists, |pick| {
                if report.is_some() {
                    return;
                }
                let ips = vec![
                    linalg::dot(pick[0], pick[1]),
                    linalg::dot(pick[0], pick[2]),
                    linalg::dot(pick[1], pick[2]),
                ];
                let satisfied = ips.iter().all(|ip| libm::fabs(ip + 0.5) <= tol);
                let r = ThreeSetReport {
                    case: ThreeSetCase::InNone,
                    inner_products: ips,
                    satisfied,
                };
                if satisfied {
                    report = Some(r);
                } else if failure.is_none() {
                    failure = Some(r);
                }
            });
            Ok(report.or(failure).expect("at least one combination"))
        }
    }
}

fn validate_intervals(intervals: &[(f64, f64)]) -> Result<()> {
    if intervals.is_empty() {
        return Err(Error::NoTargets);
    }
    for (i, (a, b)) in intervals.iter().enumerate() {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::NonFinite {
                context: "interval",
            });
        }
        if a > b {
            return Err(Error::NotSortedDisjoint { index: i });
        }
        if i > 0 && intervals[i - 1].1 >= *a {
            return Err(Error::NotSortedDisjoint { index: i });
        }
    }
    Ok(())
}

/// Optimal set of `sum_i d(x; [a_i, b_i])` for sorted disjoint intervals:
/// the middle interval for odd `n`, the gap between the two middle
/// intervals for even `n`.
pub fn solve_intervals(intervals: &[(f64, f64)]) -> Result<(f64, f64)> {
    validate_intervals(intervals)?;
    let n = intervals.len();
    let k = n / 2;
    Ok(if n % 2 == 1 {
        intervals[k]
    } else {
        (intervals[k - 1].1, intervals[k].0)
    })
}

/// `sum_i d(x; [a_i, b_i])`.
pub fn interval_total_value(intervals: &[(f64, f64)], x: f64) -> f64 {
    intervals
        .iter()
        .map(|(a, b)| {
            if x < *a {
                a - x
            } else if x > *b {
                x - b
            } else {
                0.0
            }
        })
        .sum()
}

/// Minimizer of the sum of distances to three points of the plane: the
/// vertex with an angle of at least 120 degrees if there is one, otherwise
/// the isogonic center (intersection of the lines joining each vertex to the
/// apex of the outward equilateral triangle on the opposite side).
pub fn torricelli_point(p1: &Point, p2: &Point, p3: &Point) -> Result<Point> {
    for p in [p1, p2, p3] {
        p.expect_dim(2)?;
    }
    let pts: [&[f64]; 3] = [p1, p2, p3];
    for i in 0..3 {
        for j in i + 1..3 {
            if pts[i] == pts[j] {
                return Err(Error::DegenerateTriangle);
            }
        }
    }
    for i in 0..3 {
        let u = linalg::sub(pts[(i + 1) % 3], pts[i]);
        let w = linalg::sub(pts[(i + 2) % 3], pts[i]);
        let cos = linalg::dot(&u, &w) / (linalg::norm(&u) * linalg::norm(&w));
        if cos <= -0.5 {
            return Ok(Point::from_raw(pts[i].to_vec()));
        }
    }
    let apex = |i: usize| -> [f64; 2] {
        // Outward equilateral apex on the side opposite vertex i.
        let a = pts[i];
        let b = pts[(i + 1) % 3];
        let c = pts[(i + 2) % 3];
        let e = [c[0] - b[0], c[1] - b[1]];
        let (s, co) = (libm::sin(core::f64::consts::FRAC_PI_3), 0.5);
        let cands = [
            [b[0] + co * e[0] - s * e[1], b[1] + s * e[0] + co * e[1]],
            [b[0] + co * e[0] + s * e[1], b[1] - s * e[0] + co * e[1]],
        ];
        let side = |q: &[f64]| e[0] * (q[1] - b[1]) - e[1] * (q[0] - b[0]);
        if side(a) * side(&cands[0]) < 0.0 {
            cands[0]
        } else {
            cands[1]
        }
    };
    let a0 = apex(0);
    let a1 = apex(1);
    // Solve p1 + s (a0 - p1) = p2 + t (a1 - p2).
    let d0 = [a0[0] - pts[0][0], a0[1] - pts[0][1]];
    let d1 = [a1[0] - pts[1][0], a1[1] - pts[1][1]];
    let rhs = [pts[1][0] - pts[0][0], pts[1][1] - pts[0][1]];
    let det = d0[0] * (-d1[1]) - (-d1[0]) * d0[1];
    let s = (rhs[0] * (-d1[1]) - (-d1[0]) * rhs[1]) / det;
    Ok(Point::from_raw(vec![
        pts[0][0] + s * d0[0],
        pts[0][1] + s * d0[1],
    ]))
}
