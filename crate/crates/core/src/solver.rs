//! Subgradient method with diminishing steps:
//! `x_{k+1} = x_k - alpha_k * sum_i v_ik`, where `v_ik` is the selected
//! subgradient of the `i`-th minimal time function at `x_k` (zero when
//! `x_k` is in the target).
//!
//! Subgradient steps do not decrease `T` monotonically, so the solver tracks
//! the running best value `V_k = min_{j <= k} T(x_j)` and returns the point
//! attaining it.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::geometry::{linalg, Point};
use crate::minimal_time::add_subgradient_raw;
use crate::optimality::{certificate_check, CertificateMode};
use crate::problem::Problem;

/// Iterates whose coordinates exceed this magnitude abort the run.
pub const DIVERGENCE_LIMIT: f64 = 1e12;

const PI2_OVER_6: f64 = core::f64::consts::PI * core::f64::consts::PI / 6.0;

/// A step rule with declared summability properties.
#[derive(Clone)]
pub struct CustomSchedule {
    rule: Arc<dyn Fn(usize) -> f64 + Send + Sync>,
    sum_alpha_diverges: bool,
    ell_squared: f64,
}

impl CustomSchedule {
    /// `rule(k)` is the step for iteration `k >= 1`. The declared sums must be
    /// truthful; `ell_squared` may be `f64::INFINITY`.
    pub fn new(
        rule: impl Fn(usize) -> f64 + Send + Sync + 'static,
        sum_alpha_diverges: bool,
        ell_squared: f64,
    ) -> Self {
        Self {
            rule: Arc::new(rule),
            sum_alpha_diverges,
            ell_squared,
        }
    }

    /// `alpha_k = c` for all `k`: not square summable.
    pub fn constant(c: f64) -> Self {
        Self::new(move |_| c, true, f64::INFINITY)
    }
}

impl fmt::Debug for CustomSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomSchedule")
            .field("sum_alpha_diverges", &self.sum_alpha_diverges)
            .field("ell_squared", &self.ell_squared)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone)]
pub enum StepSchedule {
    /// `alpha_k = 1/k`
    Harmonic,
    /// `alpha_k = c/k`, `c > 0`
    ScaledHarmonic(f64),
    Custom(CustomSchedule),
}

impl StepSchedule {
    /// Step for iteration `k >= 1`.
    pub fn step(&self, k: usize) -> f64 {
        match self {
            StepSchedule::Harmonic => 1.0 / k as f64,
            StepSchedule::ScaledHarmonic(c) => c / k as f64,
            StepSchedule::Custom(s) => (s.rule)(k),
        }
    }

    pub fn sum_alpha_diverges(&self) -> bool {
        match self {
            StepSchedule::Custom(s) => s.sum_alpha_diverges,
            _ => true,
        }
    }

    /// `sum_k alpha_k^2`, possibly infinite.
    pub fn ell_squared(&self) -> f64 {
        match self {
            StepSchedule::Harmonic => PI2_OVER_6,
            StepSchedule::ScaledHarmonic(c) => c * c * PI2_OVER_6,
            StepSchedule::Custom(s) => s.ell_squared,
        }
    }

    /// `sum_{k=1}^{n} alpha_k`
    pub fn partial_sum(&self, n: usize) -> f64 {
        (1..=n).map(|k| self.step(k)).sum()
    }

    fn validate(&self) -> Result<()> {
        if let StepSchedule::ScaledHarmonic(c) = self {
            if !c.is_finite() || *c <= 0.0 {
                return Err(Error::InvalidParameter {
                    field: "steps",
                    reason: "scale must be positive and finite",
                });
            }
        }
        Ok(())
    }
}

/// Early-stop rule on the running best value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plateau {
    /// Stop after this many iterations without an improvement larger than `tol`.
    pub window: usize,
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveOptions {
    pub max_iters: usize,
    /// Record a trace row every this many iterations (0 disables tracing).
    pub trace_every: usize,
    /// Stop once the certificate residual at the best point is at most this.
    /// Checked every `trace_every` iterations (every iteration when tracing
    /// is off).
    pub residual_tol: Option<f64>,
    pub plateau: Option<Plateau>,
    /// Distance from the start to the solution set, enabling the a-priori
    /// error bound in the result.
    pub dist_to_solutions: Option<f64>,
}

impl SolveOptions {
    pub fn new(max_iters: usize) -> Self {
        Self {
            max_iters,
            trace_every: 0,
            residual_tol: None,
            plateau: None,
            dist_to_solutions: None,
        }
    }

    pub fn trace_every(mut self, every: usize) -> Self {
        self.trace_every = every;
        self
    }

    pub fn residual_tol(mut self, tol: f64) -> Self {
        self.residual_tol = Some(tol);
        self
    }

    pub fn plateau(mut self, window: usize, tol: f64) -> Self {
        self.plateau = Some(Plateau { window, tol });
        self
    }

    pub fn dist_to_solutions(mut self, d: f64) -> Self {
        self.dist_to_solutions = Some(d);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    MaxIters,
    ResidualTol,
    ValuePlateau,
}

/// One recorded iterate. Row `k` holds the point after `k` steps; row 0 is
/// the start.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceRow {
    pub k: usize,
    pub point: Point,
    pub value: f64,
    pub best_value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub best_point: Point,
    pub best_value: f64,
    pub last_point: Point,
    pub iterations_run: usize,
    pub trace: Vec<TraceRow>,
    pub stop_reason: StopReason,
    pub error_bound: Option<f64>,
    /// `NecessaryOnly` when some target is nonconvex: convergence to a global
    /// minimizer is then not guaranteed.
    pub guarantee: CertificateMode,
    /// No bounded target: a minimizer may fail to exist.
    pub existence_warning: bool,
}

/// Runs the subgradient method from `start` for at most `opts.max_iters`
/// steps.
pub fn solve(
    problem: &Problem,
    start: &Point,
    schedule: &StepSchedule,
    opts: &SolveOptions,
) -> Result<SolveResult> {
    problem.check_supported()?;
    start.expect_dim(problem.dimension())?;
    schedule.validate()?;

    let dim = problem.dimension();
    let dynamics = problem.dynamics();
    let mut x: Vec<f64> = start.to_vec();
    let mut value = problem.total_value_raw(&x);
    let mut best_value = value;
    let mut best_point = x.clone();
    let mut best_changed = true;
    let mut trace = Vec::new();
    if opts.trace_every > 0 {
        trace.push(TraceRow {
            k: 0,
            point: start.clone(),
            value,
            best_value,
        });
    }
    let check_every = opts.trace_every.max(1);
    let mut anchor = (best_value, 0usize);
    let mut stop_reason = StopReason::MaxIters;
    let mut iterations_run = 0;
    let mut g = vec![0.0; dim];

    for k in 1..=opts.max_iters {
        g.iter_mut().for_each(|v| *v = 0.0);
        for t in problem.targets() {
            add_subgradient_raw(dynamics, t, &x, &mut g);
        }
        let alpha = schedule.step(k);
        for (xi, gi) in x.iter_mut().zip(&g) {
            *xi -= alpha * gi;
        }
        let magnitude = linalg::norm_inf(&x);
        // NaN compares false, so it is caught here as well
        if magnitude.is_nan() || magnitude > DIVERGENCE_LIMIT {
            return Err(Error::NonFiniteIterate {
                iteration: k,
                magnitude,
            });
        }
        iterations_run = k;
        value = problem.total_value_raw(&x);
        if value < best_value {
            best_value = value;
            best_point.copy_from_slice(&x);
            best_changed = true;
        }
        if opts.trace_every > 0 && (k % opts.trace_every == 0 || k == opts.max_iters) {
            trace.push(TraceRow {
                k,
                point: Point::from_raw(x.clone()),
                value,
                best_value,
            });
        }
        if let Some(tol) = opts.residual_tol {
            if best_changed && k % check_every == 0 {
                best_changed = false;
                let holds = certificate_check(problem, &Point::from_raw(best_point.clone()), tol)
                    .map(|c| c.holds)
                    .unwrap_or(false);
                if holds {
                    stop_reason = StopReason::ResidualTol;
                    break;
                }
            }
        }
        if let Some(p) = opts.plateau {
            if best_value < anchor.0 - p.tol {
                anchor = (best_value, k);
            } else if k - anchor.1 >= p.window {
                stop_reason = StopReason::ValuePlateau;
                break;
            }
        }
    }

    if opts.trace_every > 0 && trace.last().map(|r| r.k) != Some(iterations_run) {
        trace.push(TraceRow {
            k: iterations_run,
            point: Point::from_raw(x.clone()),
            value,
            best_value,
        });
    }

    let error_bound =
        match opts.dist_to_solutions {
            Some(d) if schedule.ell_squared().is_finite() && iterations_run > 0 => Some(
                error_bound(schedule, iterations_run, d, problem.lipschitz_constant())?,
            ),
            _ => None,
        };

    Ok(SolveResult {
        best_point: Point::from_raw(best_point),
        best_value,
        last_point: Point::from_raw(x),
        iterations_run,
        trace,
        stop_reason,
        error_bound,
        guarantee: if problem.is_convex() {
            CertificateMode::Sufficient
        } else {
            CertificateMode::NecessaryOnly
        },
        existence_warning: !problem.has_bounded_target(),
    })
}

/// A-priori gap bound `V_K - V* <= (d^2 + L^2 l^2) / (2 sum_{k<=K} alpha_k)`
/// with `d` the distance from the start to the solution set.
pub fn error_bound(
    schedule: &StepSchedule,
    iterations: usize,
    dist_start_to_solutions: f64,
    lipschitz: f64,
) -> Result<f64> {
    let ell2 = schedule.ell_squared();
    if !ell2.is_finite() {
        return Err(Error::InfiniteEllSquared);
    }
    let d = dist_start_to_solutions;
    Ok((d * d + lipschitz * lipschitz * ell2) / (2.0 * schedule.partial_sum(iterations)))
}

pub fn lipschitz_constant(problem: &Problem) -> f64 {
    problem.lipschitz_constant()
}
