//! JSON reports printed by the subcommands, with a plain-text rendering for
//! `--pretty`.

use std::fmt::Write as _;

use fermat_core::optimality::{Certificate, CertificateMode, ThreeSetCase, ThreeSetReport};
use fermat_core::oracle::OracleResult;
use fermat_core::solver::{SolveResult, StopReason};
use serde::Serialize;

fn mode_name(m: CertificateMode) -> &'static str {
    match m {
        CertificateMode::Sufficient => "Sufficient",
        CertificateMode::NecessaryOnly => "NecessaryOnly",
    }
}

fn stop_name(s: StopReason) -> &'static str {
    match s {
        StopReason::MaxIters => "MaxIters",
        StopReason::ResidualTol => "ResidualTol",
        StopReason::ValuePlateau => "ValuePlateau",
    }
}

fn coords(x: &[f64]) -> String {
    let parts: Vec<String> = x.iter().map(|v| format!("{v:.6}")).collect();
    format!("({})", parts.join(", "))
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveReport {
    pub best_point: Vec<f64>,
    pub best_value: f64,
    pub iterations: usize,
    pub stop_reason: &'static str,
    pub last_point: Vec<f64>,
    pub guarantee: &'static str,
    pub existence_warning: bool,
    /// Distance from the start to the oracle solution, when requested.
    pub dist_to_solution: Option<f64>,
    pub error_bound: Option<f64>,
}

impl SolveReport {
    pub fn new(r: &SolveResult, dist_to_solution: Option<f64>) -> Self {
        SolveReport {
            best_point: r.best_point.to_vec(),
            best_value: r.best_value,
            iterations: r.iterations_run,
            stop_reason: stop_name(r.stop_reason),
            last_point: r.last_point.to_vec(),
            guarantee: mode_name(r.guarantee),
            existence_warning: r.existence_warning,
            dist_to_solution,
            error_bound: r.error_bound,
        }
    }

    pub fn pretty(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "best point:  {}", coords(&self.best_point));
        let _ = writeln!(s, "best value:  {:.6}", self.best_value);
        let _ = writeln!(s, "iterations:  {} ({})", self.iterations, self.stop_reason);
        if let Some(b) = self.error_bound {
            let _ = writeln!(s, "error bound: {b:.6e}");
        }
        if self.existence_warning {
            let _ = writeln!(s, "warning: no bounded target, a minimizer may not exist");
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ThreeSetJson {
    pub case: &'static str,
    pub active: Option<usize>,
    pub inner_products: Vec<f64>,
    pub satisfied: bool,
}

impl From<&ThreeSetReport> for ThreeSetJson {
    fn from(r: &ThreeSetReport) -> Self {
        let (case, active) = match r.case {
            ThreeSetCase::InOne { active } => ("InOne", Some(active)),
            ThreeSetCase::InNone => ("InNone", None),
        };
        ThreeSetJson {
            case,
            active,
            inner_products: r.inner_products.clone(),
            satisfied: r.satisfied,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub holds: bool,
    pub residual: f64,
    pub active_target: Option<usize>,
    pub mode: &'static str,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub three_set: Option<ThreeSetJson>,
}

impl CheckReport {
    pub fn new(c: &Certificate, value: f64, three: Option<&ThreeSetReport>) -> Self {
        CheckReport {
            holds: c.holds,
            residual: c.residual,
            active_target: c.active_target,
            mode: mode_name(c.mode),
            value,
            three_set: three.map(ThreeSetJson::from),
        }
    }

    pub fn pretty(&self) -> String {
        let mut s = String::new();
        let verdict = if self.holds { "holds" } else { "fails" };
        let _ = writeln!(
            s,
            "certificate {verdict} ({}), residual {:.3e}",
            self.mode, self.residual
        );
        let _ = writeln!(s, "value: {:.6}", self.value);
        match self.active_target {
            Some(i) => {
                let _ = writeln!(s, "point lies in target {i}");
            }
            None => {
                let _ = writeln!(s, "point lies in no target");
            }
        }
        if let Some(t) = &self.three_set {
            let ips: Vec<String> = t.inner_products.iter().map(|v| format!("{v:.6}")).collect();
            let _ = writeln!(
                s,
                "three-set case {}: inner products [{}], satisfied: {}",
                t.case,
                ips.join(", "),
                t.satisfied
            );
        }
        s
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BBoxJson {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub argmin: Vec<f64>,
    pub min_value: f64,
    pub cell_size: f64,
    pub bbox: BBoxJson,
}

impl From<&OracleResult> for OracleReport {
    fn from(r: &OracleResult) -> Self {
        OracleReport {
            argmin: r.argmin.to_vec(),
            min_value: r.min_value,
            cell_size: r.cell_size,
            bbox: BBoxJson {
                lower: r.bbox.lower.clone(),
                upper: r.bbox.upper.clone(),
            },
        }
    }
}

impl OracleReport {
    pub fn pretty(&self) -> String {
        format!(
            "grid minimum {:.6} at {} (cell {:.1e})\n",
            self.min_value,
            coords(&self.argmin),
            self.cell_size
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IntervalsReport {
    pub optimal_interval: [f64; 2],
    pub value: f64,
}

impl IntervalsReport {
    pub fn pretty(&self) -> String {
        format!(
            "optimal set [{}, {}], value {}\n",
            self.optimal_interval[0], self.optimal_interval[1], self.value
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TorricelliReport {
    pub point: Vec<f64>,
    pub value: f64,
}

impl TorricelliReport {
    pub fn pretty(&self) -> String {
        format!(
            "Torricelli point {}, total distance {:.6}\n",
            coords(&self.point),
            self.value
        )
    }
}
