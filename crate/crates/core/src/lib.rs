//! Generalized Fermat-Torricelli problems: minimize the sum of minimal time
//! functions `T(x) = sum_i T_F(x; Omega_i)` over closed targets `Omega_i`
//! under constant dynamics `F`.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure numerics:
//!
//! * [`geometry`]: points, dynamics gauges, targets with projections and
//!   normal cones.
//! * [`minimal_time`]: minimal time values, generalized projections and
//!   subgradient selection.
//! * [`optimality`]: Fermat-rule certificates, the three-set alternative, the
//!   closed-form interval solution and the Torricelli point.
//! * [`solver`]: the subgradient method with diminishing steps.
//! * [`oracle`]: brute-force refined grid minimization used for verification.
#![no_std]

extern crate alloc;

pub mod error;
pub mod geometry;
pub mod minimal_time;
pub mod optimality;
pub mod oracle;
pub mod problem;
pub mod solver;

pub use error::{Error, Result};
pub use geometry::{Dynamics, NormalCone, Point, Target, TargetKind, TargetTag};
pub use minimal_time::{generalized_project, minimal_time, mt_subgradient, MtSubgradient, Regime};
pub use problem::Problem;
