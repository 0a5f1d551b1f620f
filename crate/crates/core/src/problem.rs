use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{Dynamics, Point, Target};
use crate::minimal_time;

/// An instance: dynamics plus a nonempty list of targets of a common
/// dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    dimension: usize,
    dynamics: Dynamics,
    targets: Vec<Target>,
}

impl Problem {
    pub fn new(dimension: usize, dynamics: Dynamics, targets: Vec<Target>) -> Result<Self> {
        if dimension == 0 {
            return Err(Error::EmptyPoint);
        }
        if targets.is_empty() {
            return Err(Error::NoTargets);
        }
        for t in &targets {
            if t.dim() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: t.dim(),
                });
            }
        }
        Ok(Self {
            dimension,
            dynamics,
            targets,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn dynamics(&self) -> Dynamics {
        self.dynamics
    }

    pub fn targets(&self) -> &[Target] {
        &self.targets
    }

    pub fn is_convex(&self) -> bool {
        self.targets.iter().all(Target::is_convex)
    }

    /// At least one bounded target guarantees bounded level sets of `T`,
    /// hence existence of a minimizer.
    pub fn has_bounded_target(&self) -> bool {
        self.targets.iter().any(Target::is_bounded)
    }

    /// Fails with `UnsupportedPair` on the first unsupported (dynamics,
    /// target) combination.
    pub fn check_supported(&self) -> Result<()> {
        for t in &self.targets {
            minimal_time::check_pair(self.dynamics, t)?;
        }
        Ok(())
    }

    /// `T(x) = sum_i T_F(x; Omega_i)`.
    pub fn total_value(&self, x: &Point) -> Result<f64> {
        x.expect_dim(self.dimension)?;
        self.check_supported()?;
        Ok(self.total_value_raw(x))
    }

    pub(crate) fn total_value_raw(&self, x: &[f64]) -> f64 {
        self.targets
            .iter()
            .map(|t| minimal_time::minimal_time_raw(self.dynamics, t, x))
            .sum()
    }

    /// Lipschitz constant of `T` in the Euclidean norm: `n * L_F`.
    pub fn lipschitz_constant(&self) -> f64 {
        self.targets.len() as f64 * self.dynamics.lipschitz_factor()
    }
}
