use alloc::vec::Vec;
use core::ops::Deref;

use crate::error::{Error, Result};

/// A point (or vector) in `R^d` with `d >= 1` and finite coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Point(Vec<f64>);

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite { context: "point" });
        }
        Ok(Self(coords))
    }

    pub fn from_slice(coords: &[f64]) -> Result<Self> {
        Self::new(coords.to_vec())
    }

    pub fn zeros(dim: usize) -> Self {
        Self(alloc::vec![0.0; dim.max(1)])
    }

    /// Wraps coordinates produced by kernel arithmetic on validated inputs.
    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        debug_assert!(!coords.is_empty() && coords.iter().all(|c| c.is_finite()));
        Self(coords)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub(crate) fn expect_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            })
        }
    }
}

impl Deref for Point {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl AsRef<[f64]> for Point {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl TryFrom<Vec<f64>> for Point {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        Self::new(coords)
    }
}

impl<const N: usize> TryFrom<[f64; N]> for Point {
    type Error = Error;

    fn try_from(coords: [f64; N]) -> Result<Self> {
        Self::new(coords.to_vec())
    }
}

/// Dense vector helpers on raw slices. Callers guarantee equal lengths.
pub(crate) mod linalg {
    use alloc::vec::Vec;

    pub fn dot(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    }

    pub fn norm(a: &[f64]) -> f64 {
        libm::sqrt(dot(a, a))
    }

    pub fn norm1(a: &[f64]) -> f64 {
        a.iter().map(|x| libm::fabs(*x)).sum()
    }

    pub fn norm_inf(a: &[f64]) -> f64 {
        a.iter().fold(0.0, |m, x| f64::max(m, libm::fabs(*x)))
    }

    pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn dist(a: &[f64], b: &[f64]) -> f64 {
        libm::sqrt(a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum())
    }

    pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
        a.iter().map(|x| x * s).collect()
    }

    /// `a + s * b`
    pub fn axpy(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
        a.iter().zip(b).map(|(x, y)| x + s * y).collect()
    }

    pub fn add_assign(acc: &mut [f64], b: &[f64]) {
        for (x, y) in acc.iter_mut().zip(b) {
            *x += y;
        }
    }

    pub fn clamp(x: &[f64], lower: &[f64], upper: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(lower.iter().zip(upper))
            .map(|(v, (l, u))| v.max(*l).min(*u))
            .collect()
    }

    pub fn sign(x: f64) -> f64 {
        if x > 0.0 {
            1.0
        } else if x < 0.0 {
            -1.0
        } else {
            0.0
        }
    }
}
