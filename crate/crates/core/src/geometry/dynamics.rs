//! Constant dynamics sets `F` and their gauges.
//!
//! Both supported sets are closed, bounded, convex and contain the origin in
//! their interior, so the gauge is a norm and every operation here is
//! dimension-agnostic.

use alloc::vec;
use alloc::vec::Vec;

use super::point::{linalg, Point};

/// The velocity set of the minimal time function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dynamics {
    /// The closed Euclidean unit ball. Its minimal time function is the
    /// Euclidean distance.
    EuclideanBall,
    /// The cube `[-1, 1]^d`. Its gauge is the max-norm.
    UnitBox,
}

impl Dynamics {
    /// Minkowski gauge `inf { t >= 0 : x in tF }`.
    pub fn gauge_value(&self, x: &Point) -> f64 {
        self.gauge_raw(x)
    }

    /// Support function `sup { <v, u> : u in F }`.
    pub fn support_value(&self, v: &Point) -> f64 {
        self.support_raw(v)
    }

    /// One element of the gauge subdifferential at `x`.
    ///
    /// Returns the zero vector at the origin. For the box, the selected
    /// element is `sign(x_j) e_j` where `j` is the lowest index achieving
    /// `max |x_i|`.
    pub fn gauge_subgradient(&self, x: &Point) -> Point {
        Point::from_raw(self.gauge_subgradient_raw(x))
    }

    /// `sup { gauge(u) : |u| = 1 }`, the Lipschitz modulus of the gauge and of
    /// every minimal time function built on it, with respect to the Euclidean
    /// norm.
    pub fn lipschitz_factor(&self) -> f64 {
        1.0
    }

    pub(crate) fn gauge_raw(&self, x: &[f64]) -> f64 {
        match self {
            Dynamics::EuclideanBall => linalg::norm(x),
            Dynamics::UnitBox => linalg::norm_inf(x),
        }
    }

    pub(crate) fn support_raw(&self, v: &[f64]) -> f64 {
        match self {
            Dynamics::EuclideanBall => linalg::norm(v),
            Dynamics::UnitBox => linalg::norm1(v),
        }
    }

    pub(crate) fn gauge_subgradient_raw(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; x.len()];
        match self {
            Dynamics::EuclideanBall => {
                let n = linalg::norm(x);
                if n > 0.0 {
                    for (o, v) in out.iter_mut().zip(x) {
                        *o = v / n;
                    }
                }
            }
            Dynamics::UnitBox => {
                if let Some(j) = first_argmax_abs(x) {
                    out[j] = linalg::sign(x[j]);
                }
            }
        }
        out
    }
}

/// Lowest index achieving the largest absolute value, `None` for the zero
/// vector.
pub(crate) fn first_argmax_abs(x: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in x.iter().enumerate() {
        let a = libm::fabs(*v);
        match best {
            Some((_, b)) if a <= b => {}
            _ if a > 0.0 => best = Some((i, a)),
            _ => {}
        }
    }
    best.map(|(i, _)| i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Point {
        Point::from_slice(c).unwrap()
    }

    #[test]
    fn gauge_values() {
        assert_eq!(Dynamics::UnitBox.gauge_value(&p(&[3.0, -2.0])), 3.0);
        assert_eq!(Dynamics::EuclideanBall.gauge_value(&p(&[0.0, 0.0])), 0.0);
        assert_eq!(Dynamics::EuclideanBall.gauge_value(&p(&[3.0, 4.0])), 5.0);
    }

    #[test]
    fn support_values() {
        assert_eq!(Dynamics::UnitBox.support_value(&p(&[1.0, -1.0])), 2.0);
        assert_eq!(Dynamics::EuclideanBall.support_value(&p(&[0.0, 0.0])), 0.0);
    }

    #[test]
    fn support_of_ball_matches_sampled_sup() {
        let v = [3.0, 4.0];
        let n = 200_000;
        let sup = (0..n)
            .map(|i| {
                let t = 2.0 * core::f64::consts::PI * i as f64 / n as f64;
                v[0] * libm::cos(t) + v[1] * libm::sin(t)
            })
            .fold(f64::MIN, f64::max);
        let exact = Dynamics::EuclideanBall.support_value(&p(&v));
        assert!((sup - 5.0).abs() < 1e-8);
        assert!((exact - sup).abs() < 1e-8);
    }

    #[test]
    fn gauge_subgradients() {
        assert_eq!(
            Dynamics::EuclideanBall
                .gauge_subgradient(&p(&[3.0, 4.0]))
                .coords(),
            &[0.6, 0.8]
        );
        assert_eq!(
            Dynamics::UnitBox
                .gauge_subgradient(&p(&[0.5, -2.0]))
                .coords(),
            &[0.0, -1.0]
        );
        assert_eq!(
            Dynamics::UnitBox
                .gauge_subgradient(&p(&[2.0, 2.0]))
                .coords(),
            &[1.0, 0.0]
        );
        assert_eq!(
            Dynamics::UnitBox
                .gauge_subgradient(&p(&[0.0, 0.0]))
                .coords(),
            &[0.0, 0.0]
        );
    }

    #[test]
    fn diagonal_box_subgradient_satisfies_inequality_on_grid() {
        let x = [2.0, 2.0];
        let g = Dynamics::UnitBox.gauge_subgradient(&p(&x));
        let fx = linalg::norm_inf(&x);
        for i in -40..=40 {
            for j in -40..=40 {
                let y = [i as f64 * 0.25, j as f64 * 0.25];
                let lin = fx + linalg::dot(&g, &linalg::sub(&y, &x));
                assert!(linalg::norm_inf(&y) >= lin - 1e-12);
            }
        }
    }
}
