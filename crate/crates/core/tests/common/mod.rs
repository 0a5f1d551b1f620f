#![allow(dead_code)]

use fermat_core::{Dynamics, Point, Problem, Target};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn p(c: &[f64]) -> Point {
    Point::from_slice(c).unwrap()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn disks(centers: &[[f64; 2]], r: f64) -> Problem {
    Problem::new(
        2,
        Dynamics::EuclideanBall,
        centers
            .iter()
            .map(|c| Target::ball(p(c), r).unwrap())
            .collect(),
    )
    .unwrap()
}

pub fn squares(dynamics: Dynamics, centers: &[[f64; 2]], r: f64) -> Problem {
    Problem::new(
        2,
        dynamics,
        centers
            .iter()
            .map(|c| Target::cube(p(c), r).unwrap())
            .collect(),
    )
    .unwrap()
}

pub fn ex45() -> Problem {
    Problem::new(
        2,
        Dynamics::EuclideanBall,
        vec![
            Target::ball(p(&[0.0, -2.0]), 1.0).unwrap(),
            Target::ball(p(&[0.0, -6.0]), 1.0).unwrap(),
            Target::abs_epigraph(p(&[0.0, 0.0])).unwrap(),
        ],
    )
    .unwrap()
}

/// A random convex target in the plane with its circumradius.
pub fn random_convex_target(rng: &mut ChaCha8Rng, dynamics: Dynamics) -> (Target, [f64; 2], f64) {
    let c = [rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)];
    let kinds = match dynamics {
        Dynamics::EuclideanBall => 4,
        Dynamics::UnitBox => 3,
    };
    match rng.gen_range(0..kinds) {
        0 => (Target::singleton(p(&c)), c, 0.0),
        1 => {
            let r = rng.gen_range(0.1..1.0);
            (Target::cube(p(&c), r).unwrap(), c, r * 2f64.sqrt())
        }
        2 => {
            let rx = rng.gen_range(0.1..1.0);
            let ry = rng.gen_range(0.1..1.0);
            (
                Target::axis_box(p(&c), vec![rx, ry]).unwrap(),
                c,
                (rx * rx + ry * ry).sqrt(),
            )
        }
        _ => {
            let r = rng.gen_range(0.1..1.0);
            (Target::ball(p(&c), r).unwrap(), c, r)
        }
    }
}

/// Random instance of `n` pairwise disjoint convex targets (separated by at
/// least 0.2 between circumscribed disks).
pub fn random_convex_problem(rng: &mut ChaCha8Rng, dynamics: Dynamics, n: usize) -> Problem {
    let mut placed: Vec<(Target, [f64; 2], f64)> = Vec::new();
    while placed.len() < n {
        let cand = random_convex_target(rng, dynamics);
        if placed
            .iter()
            .all(|(_, c, r)| dist(c, &cand.1) > r + cand.2 + 0.2)
        {
            placed.push(cand);
        }
    }
    Problem::new(2, dynamics, placed.into_iter().map(|t| t.0).collect()).unwrap()
}

pub fn random_point(rng: &mut ChaCha8Rng, half_width: f64) -> Point {
    p(&[
        rng.gen_range(-half_width..half_width),
        rng.gen_range(-half_width..half_width),
    ])
}
