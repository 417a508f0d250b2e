//! Population initialization: pseudo-random and good-nodes-set.

use super::{Individual, Population};
use crate::error::{Error, Result};
use crate::problem::SearchSpace;
use crate::rng::RandomSource;

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidPopulation(n));
    }
    Ok(())
}

/// `lb + (ub - lb) u` per coordinate, members drawn in order.
pub fn init_pseudo_random<R: RandomSource + ?Sized>(
    space: &SearchSpace,
    n: usize,
    rng: &mut R,
) -> Result<Population> {
    check_size(n)?;
    let members = (0..n)
        .map(|_| {
            let position = space
                .lower()
                .iter()
                .zip(space.upper())
                .map(|(lo, hi)| lo + (hi - lo) * rng.uniform01())
                .collect();
            Individual::unevaluated(position)
        })
        .collect();
    Ok(Population::new(members))
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn frac(v: f64) -> f64 {
    v - v.floor()
}

/// Cyclotomic generating vector `r_j = frac(2 cos(2 pi j / p))`, `j = 1..=dim`,
/// with `p` the smallest prime `>= 2 dim + 3`.
pub fn good_nodes_vector(dim: usize) -> Vec<f64> {
    let mut p = 2 * dim as u64 + 3;
    while !is_prime(p) {
        p += 1;
    }
    (1..=dim)
        .map(|j| frac(2.0 * (2.0 * std::f64::consts::PI * j as f64 / p as f64).cos()))
        .collect()
}

/// `count` good nodes in `[0, 1)^dim`; node `k` (1-based) is `frac(k r_j)`.
pub fn good_nodes_unit(count: usize, dim: usize) -> Result<Vec<Vec<f64>>> {
    good_nodes_unit_with(count, &good_nodes_vector(dim))
}

/// As [`good_nodes_unit`] with an explicit generating vector.
pub fn good_nodes_unit_with(count: usize, generator: &[f64]) -> Result<Vec<Vec<f64>>> {
    if count == 0 || generator.is_empty() {
        return Err(Error::InvalidDimension(
            "good nodes need at least one node and one dimension".into(),
        ));
    }
    Ok((1..=count)
        .map(|k| generator.iter().map(|r| frac(k as f64 * r)).collect())
        .collect())
}

/// Good-nodes population mapped affinely onto `space`. Consumes no draws.
pub fn init_good_nodes(space: &SearchSpace, n: usize) -> Result<Population> {
    init_good_nodes_with(space, n, &good_nodes_vector(space.dim()))
}

pub fn init_good_nodes_with(space: &SearchSpace, n: usize, generator: &[f64]) -> Result<Population> {
    check_size(n)?;
    if generator.len() != space.dim() {
        return Err(Error::DimensionMismatch {
            expected: space.dim(),
            got: generator.len(),
        });
    }
    let members = good_nodes_unit_with(n, generator)?
        .into_iter()
        .map(|unit| {
            let position = unit
                .iter()
                .zip(space.lower().iter().zip(space.upper()))
                .map(|(p, (lo, hi))| lo + p * (hi - lo))
                .collect();
            Individual::unevaluated(position)
        })
        .collect();
    Ok(Population::new(members))
}

/// Star-discrepancy estimate of a 2-D point set in `[0, 1)^2`, taking the
/// worst local discrepancy over anchored boxes with corners on a
/// `resolution x resolution` grid (both open and closed boxes).
pub fn star_discrepancy_grid(points: &[Vec<f64>], resolution: usize) -> Result<f64> {
    if points.is_empty() || resolution == 0 {
        return Err(Error::InsufficientData("discrepancy needs points and a positive grid".into()));
    }
    if let Some(p) = points.iter().find(|p| p.len() != 2) {
        return Err(Error::DimensionMismatch { expected: 2, got: p.len() });
    }
    let n = points.len() as f64;
    let mut worst = 0.0f64;
    for i in 1..=resolution {
        let a = i as f64 / resolution as f64;
        for j in 1..=resolution {
            let b = j as f64 / resolution as f64;
            let open = points.iter().filter(|p| p[0] < a && p[1] < b).count() as f64;
            let closed = points.iter().filter(|p| p[0] <= a && p[1] <= b).count() as f64;
            let volume = a * b;
            worst = worst.max((open / n - volume).abs()).max((closed / n - volume).abs());
        }
    }
    Ok(worst)
}
