use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Box-constrained search domain.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl SearchSpace {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidDimension("search space needs dim >= 1".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        for (j, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "bounds for coordinate {j} must satisfy lower < upper, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same `[lower, upper]` interval in every coordinate.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| *lo <= *v && *v <= *hi)
    }

    /// Projects `x` onto the box in place. NaN coordinates go to the
    /// interval midpoint.
    pub fn clamp_in_place(&self, x: &mut [f64]) {
        for (v, (lo, hi)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            *v = if v.is_nan() {
                0.5 * (lo + hi)
            } else {
                v.clamp(*lo, *hi)
            };
        }
    }
}

/// Coordinate-wise projection onto `space`.
pub fn clamp_to_bounds(x: &[f64], space: &SearchSpace) -> Vec<f64> {
    let mut out = x.to_vec();
    space.clamp_in_place(&mut out);
    out
}

/// Uniform contract over every objective the optimizer can minimize.
///
/// Implementations must be reentrant: the experiment runner evaluates many
/// runs concurrently against one shared problem value.
pub trait Objective: Send + Sync {
    fn label(&self) -> String;

    fn space(&self) -> &SearchSpace;

    fn dim(&self) -> usize {
        self.space().dim()
    }

    /// Objective value at `x`. `rng` is the run's stream; only stochastic
    /// objectives draw from it.
    fn evaluate(&self, x: &[f64], rng: &mut dyn RandomSource) -> Result<f64>;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_degenerate_bounds() {
        assert!(SearchSpace::new(vec![1.0], vec![1.0]).is_err());
        assert!(SearchSpace::new(vec![2.0], vec![1.0]).is_err());
        assert!(SearchSpace::new(vec![], vec![]).is_err());
    }

    #[test]
    fn clamp_projects_each_coordinate() {
        let space = SearchSpace::new(vec![0.0, -1.0, -1.0], vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(clamp_to_bounds(&[0.5, 0.0, 0.25], &space), vec![0.5, 0.0, 0.25]);
        assert_eq!(clamp_to_bounds(&[-3.0, 0.0, 0.0], &space), vec![0.0, 0.0, 0.0]);
        assert_eq!(clamp_to_bounds(&[0.0, 9.0, f64::NEG_INFINITY], &space), vec![0.0, 1.0, -1.0]);
        assert_eq!(clamp_to_bounds(&[f64::NAN, 0.0, 0.0], &space)[0], 0.5);
    }
}
