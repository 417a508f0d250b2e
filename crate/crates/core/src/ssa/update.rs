//! Position-update rules for producers, scroungers and danger-aware sparrows.
//!
//! Each rule returns an unclamped candidate; the optimizer projects it onto
//! the search space before evaluating it. The order in which each rule
//! consumes draws is fixed and documented per function, since scripted
//! sources in the tests depend on it.

use std::f64::consts::PI;

use super::SsaParams;
use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Exponential-decay / Gaussian-jump producer move.
///
/// Draws: `R2 = u`; then `alpha = 1 - u` (so `alpha` is in `(0, 1]`) when
/// `R2 < ST`, otherwise one standard normal `Q`.
pub fn producer_update_original<R: RandomSource + ?Sized>(
    x: &[f64],
    rank: usize,
    params: &SsaParams,
    rng: &mut R,
) -> Vec<f64> {
    let alarm = rng.uniform01();
    if alarm < params.st {
        let alpha = 1.0 - rng.uniform01();
        producer_decay(x, rank, alpha, params.max_iter)
    } else {
        let q = rng.standard_normal();
        x.iter().map(|v| v + q).collect()
    }
}

fn producer_decay(x: &[f64], rank: usize, alpha: f64, max_iter: usize) -> Vec<f64> {
    let factor = (-(rank as f64) * alpha / max_iter as f64).exp();
    x.iter().map(|v| v * factor).collect()
}

/// Sigmoid inertia weight, rising from ~0 at `t = 0` to ~1 at `t = T`.
pub fn inertia_weight(t: usize, max_iter: usize) -> Result<f64> {
    if max_iter == 0 {
        return Err(Error::InvalidParameter("inertia weight needs T >= 1".into()));
    }
    Ok(sigmoid_weight(t, max_iter))
}

fn sigmoid_weight(t: usize, max_iter: usize) -> f64 {
    1.0 / (1.0 + (-25.0 * (t as f64 / max_iter as f64 - 0.5)).exp())
}

/// Sine-cosine producer move around the global best.
///
/// Draws, once per individual: `R2 = u`, `r1 = 2u`, `r2 = 2*pi*u`, `r3 = 2u`.
/// The sine form is used when `R2 < ST`, the cosine form otherwise.
pub fn producer_update_sine_cosine<R: RandomSource + ?Sized>(
    x: &[f64],
    best: &[f64],
    t: usize,
    params: &SsaParams,
    rng: &mut R,
) -> Vec<f64> {
    let alarm = rng.uniform01();
    let r1 = rng.uniform_range(0.0, 2.0);
    let r2 = rng.uniform_range(0.0, 2.0 * PI);
    let r3 = rng.uniform_range(0.0, 2.0);
    let omega = sigmoid_weight(t, params.max_iter.max(1));
    let wave = if alarm < params.st { r2.sin() } else { r2.cos() };
    sine_cosine_step(x, best, omega, r1 * wave, r3)
}

fn sine_cosine_step(x: &[f64], best: &[f64], omega: f64, amplitude: f64, r3: f64) -> Vec<f64> {
    x.iter()
        .zip(best)
        .map(|(xi, bi)| omega * xi + amplitude * (r3 * bi - xi).abs())
        .collect()
}

/// Scrounger move. `rank` is the 1-based global fitness rank.
///
/// Draws: one standard normal `Q` when `rank > n/2`; otherwise a Rademacher
/// vector `A` of length `dim`. With `A+ = A^T / dim`, the follow branch moves
/// every coordinate by the same scalar `sum_j |x_j - xp_j| * A_j / dim`.
pub fn scrounger_update<R: RandomSource + ?Sized>(
    x: &[f64],
    rank: usize,
    producer_best: &[f64],
    worst: &[f64],
    n: usize,
    rng: &mut R,
) -> Vec<f64> {
    if 2 * rank > n {
        let q = rng.standard_normal();
        let denom = (rank * rank) as f64;
        x.iter()
            .zip(worst)
            .map(|(xi, wi)| q * ((wi - xi) / denom).exp())
            .collect()
    } else {
        let signs: Vec<f64> = (0..x.len()).map(|_| rng.rademacher()).collect();
        let shift = x
            .iter()
            .zip(producer_best)
            .zip(&signs)
            .map(|((xi, pi), a)| (xi - pi).abs() * a)
            .sum::<f64>()
            / x.len() as f64;
        producer_best.iter().map(|pi| pi + shift).collect()
    }
}

/// Result of an original-rule danger-aware move.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeMove {
    pub position: Vec<f64>,
    /// Set when `|f_i| < epsilon` forced the division guard.
    pub guarded: bool,
}

/// Original danger-aware move.
///
/// Draws: one standard normal `beta` when `f_i > f_g`; otherwise `K = 2u - 1`.
/// In the `f_i = f_g` branch the division by `f_i` uses `epsilon` in its
/// place when `|f_i| < epsilon`, and the move is flagged as guarded.
#[allow(clippy::too_many_arguments)]
pub fn edge_update_original<R: RandomSource + ?Sized>(
    x: &[f64],
    best: &[f64],
    worst: &[f64],
    f_i: f64,
    f_g: f64,
    f_w: f64,
    params: &SsaParams,
    rng: &mut R,
) -> EdgeMove {
    if f_i > f_g {
        let beta = rng.standard_normal();
        let position = x
            .iter()
            .zip(best)
            .map(|(xi, bi)| bi + beta * (xi - bi).abs())
            .collect();
        EdgeMove {
            position,
            guarded: false,
        }
    } else {
        let k = rng.uniform_range(-1.0, 1.0);
        let guarded = f_i.abs() < params.epsilon;
        let denom = if guarded { params.epsilon } else { f_i };
        let ratio = (f_i - f_w) / denom;
        let position = x
            .iter()
            .zip(worst)
            .map(|(xi, wi)| xi + k * ((xi - wi).abs() * ratio + params.epsilon))
            .collect();
        EdgeMove { position, guarded }
    }
}

/// Step scale `r = rg * u` with `rg = 0.1 - 0.1 t/T`. Draws one uniform.
pub fn walk_scale<R: RandomSource + ?Sized>(t: usize, max_iter: usize, rng: &mut R) -> f64 {
    walk_range(t, max_iter) * rng.uniform01()
}

/// The deterministic envelope `rg` of [`walk_scale`].
pub fn walk_range(t: usize, max_iter: usize) -> f64 {
    if max_iter == 0 {
        return 0.0;
    }
    0.1 - 0.1 * (t as f64 / max_iter as f64)
}

/// Displacement and law-of-cosines magnitude of one triangular walk.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangularStep {
    /// `best - x`.
    pub displacement: Vec<f64>,
    /// `L^2 + LP^2 - 2 L LP cos(2 pi u2)` with `LP = L u1`.
    pub alpha: Vec<f64>,
}

/// Draws: `u1`, `u2` once per individual, or one `(u1, u2)` pair per
/// coordinate (in coordinate order) when `per_coordinate` is set.
pub fn triangular_step<R: RandomSource + ?Sized>(
    best: &[f64],
    x: &[f64],
    per_coordinate: bool,
    rng: &mut R,
) -> TriangularStep {
    let shared = if per_coordinate {
        None
    } else {
        Some((rng.uniform01(), rng.uniform01()))
    };
    let mut displacement = Vec::with_capacity(x.len());
    let mut alpha = Vec::with_capacity(x.len());
    for (bi, xi) in best.iter().zip(x) {
        let (u1, u2) = shared.unwrap_or_else(|| (rng.uniform01(), rng.uniform01()));
        let l = bi - xi;
        let lp = l * u1;
        displacement.push(l);
        alpha.push(triangle_side(l, lp, u2));
    }
    TriangularStep {
        displacement,
        alpha,
    }
}

/// `l^2 + lp^2 - 2 l lp cos(2 pi u2)`, evaluated as
/// `(l - lp)^2 + 2 l lp (1 - cos)` so that it stays nonnegative in floating
/// point whenever `l` and `lp` share a sign.
fn triangle_side(l: f64, lp: f64, u2: f64) -> f64 {
    let d = l - lp;
    d * d + 2.0 * l * lp * (1.0 - (2.0 * PI * u2).cos())
}

/// Triangular-walk danger-aware move: `xp * L + r * alpha`, elementwise.
///
/// Draws: those of [`triangular_step`], then one uniform for [`walk_scale`].
pub fn edge_update_triangular<R: RandomSource + ?Sized>(
    x: &[f64],
    producer_best: &[f64],
    t: usize,
    max_iter: usize,
    per_coordinate: bool,
    rng: &mut R,
) -> Vec<f64> {
    let step = triangular_step(producer_best, x, per_coordinate, rng);
    let r = walk_scale(t, max_iter, rng);
    producer_best
        .iter()
        .zip(step.displacement.iter().zip(&step.alpha))
        .map(|(p, (l, a))| p * l + r * a)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{RngStream, ScriptedSource};
    use proptest::prelude::*;

    fn params(max_iter: usize) -> SsaParams {
        SsaParams {
            max_iter,
            ..SsaParams::default()
        }
    }

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(1e-300)
    }

    #[test]
    fn producer_gaussian_branch_with_zero_q_is_identity() {
        let mut rng = ScriptedSource::new(&[0.9], &[0.0]);
        let out = producer_update_original(&[1.5, -2.0], 3, &params(500), &mut rng);
        assert_eq!(out, vec![1.5, -2.0]);
    }

    #[test]
    fn producer_decay_alpha_limit_is_identity() {
        // u = 1 - tiny gives alpha -> 0+.
        let mut rng = ScriptedSource::new(&[0.1, 1.0 - 1e-300_f64.max(f64::EPSILON)], &[]);
        let out = producer_update_original(&[3.0, -4.0], 1, &params(500), &mut rng);
        assert!(close(out[0], 3.0, 1e-12) && close(out[1], -4.0, 1e-12));
    }

    #[test]
    fn producer_decay_direct_substitution() {
        // alpha = 1 - 0 = 1
        let mut rng = ScriptedSource::new(&[0.1, 0.0], &[]);
        let out = producer_update_original(&[2.0, 2.0], 1, &params(500), &mut rng);
        for v in out {
            assert!(close(v, 1.9960039973346662, 1e-10));
        }
    }

    #[test]
    fn inertia_weight_values() {
        assert_eq!(inertia_weight(250, 500).unwrap(), 0.5);
        assert!(close(inertia_weight(0, 500).unwrap(), 3.726639284186561e-06, 1e-10));
        assert!(close(inertia_weight(500, 500).unwrap(), 0.9999962733607158, 1e-10));
        assert!(inertia_weight(0, 0).is_err());
    }

    #[test]
    fn inertia_weight_strictly_increasing() {
        let w: Vec<f64> = (0..=500).map(|t| inertia_weight(t, 500).unwrap()).collect();
        assert!(w.windows(2).all(|p| p[1] > p[0]));
    }

    #[test]
    fn sine_cosine_fixed_point_structure() {
        // R2, r1 = 2*0.3, r2, r3 = 2*0.5 = 1 with x = best.
        let mut rng = ScriptedSource::new(&[0.1, 0.3, 0.2, 0.5], &[]);
        let x = [1.0, -2.0, 3.0];
        let out = producer_update_sine_cosine(&x, &x, 100, &params(500), &mut rng);
        let w = inertia_weight(100, 500).unwrap();
        assert_eq!(out, x.iter().map(|v| w * v).collect::<Vec<_>>());
    }

    #[test]
    fn sine_cosine_zero_amplitude() {
        let mut rng = ScriptedSource::new(&[0.9, 0.0, 0.4, 0.7], &[]);
        let out = producer_update_sine_cosine(&[5.0], &[-1.0], 400, &params(500), &mut rng);
        assert_eq!(out, vec![inertia_weight(400, 500).unwrap() * 5.0]);
    }

    #[test]
    fn sine_cosine_direct_substitution() {
        let out = sine_cosine_step(&[4.0], &[2.0], 0.5, 1.0 * (PI / 2.0).sin(), 1.0);
        assert!(close(out[0], 4.0, 1e-10));
        // Same case through the drawing wrapper: t = T/2 gives omega = 0.5,
        // u = 0.5 gives r1 = 1 and r3 = 1, u = 0.25 gives r2 = pi/2.
        let mut rng = ScriptedSource::new(&[0.1, 0.5, 0.25, 0.5], &[]);
        let out = producer_update_sine_cosine(&[4.0], &[2.0], 250, &params(500), &mut rng);
        assert!(close(out[0], 4.0, 1e-10));
    }

    #[test]
    fn scrounger_starving_branch() {
        let mut rng = ScriptedSource::new(&[], &[0.0]);
        let out = scrounger_update(&[1.0, 2.0], 20, &[0.0, 0.0], &[5.0, 5.0], 30, &mut rng);
        assert_eq!(out, vec![0.0, 0.0]);
        let mut rng = ScriptedSource::new(&[], &[1.5]);
        let x = [3.0, -7.0, 0.5];
        let out = scrounger_update(&x, 20, &[0.0; 3], &x, 30, &mut rng);
        assert_eq!(out, vec![1.5; 3]);
    }

    #[test]
    fn scrounger_follow_branch_at_producer_best() {
        let mut rng = ScriptedSource::new(&[0.1, 0.9, 0.6], &[]);
        let xp = [1.0, 2.0, 3.0];
        let out = scrounger_update(&xp, 10, &xp, &[9.0; 3], 30, &mut rng);
        assert_eq!(out, xp.to_vec());
    }

    #[test]
    fn scrounger_follow_branch_mean_signed_deviation() {
        // signs: -1, +1
        let mut rng = ScriptedSource::new(&[0.2, 0.8], &[]);
        let out = scrounger_update(&[3.0, 5.0], 2, &[1.0, 1.0], &[0.0, 0.0], 30, &mut rng);
        // (-2 + 4) / 2 = 1
        assert_eq!(out, vec![2.0, 2.0]);
    }

    #[test]
    fn edge_original_follow_best_at_best() {
        let mut rng = ScriptedSource::new(&[], &[1.7]);
        let m = edge_update_original(&[1.0, 2.0], &[1.0, 2.0], &[4.0, 4.0], 5.0, 1.0, 9.0, &params(500), &mut rng);
        assert_eq!(m.position, vec![1.0, 2.0]);
        assert!(!m.guarded);
    }

    #[test]
    fn edge_original_zero_k_is_identity() {
        // K = 2*0.5 - 1 = 0
        let mut rng = ScriptedSource::new(&[0.5], &[]);
        let m = edge_update_original(&[1.0, 2.0], &[1.0, 2.0], &[4.0, 4.0], 1.0, 1.0, 9.0, &params(500), &mut rng);
        assert_eq!(m.position, vec![1.0, 2.0]);
    }

    #[test]
    fn edge_original_direct_substitution() {
        // K = 2*1 - 1 = 1
        let mut rng = ScriptedSource::new(&[1.0], &[]);
        let m = edge_update_original(&[1.0], &[1.0], &[3.0], 2.0, 2.0, 4.0, &params(500), &mut rng);
        assert!(close(m.position[0], -1.0, 1e-10));
    }

    #[test]
    fn edge_original_guard_flags_zero_fitness() {
        let mut rng = ScriptedSource::new(&[0.75], &[]);
        let m = edge_update_original(&[0.0], &[0.0], &[0.0], 0.0, 0.0, 1.0, &params(500), &mut rng);
        assert!(m.guarded);
        assert!(m.position[0].is_finite());
    }

    #[test]
    fn walk_scale_envelope() {
        assert!(close(walk_range(0, 500), 0.1, 1e-15));
        assert_eq!(walk_range(500, 500), 0.0);
        assert!(close(walk_range(250, 500), 0.05, 1e-15));
        let mut rng = ScriptedSource::new(&[0.9], &[]);
        assert_eq!(walk_scale(500, 500, &mut rng), 0.0);
        let rg: Vec<f64> = (0..=500).map(|t| walk_range(t, 500)).collect();
        assert!(rg.windows(2).all(|p| p[1] < p[0]));
    }

    #[test]
    fn triangular_step_cases() {
        let mut rng = ScriptedSource::new(&[0.3, 0.7], &[]);
        let s = triangular_step(&[1.0, 2.0], &[1.0, 2.0], false, &mut rng);
        assert_eq!(s.alpha, vec![0.0, 0.0]);

        // u2 = 0 -> cos = 1 -> alpha = (L - LP)^2
        let mut rng = ScriptedSource::new(&[0.25, 0.0], &[]);
        let s = triangular_step(&[4.0], &[0.0], false, &mut rng);
        assert!(close(s.alpha[0], (4.0_f64 - 1.0).powi(2), 1e-12));

        let mut rng = ScriptedSource::new(&[0.5, 0.25], &[]);
        let s = triangular_step(&[2.0], &[1.0], false, &mut rng);
        assert!(close(s.alpha[0], 1.25, 1e-10));
    }

    #[test]
    fn triangular_per_coordinate_consumes_pairs() {
        let mut rng = ScriptedSource::new(&[0.5, 0.25, 0.0, 0.0, 0.1], &[]);
        let s = triangular_step(&[2.0, 3.0], &[1.0, 1.0], true, &mut rng);
        assert!(close(s.alpha[0], 1.25, 1e-10));
        assert!(close(s.alpha[1], 4.0, 1e-12));
        assert_eq!(rng.remaining(), (1, 0));
    }

    #[test]
    fn triangular_edge_cases() {
        let mut rng = ScriptedSource::new(&[0.4, 0.6, 0.5], &[]);
        let out = edge_update_triangular(&[3.0, -1.0], &[3.0, -1.0], 10, 500, false, &mut rng);
        assert_eq!(out, vec![0.0, 0.0]);

        let mut rng = ScriptedSource::new(&[0.4, 0.6, 0.5], &[]);
        let out = edge_update_triangular(&[1.0, 5.0], &[2.0, 3.0], 500, 500, false, &mut rng);
        assert_eq!(out, vec![2.0 * 1.0, 3.0 * -2.0]);

        // r = rg(t) * u = 0.05 with t = T/2 and u = 1.
        let mut rng = ScriptedSource::new(&[0.5, 0.25, 1.0], &[]);
        let out = edge_update_triangular(&[1.0], &[2.0], 250, 500, false, &mut rng);
        assert!(close(out[0], 2.0625, 1e-10));
    }

    proptest! {
        #[test]
        fn triangle_side_is_nonnegative(l in -1e6f64..1e6, u1 in 0.0f64..1.0, u2 in 0.0f64..1.0) {
            prop_assert!(triangle_side(l, l * u1, u2) >= 0.0);
        }
    }

    #[test]
    fn triangle_side_nonnegative_bulk() {
        let mut rng = RngStream::new(3, 0);
        for _ in 0..100_000 {
            let l = rng.uniform_range(-1e3, 1e3);
            let (u1, u2) = (rng.uniform01(), rng.uniform01());
            assert!(triangle_side(l, l * u1, u2) >= 0.0);
        }
    }
}
