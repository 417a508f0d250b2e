//! UAV 3-D path planning: terrain model, waypoint decoding, the three cost
//! terms and the obstacle penalty.
//!
//! A decision vector holds `interior` waypoints as flat `(x, y, z)` triples;
//! the fixed start and goal are prepended and appended on decoding.
//!
//! Obstacles are spheres or vertical cylinders. A cylinder occupies the
//! points within `radius` of its axis segment, which runs from `center` up to
//! `center + (0, 0, height)`; distance is measured to that segment.

use std::path::Path as FsPath;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::problem::{Objective, SearchSpace};
use crate::rng::RandomSource;

pub type Point3 = [f64; 3];

/// The terrain shipped with the crate.
pub const CANONICAL_TERRAIN: &str = include_str!("../data/terrain_default.toml");

/// Scale `C` of the squared obstacle penalty.
pub const OBSTACLE_PENALTY_COEFF: f64 = 1e3;

/// Points sampled per segment by [`obstacle_penalty`].
pub const SAMPLES_PER_SEGMENT: usize = 10;

pub const DEFAULT_INTERIOR: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObstacleKind {
    Sphere,
    Cylinder,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Obstacle {
    pub kind: ObstacleKind,
    pub center: Point3,
    pub radius: f64,
    #[serde(default)]
    pub height: f64,
    #[serde(default)]
    pub clearance: f64,
}

impl Obstacle {
    /// Distance from `p` to the sphere center or the cylinder axis segment.
    pub fn distance(&self, p: &Point3) -> f64 {
        let c = &self.center;
        match self.kind {
            ObstacleKind::Sphere => dist(p, c),
            ObstacleKind::Cylinder => {
                let z = p[2].clamp(c[2], c[2] + self.height);
                dist(p, &[c[0], c[1], z])
            }
        }
    }

    /// `radius + clearance`.
    pub fn reach(&self) -> f64 {
        self.radius + self.clearance
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
pub struct Bounds {
    pub min: Point3,
    pub max: Point3,
}

impl Bounds {
    pub fn contains(&self, p: &Point3) -> bool {
        (0..3).all(|k| p[k] >= self.min[k] && p[k] <= self.max[k])
    }
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Terrain {
    pub bounds: Bounds,
    pub start: Point3,
    pub goal: Point3,
    #[serde(default, rename = "obstacle")]
    pub obstacles: Vec<Obstacle>,
}

impl Terrain {
    pub fn canonical() -> Self {
        Self::from_toml_str(CANONICAL_TERRAIN).expect("canonical terrain is valid")
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let terrain: Terrain =
            toml::from_str(text).map_err(|e| Error::InvalidInput(format!("terrain: {e}")))?;
        terrain.validate()?;
        Ok(terrain)
    }

    pub fn load(path: &FsPath) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInput(format!("terrain: {msg}")));
        if (0..3).any(|k| !(self.bounds.min[k] < self.bounds.max[k])) {
            return bad("bounds must satisfy min < max on every axis".into());
        }
        for (name, p) in [("start", &self.start), ("goal", &self.goal)] {
            if !self.bounds.contains(p) {
                return bad(format!("{name} {p:?} lies outside the bounds"));
            }
        }
        for (i, o) in self.obstacles.iter().enumerate() {
            if !(o.radius > 0.0) || !(o.clearance >= 0.0) || !(o.height >= 0.0) {
                return bad(format!(
                    "obstacle {i}: need radius > 0, clearance >= 0, height >= 0"
                ));
            }
            if o.kind == ObstacleKind::Cylinder && !(o.height > 0.0) {
                return bad(format!("obstacle {i}: cylinder height must be positive"));
            }
            for (name, p) in [("start", &self.start), ("goal", &self.goal)] {
                if o.distance(p) < o.reach() {
                    return bad(format!("{name} lies inside obstacle {i}"));
                }
            }
        }
        Ok(())
    }
}

/// Waypoints `P_1 .. P_g`, start and goal included.
#[derive(Clone, Debug, PartialEq)]
pub struct Path {
    pub waypoints: Vec<Point3>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Decoded {
    pub path: Path,
    /// Set when some coordinate had to be clamped into the terrain bounds.
    pub clamped: bool,
}

pub fn decode(x: &[f64], terrain: &Terrain, interior: usize) -> Result<Decoded> {
    if x.len() != 3 * interior {
        return Err(Error::InvalidEncoding(format!(
            "expected {} coordinates for {interior} waypoints, got {}",
            3 * interior,
            x.len()
        )));
    }
    let mut clamped = false;
    let mut waypoints = Vec::with_capacity(interior + 2);
    waypoints.push(terrain.start);
    for chunk in x.chunks_exact(3) {
        let mut p = [0.0; 3];
        for k in 0..3 {
            let (lo, hi) = (terrain.bounds.min[k], terrain.bounds.max[k]);
            let v = if chunk[k].is_nan() { 0.5 * (lo + hi) } else { chunk[k].clamp(lo, hi) };
            clamped |= v != chunk[k];
            p[k] = v;
        }
        waypoints.push(p);
    }
    waypoints.push(terrain.goal);
    Ok(Decoded {
        path: Path { waypoints },
        clamped,
    })
}

fn sub(a: &Point3, b: &Point3) -> Point3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn norm(v: &Point3) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

fn dist(a: &Point3, b: &Point3) -> f64 {
    norm(&sub(a, b))
}

pub fn path_length(p: &Path) -> f64 {
    p.waypoints.windows(2).map(|w| dist(&w[1], &w[0])).sum()
}

/// Population standard deviation of the waypoint altitudes.
pub fn height_cost(p: &Path) -> f64 {
    let g = p.waypoints.len() as f64;
    if g == 0.0 {
        return 0.0;
    }
    let mean = p.waypoints.iter().map(|w| w[2]).sum::<f64>() / g;
    (p.waypoints.iter().map(|w| (w[2] - mean).powi(2)).sum::<f64>() / g).sqrt()
}

/// Sum of turning angles between consecutive non-degenerate segments.
pub fn smoothness_cost(p: &Path) -> f64 {
    let segments: Vec<Point3> = p
        .waypoints
        .windows(2)
        .map(|w| sub(&w[1], &w[0]))
        .filter(|s| norm(s) > 0.0)
        .collect();
    segments
        .windows(2)
        .map(|w| {
            let dot = w[0][0] * w[1][0] + w[0][1] * w[1][1] + w[0][2] * w[1][2];
            (dot / (norm(&w[0]) * norm(&w[1]))).clamp(-1.0, 1.0).acos()
        })
        .sum()
}

/// Points at fractions `k / per_segment` along each segment, `k < per_segment`,
/// followed by the final waypoint.
pub fn sample_points(p: &Path, per_segment: usize) -> Vec<Point3> {
    let mut out = Vec::with_capacity(p.waypoints.len() * per_segment + 1);
    for w in p.waypoints.windows(2) {
        let d = sub(&w[1], &w[0]);
        for k in 0..per_segment {
            let s = k as f64 / per_segment as f64;
            out.push([w[0][0] + s * d[0], w[0][1] + s * d[1], w[0][2] + s * d[2]]);
        }
    }
    if let Some(last) = p.waypoints.last() {
        out.push(*last);
    }
    out
}

/// `C * sum max(0, radius + clearance - dist)^2` over samples and obstacles.
pub fn obstacle_penalty(p: &Path, terrain: &Terrain) -> f64 {
    obstacle_penalty_sampled(p, terrain, SAMPLES_PER_SEGMENT)
}

pub fn obstacle_penalty_sampled(p: &Path, terrain: &Terrain, per_segment: usize) -> f64 {
    let samples = sample_points(p, per_segment);
    let violation: f64 = samples
        .iter()
        .flat_map(|s| {
            terrain
                .obstacles
                .iter()
                .map(move |o| (o.reach() - o.distance(s)).max(0.0).powi(2))
        })
        .sum();
    OBSTACLE_PENALTY_COEFF * violation
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostWeights {
    pub w1: f64,
    pub w2: f64,
    pub w3: f64,
}

impl Default for CostWeights {
    fn default() -> Self {
        Self {
            w1: 0.5,
            w2: 0.3,
            w3: 0.2,
        }
    }
}

impl CostWeights {
    pub fn new(w1: f64, w2: f64, w3: f64) -> Result<Self> {
        let w = Self { w1, w2, w3 };
        w.validate()?;
        Ok(w)
    }

    pub fn validate(&self) -> Result<()> {
        let ws = [self.w1, self.w2, self.w3];
        if ws.iter().any(|w| !(*w >= 0.0)) || (ws.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "cost weights must be nonnegative and sum to 1, got {ws:?}"
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CostBreakdown {
    pub length: f64,
    pub height: f64,
    pub smoothness: f64,
    pub obstacle: f64,
    pub total: f64,
}

pub fn cost_breakdown(path: &Path, terrain: &Terrain, weights: &CostWeights) -> CostBreakdown {
    let length = path_length(path);
    let height = height_cost(path);
    let smoothness = smoothness_cost(path);
    let obstacle = obstacle_penalty(path, terrain);
    CostBreakdown {
        length,
        height,
        smoothness,
        obstacle,
        total: weights.w1 * length + weights.w2 * height + weights.w3 * smoothness + obstacle,
    }
}

pub fn total_cost(
    x: &[f64],
    terrain: &Terrain,
    weights: &CostWeights,
    interior: usize,
) -> Result<f64> {
    weights.validate()?;
    let decoded = decode(x, terrain, interior)?;
    Ok(cost_breakdown(&decoded.path, terrain, weights).total)
}

/// Path planning as an optimization problem over `3 * interior` coordinates.
#[derive(Clone, Debug)]
pub struct UavProblem {
    terrain: Terrain,
    weights: CostWeights,
    interior: usize,
    space: SearchSpace,
    label: String,
}

impl UavProblem {
    pub fn terrain(&self) -> &Terrain {
        &self.terrain
    }

    pub fn weights(&self) -> &CostWeights {
        &self.weights
    }

    pub fn interior(&self) -> usize {
        self.interior
    }

    pub fn decode(&self, x: &[f64]) -> Result<Decoded> {
        decode(x, &self.terrain, self.interior)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }
}

pub fn as_problem(terrain: Terrain, weights: CostWeights, interior: usize) -> Result<UavProblem> {
    terrain.validate()?;
    weights.validate()?;
    if interior == 0 {
        return Err(Error::InvalidDimension(
            "at least one interior waypoint is needed to optimize".into(),
        ));
    }
    let lower: Vec<f64> = (0..interior).flat_map(|_| terrain.bounds.min).collect();
    let upper: Vec<f64> = (0..interior).flat_map(|_| terrain.bounds.max).collect();
    let space = SearchSpace::new(lower, upper)?;
    Ok(UavProblem {
        terrain,
        weights,
        interior,
        space,
        label: "uav".into(),
    })
}

impl Objective for UavProblem {
    fn label(&self) -> String {
        self.label.clone()
    }

    fn space(&self) -> &SearchSpace {
        &self.space
    }

    fn evaluate(&self, x: &[f64], _rng: &mut dyn RandomSource) -> Result<f64> {
        let decoded = self.decode(x)?;
        Ok(cost_breakdown(&decoded.path, &self.terrain, &self.weights).total)
    }
}
