//! Read-only helpers behind the `verify-rng` and `list-problems` commands.

use geossa_core::benchmarks::BenchmarkId;
use geossa_core::engineering::EngineeringId;
use geossa_core::rng::{REFERENCE_CSV, REFERENCE_SEED, REFERENCE_STREAM};
use geossa_core::uav::DEFAULT_INTERIOR;
use geossa_core::{RandomSource, RngStream, SearchSpace};

#[derive(Clone, Debug, PartialEq)]
pub struct DrawCheck {
    pub kind: String,
    pub index: usize,
    pub expected: f64,
    pub actual: f64,
}

impl DrawCheck {
    /// Uniforms must match bit for bit; normals pass through `ln`/`sqrt`,
    /// which may differ in the last ulp between math libraries.
    pub fn ok(&self) -> bool {
        match self.kind.as_str() {
            "uniform" => self.expected == self.actual,
            _ => (self.expected - self.actual).abs() <= 1e-15 * self.expected.abs().max(1.0),
        }
    }
}

/// Regenerates the golden draws and pairs them with the shipped values.
pub fn verify_rng() -> Vec<DrawCheck> {
    let mut uniforms = RngStream::new(REFERENCE_SEED, REFERENCE_STREAM);
    let mut normals = RngStream::new(REFERENCE_SEED, REFERENCE_STREAM);
    REFERENCE_CSV
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let cols: Vec<&str> = line.split(',').collect();
            let kind = cols[0].to_string();
            let actual = if kind == "uniform" {
                uniforms.uniform01()
            } else {
                normals.standard_normal()
            };
            DrawCheck {
                kind,
                index: cols[1].parse().expect("golden index"),
                expected: cols[2].parse().expect("golden value"),
                actual,
            }
        })
        .collect()
}

fn bounds(space: &SearchSpace) -> String {
    let (lo, hi) = (space.lower(), space.upper());
    if lo.iter().all(|v| *v == lo[0]) && hi.iter().all(|v| *v == hi[0]) {
        format!("[{}, {}]^{}", lo[0], hi[0], space.dim())
    } else {
        lo.iter()
            .zip(hi)
            .map(|(l, h)| format!("[{l}, {h}]"))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

/// One line per accepted problem token.
pub fn list_problems() -> Vec<String> {
    let mut out = Vec::new();
    for id in BenchmarkId::ALL {
        let spec = id.spec();
        out.push(format!(
            "{:<5} {:<28} dim {:<3} f* {:<12} {}",
            id.to_string(),
            spec.name,
            spec.dim,
            spec.best_value,
            bounds(&id.search_space())
        ));
    }
    for id in EngineeringId::ALL {
        out.push(format!(
            "{:<5} {:<28} dim {:<3} {:<15} {}",
            id.name(),
            id.title(),
            id.dim(),
            "",
            bounds(&id.search_space())
        ));
    }
    out.push(format!(
        "{:<5} {:<28} dim {:<3} {:<15} shipped terrain (use uav:<file.toml> for another)",
        "uav",
        "3-D path planning",
        3 * DEFAULT_INTERIOR,
        ""
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_draws_verify() {
        let checks = verify_rng();
        assert_eq!(checks.len(), 20);
        assert!(checks.iter().all(DrawCheck::ok));
    }

    #[test]
    fn listing_covers_every_token() {
        let lines = list_problems();
        assert_eq!(lines.len(), 23 + 4 + 1);
        assert!(lines[16].starts_with("F17") && lines[16].contains("[-5, 10] x [0, 15]"));
        for line in &lines {
            let token = line.split_whitespace().next().unwrap();
            assert!(token.parse::<crate::ProblemRef>().is_ok(), "{token}");
        }
    }
}
