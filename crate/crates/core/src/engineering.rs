//! Constrained engineering design problems solved with a quadratic penalty:
//! corrugated bulkhead (CB), piston lever (PL), reactor network (RN) and
//! industrial refrigeration system (IRS).
//!
//! Every evaluation produces a [`ConstraintReport`]; the optimizer sees only
//! its `penalized_objective`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::problem::{Objective, SearchSpace};
use crate::rng::RandomSource;

pub const DEFAULT_PENALTY_COEFF: f64 = 1e3;
/// Largest inequality violation still counted as feasible.
pub const TOL_G: f64 = 1e-6;
/// Largest equality residual still counted as feasible.
pub const TOL_H: f64 = 1e-4;
/// Magnitude below which a denominator is replaced and the report flagged.
pub const DENOMINATOR_GUARD: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EngineeringId {
    Cb,
    Pl,
    Rn,
    Irs,
}

impl EngineeringId {
    pub const ALL: [EngineeringId; 4] = [Self::Cb, Self::Pl, Self::Rn, Self::Irs];

    pub fn name(self) -> &'static str {
        match self {
            Self::Cb => "CB",
            Self::Pl => "PL",
            Self::Rn => "RN",
            Self::Irs => "IRS",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Self::Cb => "Corrugated Bulkhead",
            Self::Pl => "Piston Lever",
            Self::Rn => "Reactor Network",
            Self::Irs => "Industrial Refrigeration System",
        }
    }

    pub fn dim(self) -> usize {
        match self {
            Self::Cb | Self::Pl => 4,
            Self::Rn => 6,
            Self::Irs => 14,
        }
    }

    pub fn search_space(self) -> SearchSpace {
        let (lower, upper) = match self {
            Self::Cb => (vec![1.0; 4], vec![100.0, 100.0, 100.0, 5.0]),
            Self::Pl => (vec![0.05; 4], vec![500.0, 500.0, 120.0, 500.0]),
            Self::Rn => (vec![1e-5; 6], vec![1.0, 1.0, 1.0, 1.0, 16.0, 16.0]),
            Self::Irs => (vec![0.001; 14], vec![5.0; 14]),
        };
        SearchSpace::new(lower, upper).expect("engineering bounds are valid")
    }
}

impl fmt::Display for EngineeringId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EngineeringId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidInput(format!("unknown engineering problem `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstraintReport {
    pub raw_objective: f64,
    /// Constraint values `g_i` (feasible when `<= 0`).
    pub inequality: Vec<f64>,
    /// `max(0, g_i)`.
    pub inequality_violations: Vec<f64>,
    /// `|h_i|`; empty except for RN.
    pub equality_residuals: Vec<f64>,
    pub penalized_objective: f64,
    pub feasible: bool,
    /// Set when a denominator fell below [`DENOMINATOR_GUARD`] in magnitude.
    pub singular: bool,
}

impl ConstraintReport {
    pub fn max_violation(&self) -> f64 {
        self.inequality_violations.iter().fold(0.0, |m, v| m.max(*v))
    }

    pub fn max_residual(&self) -> f64 {
        self.equality_residuals.iter().fold(0.0, |m, v| m.max(*v))
    }
}

struct Raw {
    f: f64,
    g: Vec<f64>,
    h: Vec<f64>,
    singular: bool,
}

#[derive(Default)]
struct Guard {
    tripped: bool,
}

impl Guard {
    fn div(&mut self, num: f64, den: f64) -> f64 {
        if den.abs() < DENOMINATOR_GUARD {
            self.tripped = true;
            num / DENOMINATOR_GUARD.copysign(den)
        } else {
            num / den
        }
    }
}

fn assemble(raw: Raw, penalty_coeff: f64) -> ConstraintReport {
    let inequality_violations: Vec<f64> = raw.g.iter().map(|g| g.max(0.0)).collect();
    let equality_residuals: Vec<f64> = raw.h.iter().map(|h| h.abs()).collect();
    let penalty = penalty_coeff
        * (inequality_violations.iter().map(|v| v * v).sum::<f64>()
            + raw.h.iter().map(|h| h * h).sum::<f64>());
    let feasible = inequality_violations.iter().all(|v| *v <= TOL_G)
        && equality_residuals.iter().all(|r| *r <= TOL_H);
    ConstraintReport {
        raw_objective: raw.f,
        inequality: raw.g,
        inequality_violations,
        equality_residuals,
        penalized_objective: raw.f + penalty,
        feasible,
        singular: raw.singular,
    }
}

fn check_len(x: &[f64], dim: usize) -> Result<()> {
    if x.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: x.len(),
        });
    }
    Ok(())
}

fn cb_raw(x: &[f64]) -> Raw {
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    let mut guard = Guard::default();
    let base = x1 + (x3 * x3 - x2 * x2).abs().sqrt();
    let f = guard.div(5.885 * x4 * (x1 + x3), base);
    let g = vec![
        -x4 * x2 * (0.4 * x1 + x3 / 6.0) + 8.94 * base,
        -x4 * x2 * x2 * (0.2 * x1 + x3 / 12.0) + 2.2 * (8.94 * base).powf(4.0 / 3.0),
        -x4 + 0.0156 * x1 + 0.15,
        -x4 + 0.0156 * x3 + 0.15,
        -x4 + 1.05,
        -x3 + x2,
    ];
    Raw {
        f,
        g,
        h: Vec::new(),
        singular: guard.tripped,
    }
}

pub const PL_Q: f64 = 10000.0;
pub const PL_P: f64 = 1500.0;
pub const PL_L: f64 = 240.0;
pub const PL_M_MAX: f64 = 1.8e6;
pub const PL_DEFAULT_THETA: f64 = PI / 4.0;

/// Piston force `F = 0.25 pi P x3^2`.
pub fn pl_force(x3: f64) -> f64 {
    0.25 * PI * PL_P * x3 * x3
}

/// Lever arms `(L1, L2)` of the piston lever.
pub fn pl_lengths(x: &[f64], theta: f64) -> (f64, f64) {
    let (x1, x2, x4) = (x[0], x[1], x[3]);
    let l1 = ((x4 - x2).powi(2) + x1 * x1).sqrt();
    let l2 = ((x4 * theta.sin() + x1).powi(2) + (x2 - x4 * theta.cos()).powi(2)).sqrt();
    (l1, l2)
}

fn pl_raw(x: &[f64], theta: f64) -> Raw {
    let (x1, x2, x3, x4) = (x[0], x[1], x[2], x[3]);
    let mut guard = Guard::default();
    let (l1, l2) = pl_lengths(x, theta);
    let r = guard.div(
        (-x4 * (x4 * theta.sin() + x1) + x1 * (x2 - x4 * theta.cos())).abs(),
        l1,
    );
    let force = pl_force(x3);
    let f = 0.25 * PI * x3 * x3 * (l2 - l1);
    let g = vec![
        PL_Q * PL_L * theta.cos() - r * force,
        PL_Q * (PL_L - x4) - PL_M_MAX,
        1.2 * (l2 - l1) - l1,
        x3 / 2.0 - x2,
    ];
    Raw {
        f,
        g,
        h: Vec::new(),
        singular: guard.tripped,
    }
}

pub const RN_K1: f64 = 0.09755988;
pub const RN_K2: f64 = 0.99 * RN_K1;
pub const RN_K3: f64 = 0.0391908;
pub const RN_K4: f64 = 0.9 * RN_K3;

fn rn_raw(x: &[f64]) -> Raw {
    let (x1, x2, x3, x4, x5, x6) = (x[0], x[1], x[2], x[3], x[4], x[5]);
    Raw {
        f: x4,
        g: vec![x5.sqrt() + x6.sqrt() - 4.0],
        h: vec![
            x1 + RN_K1 * x2 * x5 - 1.0,
            x2 - x1 + RN_K2 * x2 * x6,
            x3 + x1 + RN_K3 * x3 * x5 - 1.0,
            x4 - x3 + x2 - x1 + RN_K4 * x4 * x6,
        ],
        singular: false,
    }
}

fn irs_raw(x: &[f64]) -> Raw {
    let [x1, x2, x3, x4, x5, x6, x7, x8, x9, x10, x11, x12, x13, x14] =
        <[f64; 14]>::try_from(x).expect("length checked");
    let mut gd = Guard::default();
    let f = 63098.88 * x2 * x4 * x12
        + 5441.5 * x2 * x2 * x12
        + 115055.5 * x2.powf(1.664) * x6
        + 6172.27 * x2 * x2 * x6
        + 63098.88 * x1 * x3 * x11
        + 5441.5 * x1 * x1 * x11
        + 115055.5 * x1.powf(1.664) * x5
        + 6172.27 * x1 * x1 * x5
        + 140.53 * x1 * x11
        + 281.29 * x3 * x11
        + 70.26 * x1 * x1
        + 281.29 * x1 * x3
        + 281.29 * x3 * x3
        + gd.div(
            14437.0 * x8.powf(1.8812) * x12.powf(0.3424) * x10 * x1 * x1 * x7,
            x14 * x9,
        )
        + 20470.2 * x7.powf(2.893) * x11.powf(0.316) * x12;
    let g = vec![
        gd.div(1.524, x7) - 1.0,
        gd.div(1.524, x8) - 1.0,
        0.07789 * x1 - gd.div(2.0 * x9, x7) - 1.0,
        gd.div(7.05305 * x1 * x1 * x10, x9 * x8 * x2 * x14) - 1.0,
        gd.div(0.0833 * x14, x13) - 1.0,
        gd.div(47.136 * x2.powf(0.333) * x12, x10) - 1.333 * x8 * x13.powf(2.1195)
            + gd.div(62.08 * x13.powf(2.1195) * x8.powf(0.2), x12 * x10)
            - 1.0,
        0.04771 * x10 * x8.powf(1.8812) * x12.powf(0.3424) - 1.0,
        0.0488 * x9 * x7.powf(1.893) * x11.powf(0.316) - 1.0,
        gd.div(0.0099 * x1, x3) - 1.0,
        gd.div(0.0193 * x2, x4) - 1.0,
        gd.div(0.0298 * x1, x5) - 1.0,
        gd.div(0.056 * x2, x6) - 1.0,
        gd.div(2.0, x9) - 1.0,
        gd.div(2.0, x10) - 1.0,
        gd.div(x12, x11) - 1.0,
    ];
    Raw {
        f,
        g,
        h: Vec::new(),
        singular: gd.tripped,
    }
}

pub fn cb_evaluate(x: &[f64]) -> Result<ConstraintReport> {
    EngineeringProblem::new(EngineeringId::Cb).report(x)
}

pub fn pl_evaluate(x: &[f64]) -> Result<ConstraintReport> {
    EngineeringProblem::new(EngineeringId::Pl).report(x)
}

pub fn rn_evaluate(x: &[f64]) -> Result<ConstraintReport> {
    EngineeringProblem::new(EngineeringId::Rn).report(x)
}

pub fn irs_evaluate(x: &[f64]) -> Result<ConstraintReport> {
    EngineeringProblem::new(EngineeringId::Irs).report(x)
}

/// A design problem with its penalty settings, usable as an [`Objective`].
#[derive(Clone, Debug)]
pub struct EngineeringProblem {
    id: EngineeringId,
    space: SearchSpace,
    penalty_coeff: f64,
    theta: f64,
}

pub fn as_problem(id: EngineeringId) -> EngineeringProblem {
    EngineeringProblem::new(id)
}

impl EngineeringProblem {
    pub fn new(id: EngineeringId) -> Self {
        Self {
            id,
            space: id.search_space(),
            penalty_coeff: DEFAULT_PENALTY_COEFF,
            theta: PL_DEFAULT_THETA,
        }
    }

    pub fn with_penalty_coeff(mut self, coeff: f64) -> Self {
        self.penalty_coeff = coeff;
        self
    }

    /// Lever angle used by PL; ignored elsewhere.
    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = theta;
        self
    }

    pub fn id(&self) -> EngineeringId {
        self.id
    }

    pub fn penalty_coeff(&self) -> f64 {
        self.penalty_coeff
    }

    pub fn report(&self, x: &[f64]) -> Result<ConstraintReport> {
        check_len(x, self.id.dim())?;
        let raw = match self.id {
            EngineeringId::Cb => cb_raw(x),
            EngineeringId::Pl => pl_raw(x, self.theta),
            EngineeringId::Rn => {
                if !self.space.contains(x) {
                    return Err(Error::Domain(format!("RN point outside its bounds: {x:?}")));
                }
                rn_raw(x)
            }
            EngineeringId::Irs => {
                if x.iter().any(|v| !(*v > 0.0)) {
                    return Err(Error::Domain(format!(
                        "IRS needs strictly positive coordinates: {x:?}"
                    )));
                }
                irs_raw(x)
            }
        };
        Ok(assemble(raw, self.penalty_coeff))
    }
}

impl Objective for EngineeringProblem {
    fn label(&self) -> String {
        self.id.name().to_string()
    }

    fn space(&self) -> &SearchSpace {
        &self.space
    }

    fn evaluate(&self, x: &[f64], _rng: &mut dyn RandomSource) -> Result<f64> {
        Ok(self.report(x)?.penalized_objective)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeMap;

    const REFERENCE: &str = include_str!("../data/engineering_reference_points.csv");

    #[derive(Default)]
    struct RefPoint {
        x: Vec<f64>,
        f: f64,
        g: Vec<f64>,
        h: Vec<f64>,
    }

    fn reference_points() -> BTreeMap<(String, usize), RefPoint> {
        let mut out: BTreeMap<(String, usize), RefPoint> = BTreeMap::new();
        for line in REFERENCE.lines().skip(1) {
            let f: Vec<&str> = line.split(',').collect();
            let entry = out.entry((f[0].to_string(), f[1].parse().unwrap())).or_default();
            let v: f64 = f[4].parse().unwrap();
            match f[2] {
                "x" => entry.x.push(v),
                "f" => entry.f = v,
                "g" => entry.g.push(v),
                "h" => entry.h.push(v),
                other => panic!("unknown kind {other}"),
            }
        }
        out
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1e-300) || a == b
    }

    #[test]
    fn formula_fidelity_against_oracle() {
        let points = reference_points();
        assert_eq!(points.len(), 20);
        for ((name, idx), p) in &points {
            let id: EngineeringId = name.parse().unwrap();
            let r = EngineeringProblem::new(id).report(&p.x).unwrap();
            assert!(close(r.raw_objective, p.f), "{name}#{idx} f: {} vs {}", r.raw_objective, p.f);
            assert_eq!(r.inequality.len(), p.g.len());
            for (k, (a, b)) in r.inequality.iter().zip(&p.g).enumerate() {
                assert!(close(*a, *b), "{name}#{idx} g{}: {a} vs {b}", k + 1);
            }
            assert_eq!(r.equality_residuals.len(), p.h.len());
            for (k, (a, b)) in r.equality_residuals.iter().zip(&p.h).enumerate() {
                assert!(close(*a, b.abs()), "{name}#{idx} h{}: {a} vs {b}", k + 1);
            }
        }
    }

    #[test]
    fn cb_examples() {
        let r = cb_evaluate(&[1.0, 1.0, 1.0, 1.05]).unwrap();
        assert_eq!(r.inequality[4], 0.0);
        assert_eq!(r.inequality_violations[4], 0.0);
        let r = cb_evaluate(&[50.0, 40.0, 30.0, 3.0]).unwrap();
        assert!(r.inequality[5] > 0.0);
        assert!(!r.feasible);
        let r = cb_evaluate(&[50.0, 20.0, 60.0, 4.0]).unwrap();
        assert!(r.inequality.iter().all(|g| *g < 0.0));
        assert_eq!(r.penalized_objective, r.raw_objective);
        assert!(r.feasible);
    }

    #[test]
    fn pl_examples() {
        let r = pl_evaluate(&[10.0, 2.0, 4.0, 100.0]).unwrap();
        assert_eq!(r.inequality[3], 0.0);
        assert_eq!(r.inequality_violations[3], 0.0);
        assert!((pl_force(1.0) - 1178.0972450961724).abs() <= 1e-10 * 1178.0972450961724);
        let (l1, l2) = pl_lengths(&[0.05, 0.05, 1.0, 0.05], PL_DEFAULT_THETA);
        assert!(l1 >= 0.0 && l2 >= 0.0);
    }

    #[test]
    fn pl_degenerate_lever_is_flagged() {
        let p = EngineeringProblem::new(EngineeringId::Pl);
        let r = p.report(&[0.0, 3.0, 1.0, 3.0]).unwrap();
        assert!(r.singular);
        assert!(r.penalized_objective.is_finite());
    }

    #[test]
    fn rn_examples() {
        let r = rn_evaluate(&[0.5, 0.5, 0.5, 0.5, 4.0, 4.0]).unwrap();
        assert_eq!(r.inequality[0], 0.0);
        let x = [0.3, 0.3, 0.2, 0.25, 2.0, 7.0];
        let r = rn_evaluate(&x).unwrap();
        assert_eq!(r.equality_residuals[1], (RN_K2 * x[1] * x[5]).abs());
        assert!(matches!(
            rn_evaluate(&[-0.1, 0.5, 0.5, 0.5, 4.0, 4.0]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn rn_near_feasible_point_scores_its_concentration() {
        // Solve the four equalities for (x1..x4) given x5, x6 and x4 near 0.2518.
        let (x5, x6) = (3.0_f64, 5.0_f64);
        let x1 = 1.0 / (1.0 + RN_K1 * x5 * (1.0 / (1.0 + RN_K2 * x6)));
        let x2 = x1 / (1.0 + RN_K2 * x6);
        let x3 = (1.0 - x1) / (1.0 + RN_K3 * x5);
        let x4 = (x3 - x2 + x1) / (1.0 + RN_K4 * x6);
        let r = rn_evaluate(&[x1, x2, x3, x4, x5, x6]).unwrap();
        assert!(r.max_residual() < 1e-6);
        assert!(r.feasible);
        assert!((r.penalized_objective - x4).abs() < 1e-9);
    }

    #[test]
    fn irs_examples() {
        let mut x = [2.5; 14];
        x[8] = 2.0;
        let r = irs_evaluate(&x).unwrap();
        assert_eq!(r.inequality[12], 0.0);
        let mut x = [2.5; 14];
        x[10] = 1.7;
        x[11] = 1.7;
        assert_eq!(irs_evaluate(&x).unwrap().inequality[14], 0.0);
        let r = irs_evaluate(&[2.5; 14]).unwrap();
        assert!(r.raw_objective.is_finite());
        assert!(r.inequality.iter().all(|g| g.is_finite()));
        assert_eq!(r.inequality.len(), 15);
        let mut bad = [2.5; 14];
        bad[3] = 0.0;
        assert!(matches!(irs_evaluate(&bad), Err(Error::Domain(_))));
    }

    #[test]
    fn problem_shapes() {
        let cb = as_problem(EngineeringId::Cb);
        assert_eq!(cb.dim(), 4);
        assert_eq!(cb.space().lower(), &[1.0; 4]);
        assert_eq!(cb.space().upper(), &[100.0, 100.0, 100.0, 5.0]);
        let irs = as_problem(EngineeringId::Irs);
        assert_eq!(irs.dim(), 14);
        assert!(irs.space().lower().iter().all(|v| *v == 0.001));
        assert!(irs.space().upper().iter().all(|v| *v == 5.0));
        assert_eq!(as_problem(EngineeringId::Rn).dim(), 6);
        assert!(cb_evaluate(&[1.0; 3]).is_err());
        assert_eq!("irs".parse::<EngineeringId>().unwrap(), EngineeringId::Irs);
    }

    fn arb_point(id: EngineeringId) -> impl Strategy<Value = Vec<f64>> {
        let space = id.search_space();
        space
            .lower()
            .iter()
            .zip(space.upper())
            .map(|(l, u)| *l..=*u)
            .collect::<Vec<_>>()
    }

    proptest! {
        #[test]
        fn penalty_never_lowers_objective(
            cb in arb_point(EngineeringId::Cb),
            pl in arb_point(EngineeringId::Pl),
            rn in arb_point(EngineeringId::Rn),
            irs in arb_point(EngineeringId::Irs),
        ) {
            for (id, x) in [(EngineeringId::Cb, cb), (EngineeringId::Pl, pl), (EngineeringId::Rn, rn), (EngineeringId::Irs, irs)] {
                let base = EngineeringProblem::new(id).report(&x).unwrap();
                prop_assert!(base.penalized_objective >= base.raw_objective);
                let clean = base.inequality_violations.iter().all(|v| *v == 0.0)
                    && base.equality_residuals.iter().all(|v| *v == 0.0);
                prop_assert_eq!(base.penalized_objective == base.raw_objective, clean);
                let scaled = EngineeringProblem::new(id).with_penalty_coeff(1e9).report(&x).unwrap();
                prop_assert_eq!(scaled.feasible, base.feasible);
            }
        }
    }
}
