//! The 23 classical benchmark functions F1-F23.
//!
//! F1-F13 are scalable (30 dimensions here); F14-F23 have fixed dimension
//! and use the coefficient tables in [`tables`]. Every function is
//! minimized.

pub mod tables;

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::problem::{Objective, SearchSpace};
use crate::rng::RandomSource;

pub use tables::{tables, CoefficientTables};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BenchmarkId {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
    F10,
    F11,
    F12,
    F13,
    F14,
    F15,
    F16,
    F17,
    F18,
    F19,
    F20,
    F21,
    F22,
    F23,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Category {
    Unimodal,
    Multimodal,
    Composition,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkSpec {
    pub id: BenchmarkId,
    pub name: &'static str,
    pub dim: usize,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub best_value: f64,
    pub category: Category,
}

/// A function value plus whether the probe lay outside the standard domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub out_of_bounds: bool,
}

impl BenchmarkId {
    pub const ALL: [BenchmarkId; 23] = {
        use BenchmarkId::*;
        [
            F1, F2, F3, F4, F5, F6, F7, F8, F9, F10, F11, F12, F13, F14, F15, F16, F17, F18, F19,
            F20, F21, F22, F23,
        ]
    };

    /// 1-based function number.
    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn from_number(k: usize) -> Option<Self> {
        Self::ALL.get(k.checked_sub(1)?).copied()
    }

    pub fn spec(self) -> BenchmarkSpec {
        let (name, category, best_value) = self.metadata();
        let (lower, upper) = self.bounds();
        BenchmarkSpec {
            id: self,
            name,
            dim: lower.len(),
            lower,
            upper,
            best_value,
            category,
        }
    }

    pub fn dim(self) -> usize {
        use BenchmarkId::*;
        match self {
            F14 | F16 | F17 | F18 => 2,
            F19 => 3,
            F15 | F21 | F22 | F23 => 4,
            F20 => 6,
            _ => 30,
        }
    }

    pub fn search_space(self) -> SearchSpace {
        let (lower, upper) = self.bounds();
        SearchSpace::new(lower, upper).expect("benchmark bounds are valid")
    }

    fn metadata(self) -> (&'static str, Category, f64) {
        use BenchmarkId::*;
        use Category::*;
        match self {
            F1 => ("Sphere", Unimodal, 0.0),
            F2 => ("Schwefel's Problem 2.22", Unimodal, 0.0),
            F3 => ("Schwefel's Problem 1.2", Unimodal, 0.0),
            F4 => ("Schwefel's Problem 2.21", Unimodal, 0.0),
            F5 => ("Generalized Rosenbrock's Function", Unimodal, 0.0),
            F6 => ("Step Function", Unimodal, 0.0),
            F7 => ("Quartic Function", Unimodal, 0.0),
            F8 => ("Generalized Schwefel's Function", Multimodal, -12569.5),
            F9 => ("Generalized Rastrigin's Function", Multimodal, 0.0),
            F10 => ("Ackley's Function", Multimodal, 0.0),
            F11 => ("Generalized Griewank's Function", Multimodal, 0.0),
            F12 => ("Generalized Penalized Function 1", Multimodal, 0.0),
            F13 => ("Generalized Penalized Function 2", Multimodal, 0.0),
            F14 => ("Shekel's Foxholes Function", Multimodal, 0.998),
            F15 => ("Kowalik's Function", Composition, 0.0003075),
            F16 => ("Six-Hump Camel-Back Function", Composition, -1.0316),
            F17 => ("Branin Function", Composition, 0.398),
            F18 => ("Goldstein-Price Function", Composition, 3.0),
            F19 => ("Hartman's Function 1", Composition, -3.8628),
            F20 => ("Hartman's Function 2", Composition, -3.32),
            F21 => ("Shekel's Function 1", Composition, -10.1532),
            F22 => ("Shekel's Function 2", Composition, -10.4029),
            F23 => ("Shekel's Function 3", Composition, -10.5364),
        }
    }

    fn bounds(self) -> (Vec<f64>, Vec<f64>) {
        use BenchmarkId::*;
        let sym = |b: f64| (-b, b);
        let (lo, hi) = match self {
            F1 | F3 | F4 | F6 => sym(100.0),
            F2 => sym(10.0),
            F5 => sym(30.0),
            F7 => sym(1.28),
            F8 => sym(500.0),
            F9 => sym(5.12),
            F10 => sym(32.0),
            F11 => sym(600.0),
            F12 | F13 => sym(50.0),
            F14 => sym(65.536),
            F15 | F16 => sym(5.0),
            F17 => return (vec![-5.0, 0.0], vec![10.0, 15.0]),
            F18 => sym(2.0),
            F19 | F20 => (0.0, 1.0),
            F21 | F22 | F23 => (0.0, 10.0),
        };
        (vec![lo; self.dim()], vec![hi; self.dim()])
    }

    /// Evaluates the function. F7's additive `random[0,1)` term is drawn from
    /// `noise` when one is supplied and omitted otherwise.
    pub fn evaluate(self, x: &[f64], noise: Option<&mut dyn RandomSource>) -> Result<Evaluation> {
        let dim = self.dim();
        if x.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: x.len(),
            });
        }
        let (lower, upper) = self.bounds();
        let out_of_bounds = x
            .iter()
            .zip(lower.iter().zip(&upper))
            .any(|(v, (lo, hi))| !(lo..=hi).contains(&v));
        let mut value = self.formula(x);
        if self == BenchmarkId::F7 {
            if let Some(rng) = noise {
                value += rng.uniform01();
            }
        }
        Ok(Evaluation {
            value,
            out_of_bounds,
        })
    }

    fn formula(self, x: &[f64]) -> f64 {
        use BenchmarkId::*;
        match self {
            F1 => x.iter().map(|v| v * v).sum(),
            F2 => {
                x.iter().map(|v| v.abs()).sum::<f64>() + x.iter().map(|v| v.abs()).product::<f64>()
            }
            F3 => {
                let mut prefix = 0.0;
                let mut total = 0.0;
                for v in x {
                    prefix += v;
                    total += prefix * prefix;
                }
                total
            }
            F4 => x.iter().fold(0.0, |m, v| m.max(v.abs())),
            F5 => x
                .windows(2)
                .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
                .sum(),
            F6 => x.iter().map(|v| (v + 0.5).floor().powi(2)).sum(),
            F7 => x
                .iter()
                .enumerate()
                .map(|(i, v)| (i + 1) as f64 * v.powi(4))
                .sum(),
            F8 => x.iter().map(|v| -v * v.abs().sqrt().sin()).sum(),
            F9 => x
                .iter()
                .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
                .sum(),
            F10 => ackley(x),
            F11 => {
                let sum = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
                let product: f64 = x
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
                    .product();
                sum - product + 1.0
            }
            F12 => penalized_1(x),
            F13 => penalized_2(x),
            F14 => foxholes(x),
            F15 => kowalik(x),
            F16 => {
                let (a, b) = (x[0], x[1]);
                4.0 * a * a - 2.1 * a.powi(4) + a.powi(6) / 3.0 + a * b - 4.0 * b * b
                    + 4.0 * b.powi(4)
            }
            F17 => {
                let (a, b) = (x[0], x[1]);
                (b - 5.1 / (4.0 * PI * PI) * a * a + 5.0 / PI * a - 6.0).powi(2)
                    + 10.0 * (1.0 - 1.0 / (8.0 * PI)) * a.cos()
                    + 10.0
            }
            F18 => {
                let (a, b) = (x[0], x[1]);
                let p = 1.0
                    + (a + b + 1.0).powi(2)
                        * (19.0 - 14.0 * a + 3.0 * a * a - 14.0 * b + 6.0 * a * b + 3.0 * b * b);
                let q = 30.0
                    + (2.0 * a - 3.0 * b).powi(2)
                        * (18.0 - 32.0 * a + 12.0 * a * a + 48.0 * b - 36.0 * a * b
                            + 27.0 * b * b);
                p * q
            }
            F19 => {
                let t = tables();
                hartman(x, &t.hartman3_a, &t.hartman3_c, &t.hartman3_p)
            }
            F20 => {
                let t = tables();
                hartman(x, &t.hartman6_a, &t.hartman6_c, &t.hartman6_p)
            }
            F21 => shekel(x, 5),
            F22 => shekel(x, 7),
            F23 => shekel(x, 10),
        }
    }
}

fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
    let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    -20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E
}

/// Piecewise boundary penalty `u(x, a, k, m)`.
pub fn boundary_penalty(v: f64, a: f64, k: f64, m: i32) -> f64 {
    if v > a {
        k * (v - a).powi(m)
    } else if v < -a {
        k * (-v - a).powi(m)
    } else {
        0.0
    }
}

fn penalized_1(x: &[f64]) -> f64 {
    let n = x.len();
    let y: Vec<f64> = x.iter().map(|v| 1.0 + (v + 1.0) / 4.0).collect();
    let inner: f64 = y
        .windows(2)
        .map(|w| (w[0] - 1.0).powi(2) * (1.0 + 10.0 * (PI * w[1]).sin().powi(2)))
        .sum();
    let body = 10.0 * (PI * y[0]).sin().powi(2) + inner + (y[n - 1] - 1.0).powi(2);
    PI / n as f64 * body
        + x.iter()
            .map(|&v| boundary_penalty(v, 10.0, 100.0, 4))
            .sum::<f64>()
}

fn penalized_2(x: &[f64]) -> f64 {
    let n = x.len();
    let inner: f64 = x
        .windows(2)
        .map(|w| (w[0] - 1.0).powi(2) * (1.0 + (3.0 * PI * w[1]).sin().powi(2)))
        .sum();
    let last = x[n - 1];
    let body = (3.0 * PI * x[0]).sin().powi(2)
        + inner
        + (last - 1.0).powi(2) * (1.0 + (2.0 * PI * last).sin().powi(2));
    0.1 * body
        + x.iter()
            .map(|&v| boundary_penalty(v, 5.0, 100.0, 4))
            .sum::<f64>()
}

fn foxholes(x: &[f64]) -> f64 {
    let a = &tables().foxholes_a;
    let s: f64 = (0..25)
        .map(|j| {
            let d = (x[0] - a[0][j]).powi(6) + (x[1] - a[1][j]).powi(6);
            1.0 / ((j + 1) as f64 + d)
        })
        .sum();
    1.0 / (1.0 / 500.0 + s)
}

fn kowalik(x: &[f64]) -> f64 {
    let t = tables();
    t.kowalik_a
        .iter()
        .zip(&t.kowalik_b)
        .map(|(a, b)| {
            let model = x[0] * (b * b + b * x[1]) / (b * b + b * x[2] + x[3]);
            (a - model).powi(2)
        })
        .sum()
}

fn hartman<const D: usize>(x: &[f64], a: &[[f64; D]; 4], c: &[f64; 4], p: &[[f64; D]; 4]) -> f64 {
    -(0..4)
        .map(|i| {
            let s: f64 = (0..D).map(|j| a[i][j] * (x[j] - p[i][j]).powi(2)).sum();
            c[i] * (-s).exp()
        })
        .sum::<f64>()
}

fn shekel(x: &[f64], m: usize) -> f64 {
    let t = tables();
    -(0..m)
        .map(|i| {
            let d: f64 = (0..4).map(|j| (x[j] - t.shekel_a[i][j]).powi(2)).sum();
            1.0 / (d + t.shekel_c[i])
        })
        .sum::<f64>()
}

impl fmt::Display for BenchmarkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.number())
    }
}

impl FromStr for BenchmarkId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.strip_prefix(['F', 'f'])
            .and_then(|k| k.parse().ok())
            .and_then(Self::from_number)
            .ok_or_else(|| Error::InvalidInput(format!("unknown benchmark `{s}`")))
    }
}

/// A benchmark function bound to its standard search space.
#[derive(Clone, Debug)]
pub struct Benchmark {
    id: BenchmarkId,
    space: SearchSpace,
    noisy: bool,
}

impl Benchmark {
    /// F7 draws its noise term from the optimizer's stream.
    pub fn new(id: BenchmarkId) -> Self {
        Self {
            id,
            space: id.search_space(),
            noisy: true,
        }
    }

    /// Variant with F7's noise term disabled.
    pub fn noise_free(id: BenchmarkId) -> Self {
        Self {
            noisy: false,
            ..Self::new(id)
        }
    }

    pub fn id(&self) -> BenchmarkId {
        self.id
    }
}

impl Objective for Benchmark {
    fn label(&self) -> String {
        self.id.to_string()
    }

    fn space(&self) -> &SearchSpace {
        &self.space
    }

    fn evaluate(&self, x: &[f64], rng: &mut dyn RandomSource) -> Result<f64> {
        let noise = if self.noisy { Some(rng) } else { None };
        Ok(self.id.evaluate(x, noise)?.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{RngStream, ScriptedSource};
    use proptest::prelude::*;

    use BenchmarkId::*;

    fn eval(id: BenchmarkId, x: &[f64]) -> f64 {
        id.evaluate(x, None).unwrap().value
    }

    fn rel_close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1e-300)
    }

    /// Known minimizers of the standard suite.
    fn known_optimizer(id: BenchmarkId) -> Vec<f64> {
        let n = id.dim();
        match id {
            F5 | F13 => vec![1.0; n],
            F8 => vec![420.9687; n],
            F12 => vec![-1.0; n],
            F14 => vec![-32.0, -32.0],
            F15 => vec![0.1928, 0.1908, 0.1231, 0.1358],
            F16 => vec![0.08984201, -0.7126564],
            F17 => vec![PI, 2.275],
            F18 => vec![0.0, -1.0],
            F19 => vec![0.114614, 0.555649, 0.852547],
            F20 => vec![0.20169, 0.150011, 0.476874, 0.275332, 0.311652, 0.6573],
            F21 => vec![4.00003715, 4.00013328, 4.00003715, 4.00013328],
            F22 => vec![4.00057291, 4.00068937, 3.99948971, 3.99960616],
            F23 => vec![4.00074653, 4.00059293, 3.9996634, 3.9995098],
            _ => vec![0.0; n],
        }
    }

    #[test]
    fn dimensions_and_best_values() {
        let dims: Vec<usize> = BenchmarkId::ALL.iter().map(|id| id.spec().dim).collect();
        let mut expected = vec![30; 13];
        expected.extend([2, 4, 2, 2, 2, 3, 6, 4, 4, 4]);
        assert_eq!(dims, expected);
        assert_eq!(F20.spec().best_value, -3.32);
        assert_eq!(F20.spec().dim, 6);
        assert_eq!(F14.spec().best_value, 0.998);
        assert_eq!(F14.spec().dim, 2);
        assert_eq!(F5.spec().best_value, 0.0);
        assert_eq!(F5.spec().dim, 30);
    }

    #[test]
    fn optimum_consistency() {
        for id in BenchmarkId::ALL {
            let x = known_optimizer(id);
            let f = eval(id, &x);
            let best = id.spec().best_value;
            if id == F8 {
                // The printed best value is the true minimum rounded to one
                // decimal; the true minimum is -418.9829 per coordinate.
                assert!((f - -12569.4866).abs() < 1e-3, "F8 gave {f}");
                assert!((f - best).abs() <= 0.05);
            } else {
                assert!(f <= best + 1e-4, "{id}: {f} > {best}");
            }
            assert!(id.search_space().contains(&x), "{id} optimizer outside bounds");
        }
    }

    #[test]
    fn published_values() {
        assert!((eval(F8, &[420.9687; 30]) - -12569.5).abs() < 0.05);
        assert!((eval(F16, &[0.08984201, -0.7126564]) - -1.0316).abs() < 5e-5);
        assert!((eval(F15, &known_optimizer(F15)) - 0.0003075).abs() < 1e-7);
    }

    #[test]
    fn analytic_zeros() {
        assert_eq!(eval(F1, &[0.0; 30]), 0.0);
        assert_eq!(eval(F11, &[0.0; 30]), 0.0);
        let small: Vec<f64> = (0..30).map(|i| 0.49 * ((i as f64) * 0.37).sin()).collect();
        assert_eq!(eval(F6, &small), 0.0);
        assert_eq!(eval(F10, &[0.0; 30]), 4.440892098500626e-16);
    }

    #[test]
    fn oracle_values_at_probe_points() {
        let probe: Vec<f64> = (1..=30).map(|i| 3.0 * (i as f64).sin()).collect();
        let expected = [
            (F1, 139.83329166633735),
            (F2, 264096.1630193013),
            (F3, 390.53051893334367),
            (F4, 2.9999706196521103),
            (F5, 99367.68717040932),
            (F6, 154.0),
            (F7, 14932.510488345857),
            (F8, -0.7406710249800708),
            (F9, 402.3146491087277),
            (F10, 8.598175298227073),
            (F11, 1.0343878667759312),
            (F12, 6.1276236118700345),
            (F13, 24.322679143626534),
        ];
        for (id, want) in expected {
            let got = eval(id, &probe);
            assert!(rel_close(got, want, 1e-10), "{id}: {got} vs {want}");
        }
        let wide: Vec<f64> = (1..=30).map(|i| 12.0 * (0.7 * i as f64).cos()).collect();
        assert!(rel_close(eval(F12, &wide), 6467.125037423422, 1e-10));
        assert!(rel_close(eval(F13, &wide), 1863993.8731012433, 1e-10));

        let fixed: [(BenchmarkId, &[f64], f64); 13] = [
            (F14, &[-32.0, -32.0], 0.9980038388186492),
            (F14, &[1.5, -7.25], 497.6538199342239),
            (F15, &[1.0, 2.0, 3.0, 4.0], 0.4950914598636357),
            (F15, &[-0.5, 0.25, 1.5, -2.0], 2.834766097606198),
            (F16, &[1.0, 1.0], 3.2333333333333334),
            (F17, &[0.0, 0.0], 55.602112642270264),
            (F18, &[0.5, 1.5], 38827.25),
            (F19, &[0.5, 0.5, 0.5], -0.6280220961750616),
            (F20, &[0.5; 6], -0.5016939844623348),
            (F21, &[1.0, 2.0, 3.0, 4.0], -0.1936924709041272),
            (F22, &[1.0, 2.0, 3.0, 4.0], -0.2447701148795464),
            (F23, &[1.0, 2.0, 3.0, 4.0], -0.3006598969554929),
            (F23, &[4.0; 4], -10.536283726219603),
        ];
        for (id, x, want) in fixed {
            let got = eval(id, x);
            assert!(rel_close(got, want, 1e-10), "{id} at {x:?}: {got} vs {want}");
        }
    }

    #[test]
    fn bounds_follow_standard_domains() {
        let s = F1.search_space();
        assert!(s.lower().iter().zip(s.upper()).all(|(l, u)| *u == -*l && *u == 100.0));
        assert!(F8.search_space().contains(&[420.9687; 30]));
        assert_eq!(F14.search_space().upper(), &[65.536, 65.536]);
    }

    #[test]
    fn f7_noise_comes_from_stream() {
        let x = [0.1; 30];
        let clean = eval(F7, &x);
        let mut scripted = ScriptedSource::new(&[0.25], &[]);
        let noisy = F7.evaluate(&x, Some(&mut scripted)).unwrap().value;
        assert_eq!(noisy, clean + 0.25);
        let mut rng = RngStream::new(3, 0);
        let f = Benchmark::noise_free(F7);
        assert_eq!(f.evaluate(&x, &mut rng).unwrap(), clean);
    }

    #[test]
    fn dimension_mismatch_and_out_of_bounds_flag() {
        assert_eq!(
            F1.evaluate(&[0.0; 3], None).unwrap_err(),
            Error::DimensionMismatch { expected: 30, got: 3 }
        );
        let mut x = vec![0.0; 30];
        assert!(!F1.evaluate(&x, None).unwrap().out_of_bounds);
        x[4] = 150.0;
        let e = F1.evaluate(&x, None).unwrap();
        assert!(e.out_of_bounds);
        assert_eq!(e.value, 22500.0);
    }

    #[test]
    fn boundary_penalty_is_zero_inside() {
        for v in [-10.0, -3.0, 0.0, 9.999, 10.0] {
            assert_eq!(boundary_penalty(v, 10.0, 100.0, 4), 0.0);
        }
        assert_eq!(boundary_penalty(12.0, 10.0, 100.0, 4), 1600.0);
        assert_eq!(boundary_penalty(-12.0, 10.0, 100.0, 4), 1600.0);
    }

    #[test]
    fn names_round_trip() {
        for id in BenchmarkId::ALL {
            assert_eq!(id.to_string().parse::<BenchmarkId>().unwrap(), id);
        }
        assert!("F24".parse::<BenchmarkId>().is_err());
        assert!("F0".parse::<BenchmarkId>().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn even_functions(x in proptest::collection::vec(-5.0f64..5.0, 30)) {
            let neg: Vec<f64> = x.iter().map(|v| -v).collect();
            for id in [F1, F9, F10, F11] {
                prop_assert_eq!(eval(id, &x), eval(id, &neg));
            }
        }

        #[test]
        fn sphere_matches_per_coordinate_sum(x in proptest::collection::vec(-100.0f64..100.0, 30)) {
            let oracle = x.iter().fold(0.0, |acc, v| acc + v * v);
            prop_assert_eq!(eval(F1, &x), oracle);
        }
    }
}
