//! Summary statistics and nonparametric comparisons over repeated runs.

use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Significance level used for win/tie/loss decisions.
pub const DEFAULT_ALPHA: f64 = 0.05;

/// Largest effective sample size for which the exact null distribution is used.
pub const EXACT_LIMIT: usize = 25;

/// Mean and sample standard deviation (divisor `n - 1`).
pub fn ave_std(samples: &[f64]) -> Result<(f64, f64)> {
    if samples.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "mean/std needs at least 2 samples, got {}",
            samples.len()
        )));
    }
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let ss: f64 = samples.iter().map(|v| (v - mean).powi(2)).sum();
    Ok((mean, (ss / (n - 1.0)).sqrt()))
}

/// 1-based ranks with ties sharing the average of their positions.
pub fn average_ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = rank;
        }
        i = j + 1;
    }
    ranks
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PMethod {
    Exact,
    Normal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WilcoxonTest {
    /// Rank sum of positive differences `a - b`.
    pub w_plus: f64,
    /// Rank sum of negative differences.
    pub w_minus: f64,
    pub p_value: f64,
    /// Pairs left after dropping zero differences.
    pub n_effective: usize,
    pub zeros_dropped: usize,
    pub method: PMethod,
}

#[derive(Clone, Debug, PartialEq)]
pub enum WilcoxonOutcome {
    Test(WilcoxonTest),
    /// Every paired difference is zero; there is nothing to test.
    Degenerate { n: usize },
}

impl WilcoxonOutcome {
    pub fn p_value(&self) -> Option<f64> {
        match self {
            Self::Test(t) => Some(t.p_value),
            Self::Degenerate { .. } => None,
        }
    }
}

/// Two-sided Wilcoxon signed-rank test on paired samples.
///
/// Zero differences are dropped and tied magnitudes share averaged ranks.
/// For at most [`EXACT_LIMIT`] remaining pairs the p-value comes from the
/// exact permutation distribution of `W+` under those (possibly tied) ranks;
/// beyond that a normal approximation with tie-corrected variance is used.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64]) -> Result<WilcoxonOutcome> {
    if a.len() != b.len() {
        return Err(Error::InvalidShape(format!(
            "paired samples differ in length: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).filter(|d| *d != 0.0).collect();
    let n = diffs.len();
    let zeros_dropped = a.len() - n;
    if n == 0 {
        return Ok(WilcoxonOutcome::Degenerate { n: a.len() });
    }
    if n < 5 {
        return Err(Error::InsufficientData(format!(
            "signed-rank test needs at least 5 nonzero differences, got {n}"
        )));
    }
    let magnitudes: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = average_ranks(&magnitudes);
    let w_plus: f64 = diffs.iter().zip(&ranks).filter(|(d, _)| **d > 0.0).fold(0.0, |s, (_, r)| s + r);
    let total = (n * (n + 1)) as f64 / 2.0;
    let w_minus = total - w_plus;
    let (p_value, method) = if n <= EXACT_LIMIT {
        (exact_p(&ranks, w_plus), PMethod::Exact)
    } else {
        (normal_p(&magnitudes, w_plus, n), PMethod::Normal)
    };
    Ok(WilcoxonOutcome::Test(WilcoxonTest {
        w_plus,
        w_minus,
        p_value,
        n_effective: n,
        zeros_dropped,
        method,
    }))
}

/// Counts sign assignments by their doubled rank sum (ranks are multiples of
/// one half, so doubling makes every sum an integer).
fn exact_p(ranks: &[f64], w_plus: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let max: usize = doubled.iter().sum();
    let mut counts = vec![0.0f64; max + 1];
    counts[0] = 1.0;
    let mut reach = 0;
    for &r in &doubled {
        for s in (0..=reach).rev() {
            let c = counts[s];
            if c != 0.0 {
                counts[s + r] += c;
            }
        }
        reach += r;
    }
    let total = 2f64.powi(ranks.len() as i32);
    let w = (2.0 * w_plus).round() as usize;
    let lower: f64 = counts[..=w].iter().sum();
    let upper: f64 = counts[w..].iter().sum();
    (2.0 * lower.min(upper) / total).min(1.0)
}

fn normal_p(magnitudes: &[f64], w_plus: f64, n: usize) -> f64 {
    let nf = n as f64;
    let mean = nf * (nf + 1.0) / 4.0;
    let mut sorted = magnitudes.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let j = sorted[i..].iter().take_while(|v| **v == sorted[i]).count();
        let t = j as f64;
        tie_term += t * t * t - t;
        i += j;
    }
    let var = nf * (nf + 1.0) * (2.0 * nf + 1.0) / 24.0 - tie_term / 48.0;
    if var <= 0.0 {
        return 1.0;
    }
    let z = (w_plus - mean) / var.sqrt();
    erfc(z.abs() / std::f64::consts::SQRT_2).min(1.0)
}

/// Final best fitness indexed `[algorithm][problem][repetition]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RunMatrix {
    algorithms: Vec<String>,
    problems: Vec<String>,
    values: Vec<Vec<Vec<f64>>>,
}

impl RunMatrix {
    pub fn new(
        algorithms: Vec<String>,
        problems: Vec<String>,
        values: Vec<Vec<Vec<f64>>>,
    ) -> Result<Self> {
        if values.len() != algorithms.len() {
            return Err(Error::InvalidShape(format!(
                "{} algorithm labels for {} value blocks",
                algorithms.len(),
                values.len()
            )));
        }
        let reps = values.first().and_then(|p| p.first()).map_or(0, Vec::len);
        if reps < 2 {
            return Err(Error::InsufficientData(format!(
                "need at least 2 repetitions, got {reps}"
            )));
        }
        for (a, per_problem) in values.iter().enumerate() {
            if per_problem.len() != problems.len() {
                return Err(Error::InvalidShape(format!(
                    "algorithm `{}` has {} problems, expected {}",
                    algorithms[a],
                    per_problem.len(),
                    problems.len()
                )));
            }
            for (p, runs) in per_problem.iter().enumerate() {
                if runs.len() != reps {
                    return Err(Error::InvalidShape(format!(
                        "`{}` on `{}` has {} repetitions, expected {reps}",
                        algorithms[a],
                        problems[p],
                        runs.len()
                    )));
                }
            }
        }
        Ok(Self {
            algorithms,
            problems,
            values,
        })
    }

    pub fn algorithms(&self) -> &[String] {
        &self.algorithms
    }

    pub fn problems(&self) -> &[String] {
        &self.problems
    }

    pub fn repetitions(&self) -> usize {
        self.values[0][0].len()
    }

    pub fn runs(&self, algorithm: usize, problem: usize) -> &[f64] {
        &self.values[algorithm][problem]
    }

    pub fn algorithm_index(&self, label: &str) -> Option<usize> {
        self.algorithms.iter().position(|a| a == label)
    }
}

/// Mean rank of each algorithm on one problem, ranking within every
/// repetition. `values` is indexed `[algorithm][repetition]`.
pub fn friedman_ranks(values: &[Vec<f64>]) -> Result<Vec<f64>> {
    let algos = values.len();
    let reps = values.first().map_or(0, Vec::len);
    if algos < 2 || reps < 2 {
        return Err(Error::InsufficientData(format!(
            "Friedman ranking needs >= 2 algorithms and >= 2 repetitions, got {algos} x {reps}"
        )));
    }
    if values.iter().any(|v| v.len() != reps) {
        return Err(Error::InvalidShape("ragged Friedman input".into()));
    }
    let mut sums = vec![0.0; algos];
    for r in 0..reps {
        let column: Vec<f64> = values.iter().map(|v| v[r]).collect();
        for (s, rank) in sums.iter_mut().zip(average_ranks(&column)) {
            *s += rank;
        }
    }
    Ok(sums.into_iter().map(|s| s / reps as f64).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct FriedmanReport {
    /// `[problem][algorithm]` mean ranks.
    pub per_problem: Vec<Vec<f64>>,
    /// Average Friedman value per algorithm.
    pub afv: Vec<f64>,
    /// Rank of each algorithm by AFV (ties averaged).
    pub rank: Vec<f64>,
}

pub fn friedman(matrix: &RunMatrix) -> Result<FriedmanReport> {
    let algos = matrix.algorithms().len();
    let per_problem = (0..matrix.problems().len())
        .map(|p| {
            let block: Vec<Vec<f64>> = (0..algos).map(|a| matrix.runs(a, p).to_vec()).collect();
            friedman_ranks(&block)
        })
        .collect::<Result<Vec<_>>>()?;
    let np = per_problem.len() as f64;
    let afv: Vec<f64> = (0..algos)
        .map(|a| per_problem.iter().map(|r| r[a]).sum::<f64>() / np)
        .collect();
    let rank = average_ranks(&afv);
    Ok(FriedmanReport {
        per_problem,
        afv,
        rank,
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WinTieLoss {
    pub wins: usize,
    pub ties: usize,
    pub losses: usize,
}

impl WinTieLoss {
    pub fn total(&self) -> usize {
        self.wins + self.ties + self.losses
    }

    /// The same tally seen from the other side.
    pub fn mirrored(&self) -> Self {
        Self {
            wins: self.losses,
            ties: self.ties,
            losses: self.wins,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Win,
    Tie,
    Loss,
}

/// Outcome of `reference` against `other` on one problem: a tie unless the
/// signed-rank test is significant at `alpha`, otherwise decided by means.
/// Degenerate or too-small samples count as ties.
pub fn compare(reference: &[f64], other: &[f64], alpha: f64) -> Result<Verdict> {
    let p = match wilcoxon_signed_rank(reference, other) {
        Ok(outcome) => outcome.p_value(),
        Err(Error::InsufficientData(_)) => None,
        Err(e) => return Err(e),
    };
    match p {
        Some(p) if p < alpha => {
            let (mr, _) = ave_std(reference)?;
            let (mo, _) = ave_std(other)?;
            Ok(if mr < mo {
                Verdict::Win
            } else if mr > mo {
                Verdict::Loss
            } else {
                Verdict::Tie
            })
        }
        _ => Ok(Verdict::Tie),
    }
}

/// Tally of `reference` against each other algorithm over all problems, from
/// the reference's perspective. Returned in matrix order, reference excluded.
pub fn win_tie_loss(
    reference: &str,
    matrix: &RunMatrix,
    alpha: f64,
) -> Result<Vec<(String, WinTieLoss)>> {
    let r = matrix
        .algorithm_index(reference)
        .ok_or_else(|| Error::InvalidInput(format!("reference `{reference}` is not in the matrix")))?;
    let mut out = Vec::new();
    for (a, label) in matrix.algorithms().iter().enumerate() {
        if a == r {
            continue;
        }
        let mut tally = WinTieLoss::default();
        for p in 0..matrix.problems().len() {
            match compare(matrix.runs(r, p), matrix.runs(a, p), alpha)? {
                Verdict::Win => tally.wins += 1,
                Verdict::Tie => tally.ties += 1,
                Verdict::Loss => tally.losses += 1,
            }
        }
        out.push((label.clone(), tally));
    }
    Ok(out)
}

/// `(N - l) / N * 100`.
pub fn overall_effectiveness(wtl: WinTieLoss, n: usize) -> Result<f64> {
    if n == 0 || wtl.total() != n {
        return Err(Error::InvalidInput(format!(
            "w + t + l = {} does not match N = {n}",
            wtl.total()
        )));
    }
    Ok((n - wtl.losses) as f64 / n as f64 * 100.0)
}
