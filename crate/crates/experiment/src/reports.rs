//! Summary tables derived from a complete set of run records.
//!
//! Every CSV has a fixed header (see the `*_HEADER` constants) and rows in
//! canonical config order. Numbers use the shortest representation that
//! round-trips to the same `f64`.

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use geossa_core::ssa::Preset;
use geossa_core::stats::{
    self, ave_std, overall_effectiveness, wilcoxon_signed_rank, FriedmanReport, RunMatrix, Verdict,
    WilcoxonOutcome, WinTieLoss, DEFAULT_ALPHA,
};
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;
use crate::grid::RunRecord;

pub const RUNS_FILE: &str = "runs.csv";
pub const SUMMARY_FILE: &str = "summary_ave_std.csv";
pub const WILCOXON_FILE: &str = "wilcoxon.csv";
pub const FRIEDMAN_FILE: &str = "friedman.csv";
pub const WTL_OE_FILE: &str = "wtl_oe.csv";

pub const RUNS_HEADER: [&str; 7] =
    ["algorithm", "problem", "repetition", "seed", "stream_id", "best_fitness", "evaluations"];
pub const SUMMARY_HEADER: [&str; 4] = ["problem", "algorithm", "ave", "std"];
/// `outcome` is from the reference's side: `+` win, `=` tie, `-` loss.
pub const WILCOXON_HEADER: [&str; 10] = [
    "problem",
    "algorithm",
    "reference",
    "w_plus",
    "w_minus",
    "p_value",
    "n_effective",
    "zeros_dropped",
    "method",
    "outcome",
];
/// Followed by one column per algorithm.
pub const FRIEDMAN_FIRST_COLUMN: &str = "problem";
/// Counts are from each listed algorithm's side against the reference, whose
/// own row holds `-`.
pub const WTL_OE_HEADER: [&str; 5] = ["algorithm", "wins", "ties", "losses", "oe"];
pub const CONVERGENCE_HEADER: [&str; 4] = ["t", "best_fitness", "diversity", "exploration_pct"];

#[derive(Debug, thiserror::Error)]
#[error("i/o error at {}: {source}", path.display())]
pub struct IoError {
    pub path: PathBuf,
    #[source]
    pub source: io::Error,
}

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("result matrix is incomplete; missing {} cell(s): {}", missing.len(), missing.join(", "))]
    Incomplete { missing: Vec<String> },
    #[error(transparent)]
    Stats(#[from] geossa_core::Error),
    #[error(transparent)]
    Io(#[from] IoError),
}

pub fn fmt_num(v: f64) -> String {
    format!("{v:?}")
}

/// Writes through a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), IoError> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    let wrap = |source| IoError {
        path: path.to_path_buf(),
        source,
    };
    fs::write(&tmp, bytes).map_err(wrap)?;
    fs::rename(&tmp, path).map_err(wrap)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Debug)]
pub struct ReportSummary {
    /// File name to sha256 of each summary CSV.
    pub checksums: BTreeMap<String, String>,
    /// `None` with fewer than two repetitions.
    pub matrix: Option<RunMatrix>,
    pub reference: Preset,
    /// Per competitor, tallied from the competitor's side.
    pub wtl: Vec<(String, WinTieLoss)>,
    pub friedman: Option<FriedmanReport>,
}

/// Final fitness tensor `[algorithm][problem][repetition]` and the records
/// behind it in canonical order.
fn assemble<'a>(
    cfg: &ExperimentConfig,
    records: &'a [RunRecord],
) -> Result<(Vec<Vec<Vec<f64>>>, Vec<&'a RunRecord>), ReportError> {
    let index: HashMap<(&str, &str, usize), &RunRecord> = records
        .iter()
        .map(|r| ((r.algorithm.as_str(), r.problem.as_str(), r.repetition), r))
        .collect();
    let mut values = Vec::new();
    let mut ordered = Vec::new();
    let mut missing = Vec::new();
    for algorithm in &cfg.algorithms {
        let mut per_problem = Vec::new();
        for problem in &cfg.problems {
            let label = problem.label();
            let mut runs = Vec::new();
            for rep in 0..cfg.repetitions {
                match index.get(&(algorithm.name(), label.as_str(), rep)) {
                    Some(r) => {
                        runs.push(r.best_fitness);
                        ordered.push(*r);
                    }
                    None => missing.push(format!("{}/{}/{}", algorithm.name(), label, rep)),
                }
            }
            per_problem.push(runs);
        }
        values.push(per_problem);
    }
    if !missing.is_empty() {
        return Err(ReportError::Incomplete { missing });
    }
    Ok((values, ordered))
}

fn csv_bytes<I, R>(header: &[&str], rows: I) -> Vec<u8>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory csv");
    for row in rows {
        w.write_record(row.into_iter().collect::<Vec<_>>()).expect("in-memory csv");
    }
    w.into_inner().expect("in-memory csv")
}

/// Writes `runs.csv`, `summary_ave_std.csv`, `wilcoxon.csv`, `friedman.csv`
/// and `wtl_oe.csv` into `dir`. Refuses when any cell of the grid is missing.
pub fn emit_reports(dir: &Path, cfg: &ExperimentConfig, records: &[RunRecord]) -> Result<ReportSummary, ReportError> {
    let (values, ordered) = assemble(cfg, records)?;
    let algorithms: Vec<String> = cfg.algorithms.iter().map(|a| a.name().to_string()).collect();
    let problems: Vec<String> = cfg.problems.iter().map(|p| p.label()).collect();
    let reference = cfg.reference;
    let r = cfg
        .algorithms
        .iter()
        .position(|a| *a == reference)
        .expect("reference validated against algorithms");
    let enough = cfg.repetitions >= 2;
    let matrix = enough
        .then(|| RunMatrix::new(algorithms.clone(), problems.clone(), values.clone()))
        .transpose()?;

    let mut files: Vec<(&str, Vec<u8>)> = Vec::new();

    files.push((
        RUNS_FILE,
        csv_bytes(
            &RUNS_HEADER,
            ordered.iter().map(|rec| {
                [
                    rec.algorithm.clone(),
                    rec.problem.clone(),
                    rec.repetition.to_string(),
                    rec.seed.to_string(),
                    rec.stream_id.to_string(),
                    fmt_num(rec.best_fitness),
                    rec.evaluations.to_string(),
                ]
            }),
        ),
    ));

    let mut summary = Vec::new();
    for (p, problem) in problems.iter().enumerate() {
        for (a, algorithm) in algorithms.iter().enumerate() {
            let runs = &values[a][p];
            let (ave, std) = match ave_std(runs) {
                Ok((m, s)) => (fmt_num(m), fmt_num(s)),
                Err(_) => (fmt_num(runs[0]), String::new()),
            };
            summary.push([problem.clone(), algorithm.clone(), ave, std]);
        }
    }
    files.push((SUMMARY_FILE, csv_bytes(&SUMMARY_HEADER, summary)));

    let mut wilcoxon = Vec::new();
    let mut wtl = vec![WinTieLoss::default(); algorithms.len()];
    for (p, problem) in problems.iter().enumerate() {
        for (a, algorithm) in algorithms.iter().enumerate() {
            if a == r {
                continue;
            }
            let (ref_runs, other) = (&values[r][p], &values[a][p]);
            let empty = String::new;
            let (w_plus, w_minus, p_value, n_eff, zeros, method) = match wilcoxon_signed_rank(ref_runs, other) {
                Ok(WilcoxonOutcome::Test(t)) => (
                    fmt_num(t.w_plus),
                    fmt_num(t.w_minus),
                    fmt_num(t.p_value),
                    t.n_effective,
                    t.zeros_dropped,
                    match t.method {
                        stats::PMethod::Exact => "exact",
                        stats::PMethod::Normal => "normal",
                    },
                ),
                Ok(WilcoxonOutcome::Degenerate { n }) => (empty(), empty(), empty(), 0, n, "degenerate"),
                Err(geossa_core::Error::InsufficientData(_)) => {
                    let nonzero = ref_runs.iter().zip(other).filter(|(x, y)| x != y).count();
                    (empty(), empty(), empty(), nonzero, ref_runs.len() - nonzero, "insufficient")
                }
                Err(e) => return Err(e.into()),
            };
            let verdict = if enough {
                stats::compare(ref_runs, other, DEFAULT_ALPHA)?
            } else {
                Verdict::Tie
            };
            let tally = &mut wtl[a];
            match verdict {
                Verdict::Win => tally.losses += 1,
                Verdict::Tie => tally.ties += 1,
                Verdict::Loss => tally.wins += 1,
            }
            let outcome = match verdict {
                Verdict::Win => "+",
                Verdict::Tie => "=",
                Verdict::Loss => "-",
            };
            wilcoxon.push([
                problem.clone(),
                algorithm.clone(),
                reference.name().to_string(),
                w_plus,
                w_minus,
                p_value,
                n_eff.to_string(),
                zeros.to_string(),
                method.to_string(),
                outcome.to_string(),
            ]);
        }
    }
    files.push((WILCOXON_FILE, csv_bytes(&WILCOXON_HEADER, wilcoxon)));

    let friedman = match &matrix {
        Some(m) if algorithms.len() >= 2 => Some(stats::friedman(m)?),
        _ => None,
    };
    let mut friedman_header = vec![FRIEDMAN_FIRST_COLUMN];
    friedman_header.extend(algorithms.iter().map(String::as_str));
    let friedman_rows: Vec<Vec<String>> = match &friedman {
        None => Vec::new(),
        Some(f) => {
            let row = |label: &str, cells: &[f64]| {
                std::iter::once(label.to_string()).chain(cells.iter().map(|v| fmt_num(*v))).collect()
            };
            let mut rows: Vec<Vec<String>> =
                problems.iter().zip(&f.per_problem).map(|(p, ranks)| row(p, ranks)).collect();
            rows.push(row("AFV", &f.afv));
            rows.push(row("Rank", &f.rank));
            rows
        }
    };
    files.push((FRIEDMAN_FILE, csv_bytes(&friedman_header, friedman_rows)));

    let n = problems.len();
    let mut wtl_rows = Vec::new();
    let mut competitor_wtl = Vec::new();
    for (a, algorithm) in algorithms.iter().enumerate() {
        if a == r {
            wtl_rows.push([algorithm.clone(), "-".into(), "-".into(), "-".into(), "-".into()]);
            continue;
        }
        let t = wtl[a];
        wtl_rows.push([
            algorithm.clone(),
            t.wins.to_string(),
            t.ties.to_string(),
            t.losses.to_string(),
            fmt_num(overall_effectiveness(t, n)?),
        ]);
        competitor_wtl.push((algorithm.clone(), t));
    }
    files.push((WTL_OE_FILE, csv_bytes(&WTL_OE_HEADER, wtl_rows)));

    fs::create_dir_all(dir).map_err(|source| IoError {
        path: dir.to_path_buf(),
        source,
    })?;
    let mut checksums = BTreeMap::new();
    for (name, bytes) in files {
        write_atomic(&dir.join(name), &bytes)?;
        checksums.insert(name.to_string(), sha256_hex(&bytes));
    }
    Ok(ReportSummary {
        checksums,
        matrix,
        reference,
        wtl: competitor_wtl,
        friedman,
    })
}
