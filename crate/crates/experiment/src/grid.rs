//! Grid execution: one optimizer run per (algorithm, problem, repetition),
//! dispatched to a bounded worker pool, with a JSON record per finished run.

use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use geossa_core::rng::derive_stream_id;
use geossa_core::ssa::{run_optimizer_with, Preset, RunOptions, RunResult, SsaParams};
use geossa_core::{Objective, RngStream};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, TelemetryLevel};
use crate::problems::ProblemRef;
use crate::reports::{self, fmt_num, write_atomic, IoError, ReportError, CONVERGENCE_HEADER};

pub const RECORDS_DIR: &str = "records";
pub const CONVERGENCE_DIR: &str = "convergence";
pub const HISTORY_DIR: &str = "history";
pub const METADATA_FILE: &str = "metadata.json";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunRecord {
    pub algorithm: String,
    pub problem: String,
    pub repetition: usize,
    pub seed: u64,
    pub stream_id: u64,
    #[serde(with = "lossless_f64")]
    pub best_fitness: f64,
    pub best_position: Vec<f64>,
    pub evaluations: usize,
    pub guard_events: usize,
    /// Seconds; kept out of every CSV so outputs stay reproducible.
    pub wall_time: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunFailure {
    pub algorithm: String,
    pub problem: String,
    pub repetition: usize,
    pub message: String,
}

/// One grid cell before execution.
#[derive(Clone, Debug)]
pub struct RunSpec {
    pub algorithm: Preset,
    pub problem: ProblemRef,
    pub problem_index: usize,
    pub repetition: usize,
    pub seed: u64,
    pub stream_id: u64,
}

impl RunSpec {
    pub fn file_stem(&self) -> String {
        run_file_stem(self.algorithm.name(), &self.problem.file_stem(), self.repetition)
    }
}

pub fn run_file_stem(algorithm: &str, problem_stem: &str, repetition: usize) -> String {
    format!("{algorithm}_{problem_stem}_{repetition}")
}

/// RNG stream of a run: keyed by `base_seed`, sub-stream from the run label.
pub fn run_stream(base_seed: u64, algorithm: Preset, problem: &ProblemRef, repetition: usize) -> (u64, u64) {
    (
        base_seed,
        derive_stream_id(&format!("{}|{}|{repetition}", algorithm.name(), problem.label())),
    )
}

/// Cells in canonical order: algorithm, then problem, then repetition.
pub fn plan(cfg: &ExperimentConfig) -> Vec<RunSpec> {
    let mut out = Vec::new();
    for &algorithm in &cfg.algorithms {
        for (problem_index, problem) in cfg.problems.iter().enumerate() {
            for repetition in 0..cfg.repetitions {
                let (seed, stream_id) = run_stream(cfg.base_seed, algorithm, problem, repetition);
                out.push(RunSpec {
                    algorithm,
                    problem: problem.clone(),
                    problem_index,
                    repetition,
                    seed,
                    stream_id,
                });
            }
        }
    }
    out
}

#[derive(Debug, thiserror::Error)]
pub enum GridError {
    #[error("cannot set up problem `{problem}`: {source}")]
    Problem {
        problem: String,
        source: geossa_core::Error,
    },
    #[error(transparent)]
    Io(#[from] IoError),
    #[error("cannot build worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Report(#[from] ReportError),
}

pub(crate) fn io_err(path: &Path) -> impl FnOnce(io::Error) -> GridError + '_ {
    move |source| {
        GridError::Io(IoError {
            path: path.to_path_buf(),
            source,
        })
    }
}

fn invalid_data(path: PathBuf, e: serde_json::Error) -> GridError {
    GridError::Io(IoError {
        path,
        source: io::Error::new(io::ErrorKind::InvalidData, e),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct StreamAudit {
    pub runs: usize,
    pub distinct_streams: usize,
    pub all_distinct: bool,
}

pub fn audit_streams(records: &[RunRecord]) -> StreamAudit {
    let distinct: BTreeSet<(u64, u64)> = records.iter().map(|r| (r.seed, r.stream_id)).collect();
    StreamAudit {
        runs: records.len(),
        distinct_streams: distinct.len(),
        all_distinct: distinct.len() == records.len(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunTiming {
    pub algorithm: String,
    pub problem: String,
    pub repetition: usize,
    pub wall_time: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Metadata {
    pub schema_version: u32,
    pub code_version: String,
    /// Resolved configuration rendered as TOML; `report` re-reads it.
    pub config: String,
    pub reference: String,
    pub stream_audit: StreamAudit,
    pub csv_sha256: std::collections::BTreeMap<String, String>,
    pub failures: Vec<RunFailure>,
    pub resumed_runs: usize,
    pub wall_time_total: f64,
    pub run_wall_times: Vec<RunTiming>,
}

impl Metadata {
    pub fn load(dir: &Path) -> Result<Self, GridError> {
        let path = dir.join(METADATA_FILE);
        let text = fs::read_to_string(&path).map_err(io_err(&path))?;
        serde_json::from_str(&text).map_err(|e| invalid_data(path, e))
    }

    pub fn store(&self, dir: &Path) -> Result<(), GridError> {
        let mut text = serde_json::to_string_pretty(self).expect("metadata serializes");
        text.push('\n');
        Ok(write_atomic(&dir.join(METADATA_FILE), text.as_bytes())?)
    }
}

#[derive(Debug)]
pub struct GridOutcome {
    /// Completed records in canonical order.
    pub records: Vec<RunRecord>,
    pub failures: Vec<RunFailure>,
    pub resumed: usize,
    /// Present when every cell completed and reports were written.
    pub reports: Option<reports::ReportSummary>,
    pub metadata: Metadata,
}

impl GridOutcome {
    pub fn is_complete(&self) -> bool {
        self.failures.is_empty()
    }
}

enum CellResult {
    Done(RunRecord),
    Resumed(RunRecord),
    Failed(RunFailure),
}

/// Executes every cell of `cfg`, writes per-run files, then (if nothing
/// failed) the summary reports and `metadata.json`.
pub fn run_grid(cfg: &ExperimentConfig, resume: bool) -> Result<GridOutcome, GridError> {
    let started = Instant::now();
    let dir = cfg.output_dir.clone();
    for sub in [Some(RECORDS_DIR), (cfg.telemetry >= TelemetryLevel::Curve).then_some(CONVERGENCE_DIR), (cfg.telemetry == TelemetryLevel::Full).then_some(HISTORY_DIR)]
        .into_iter()
        .flatten()
    {
        let path = dir.join(sub);
        fs::create_dir_all(&path).map_err(io_err(&path))?;
    }

    let objectives: Vec<Arc<dyn Objective>> = cfg
        .problems
        .iter()
        .map(|p| {
            p.build().map_err(|source| GridError::Problem {
                problem: p.label(),
                source,
            })
        })
        .collect::<Result<_, _>>()?;

    let specs = plan(cfg);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| GridError::Pool(e.to_string()))?;
    let results: Vec<CellResult> = pool.install(|| {
        specs
            .par_iter()
            .map(|spec| execute_cell(cfg, spec, objectives[spec.problem_index].as_ref(), resume))
            .collect()
    });

    let mut records = Vec::new();
    let mut failures = Vec::new();
    let mut resumed = 0;
    for result in results {
        match result {
            CellResult::Done(r) => records.push(r),
            CellResult::Resumed(r) => {
                resumed += 1;
                records.push(r);
            }
            CellResult::Failed(f) => failures.push(f),
        }
    }

    let reports = if failures.is_empty() {
        Some(reports::emit_reports(&dir, cfg, &records)?)
    } else {
        None
    };

    let metadata = Metadata {
        schema_version: SCHEMA_VERSION,
        code_version: env!("CARGO_PKG_VERSION").to_string(),
        config: cfg.to_toml(),
        reference: cfg.reference.name().to_string(),
        stream_audit: audit_streams(&records),
        csv_sha256: reports.as_ref().map(|r| r.checksums.clone()).unwrap_or_default(),
        failures: failures.clone(),
        resumed_runs: resumed,
        wall_time_total: started.elapsed().as_secs_f64(),
        run_wall_times: records
            .iter()
            .map(|r| RunTiming {
                algorithm: r.algorithm.clone(),
                problem: r.problem.clone(),
                repetition: r.repetition,
                wall_time: r.wall_time,
            })
            .collect(),
    };
    metadata.store(&dir)?;

    Ok(GridOutcome {
        records,
        failures,
        resumed,
        reports,
        metadata,
    })
}

fn record_path(dir: &Path, spec: &RunSpec) -> PathBuf {
    dir.join(RECORDS_DIR).join(format!("{}.json", spec.file_stem()))
}

fn load_matching(path: &Path, spec: &RunSpec) -> Option<RunRecord> {
    let record: RunRecord = serde_json::from_str(&fs::read_to_string(path).ok()?).ok()?;
    (record.algorithm == spec.algorithm.name()
        && record.problem == spec.problem.label()
        && record.repetition == spec.repetition
        && record.seed == spec.seed
        && record.stream_id == spec.stream_id)
        .then_some(record)
}

fn execute_cell(cfg: &ExperimentConfig, spec: &RunSpec, objective: &dyn Objective, resume: bool) -> CellResult {
    let path = record_path(&cfg.output_dir, spec);
    if resume {
        if let Some(record) = load_matching(&path, spec) {
            return CellResult::Resumed(record);
        }
    }
    let fail = |message: String| {
        CellResult::Failed(RunFailure {
            algorithm: spec.algorithm.name().to_string(),
            problem: spec.problem.label(),
            repetition: spec.repetition,
            message,
        })
    };

    let params = SsaParams {
        n: cfg.n,
        max_iter: cfg.iterations,
        seed: spec.seed,
        ..SsaParams::default()
    };
    let options = RunOptions {
        record_history: cfg.telemetry == TelemetryLevel::Full,
    };
    let mut rng = RngStream::new(spec.seed, spec.stream_id);
    let started = Instant::now();
    let result = match run_optimizer_with(objective, &params, spec.algorithm.toggles(), &mut rng, options) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let wall_time = started.elapsed().as_secs_f64();

    if let Err(e) = write_run_telemetry(cfg, spec, &result) {
        return fail(e.to_string());
    }
    let record = RunRecord {
        algorithm: spec.algorithm.name().to_string(),
        problem: spec.problem.label(),
        repetition: spec.repetition,
        seed: spec.seed,
        stream_id: spec.stream_id,
        best_fitness: result.best_fitness,
        best_position: result.best_position,
        evaluations: result.evaluations,
        guard_events: result.guard_events,
        wall_time,
    };
    let json = serde_json::to_string_pretty(&record).expect("record serializes");
    match write_atomic(&path, json.as_bytes()) {
        Ok(()) => CellResult::Done(record),
        Err(e) => fail(e.to_string()),
    }
}

fn write_run_telemetry(cfg: &ExperimentConfig, spec: &RunSpec, result: &RunResult) -> Result<(), GridError> {
    if cfg.telemetry == TelemetryLevel::None {
        return Ok(());
    }
    let with_diversity = cfg.telemetry >= TelemetryLevel::CurveAndDiversity;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CONVERGENCE_HEADER).expect("in-memory csv");
    for step in &result.curve {
        let (div, expl) = if with_diversity {
            (fmt_num(step.diversity), fmt_num(step.exploration_pct))
        } else {
            (String::new(), String::new())
        };
        w.write_record([step.t.to_string(), fmt_num(step.best_fitness), div, expl])
            .expect("in-memory csv");
    }
    let bytes = w.into_inner().expect("in-memory csv");
    let path = cfg.output_dir.join(CONVERGENCE_DIR).join(format!("{}.csv", spec.file_stem()));
    write_atomic(&path, &bytes)?;

    if cfg.telemetry == TelemetryLevel::Full {
        let dim = result.best_position.len();
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["t".to_string(), "member".to_string()];
        header.extend((1..=dim).map(|j| format!("x{j}")));
        w.write_record(&header).expect("in-memory csv");
        let snapshots = result
            .initial_snapshot
            .iter()
            .map(|s| (0, s))
            .chain(result.curve.iter().filter_map(|c| c.snapshot.as_ref().map(|s| (c.t, s))));
        for (t, snapshot) in snapshots {
            for (member, x) in snapshot.iter().enumerate() {
                let mut row = vec![t.to_string(), member.to_string()];
                row.extend(x.iter().map(|v| fmt_num(*v)));
                w.write_record(&row).expect("in-memory csv");
            }
        }
        let bytes = w.into_inner().expect("in-memory csv");
        let path = cfg.output_dir.join(HISTORY_DIR).join(format!("{}.csv", spec.file_stem()));
        write_atomic(&path, &bytes)?;
    }
    Ok(())
}

/// Loads every record under `dir/records`.
pub fn load_records(dir: &Path) -> Result<Vec<RunRecord>, GridError> {
    let path = dir.join(RECORDS_DIR);
    let mut records = Vec::new();
    let mut entries: Vec<_> = fs::read_dir(&path)
        .map_err(io_err(&path))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    entries.sort();
    for file in entries {
        let text = fs::read_to_string(&file).map_err(io_err(&file))?;
        let record = serde_json::from_str(&text).map_err(|e| invalid_data(file.clone(), e))?;
        records.push(record);
    }
    Ok(records)
}

/// Non-finite values are stored as strings because JSON has no literal for them.
mod lossless_f64 {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_str(&v.to_string())
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    #[test]
    fn plan_counts_and_distinct_streams() {
        let cfg = parse_config(
            "algorithms = [\"SSA\", \"GeoSSA\"]\nproblems = [\"F1\", \"CB\", \"uav\"]\nrepetitions = 5\n",
        )
        .unwrap();
        let specs = plan(&cfg);
        assert_eq!(specs.len(), 30);
        let streams: BTreeSet<u64> = specs.iter().map(|s| s.stream_id).collect();
        assert_eq!(streams.len(), 30);
        assert_eq!(specs[0].file_stem(), "SSA_F1_0");
        assert_eq!(specs[29].file_stem(), "GeoSSA_uav_4");
    }

    #[test]
    fn non_finite_fitness_roundtrips() {
        let record = RunRecord {
            algorithm: "SSA".into(),
            problem: "F1".into(),
            repetition: 0,
            seed: 1,
            stream_id: 2,
            best_fitness: f64::INFINITY,
            best_position: vec![0.5],
            evaluations: 3,
            guard_events: 0,
            wall_time: 0.0,
        };
        let json = serde_json::to_string(&record).unwrap();
        assert_eq!(serde_json::from_str::<RunRecord>(&json).unwrap(), record);
    }

    #[test]
    fn record_floats_roundtrip_exactly() {
        let mut rng = RngStream::new(5, 5);
        for _ in 0..2000 {
            let v = f64::from_bits(rng.next_u64());
            if !v.is_finite() {
                continue;
            }
            let json = serde_json::to_string(&v).unwrap();
            assert_eq!(serde_json::from_str::<f64>(&json).unwrap().to_bits(), v.to_bits(), "{json}");
        }
    }

    #[test]
    fn audit_flags_shared_streams() {
        let mut r = RunRecord {
            algorithm: "SSA".into(),
            problem: "F1".into(),
            repetition: 0,
            seed: 1,
            stream_id: 2,
            best_fitness: 0.0,
            best_position: vec![],
            evaluations: 0,
            guard_events: 0,
            wall_time: 0.0,
        };
        let a = r.clone();
        r.repetition = 1;
        assert!(!audit_streams(&[a.clone(), r.clone()]).all_distinct);
        r.stream_id = 3;
        assert!(audit_streams(&[a, r]).all_distinct);
    }
}
