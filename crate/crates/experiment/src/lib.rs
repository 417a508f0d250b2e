//! Experiment runner for the geossa optimizers: parses grid configs, runs
//! every (algorithm, problem, repetition) cell in parallel and writes
//! CSV reports plus a JSON metadata file.

pub mod config;
pub mod grid;
pub mod inspect;
pub mod problems;
pub mod reports;

pub use config::{parse_config, ConfigError, ExperimentConfig, Overrides, TelemetryLevel};
pub use grid::{run_grid, GridError, GridOutcome, Metadata, RunRecord};
pub use problems::ProblemRef;
pub use reports::{emit_reports, ReportError, ReportSummary};
