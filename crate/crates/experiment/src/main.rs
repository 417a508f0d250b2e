use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use geossa_core::ssa::Preset;
use geossa_experiment::grid::{self, GridError, Metadata};
use geossa_experiment::{emit_reports, inspect, parse_config, Overrides, TelemetryLevel};

const EXIT_PARTIAL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

#[derive(Parser)]
#[command(name = "geossa", version, about = "Run SSA/GeoSSA experiment grids and build comparison reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute every run of a config and write records, curves and reports.
    Run {
        config: PathBuf,
        #[arg(long, env = "GEOSSA_OUTPUT_DIR")]
        output_dir: Option<PathBuf>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, alias = "T")]
        iterations: Option<usize>,
        #[arg(long)]
        repetitions: Option<usize>,
        #[arg(long)]
        base_seed: Option<u64>,
        #[arg(long)]
        telemetry: Option<TelemetryLevel>,
        /// Worker threads; 0 uses every available core.
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        reference: Option<Preset>,
        /// Keep finished run records from an earlier invocation.
        #[arg(long)]
        resume: bool,
    },
    /// Rebuild the summary CSVs of a results directory.
    Report {
        results_dir: PathBuf,
        #[arg(long)]
        reference: Option<Preset>,
    },
    /// Check the random stream against the shipped golden draws.
    VerifyRng,
    /// List the accepted problem names.
    ListProblems,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Run {
            config,
            output_dir,
            n,
            iterations,
            repetitions,
            base_seed,
            telemetry,
            workers,
            reference,
            resume,
        } => run(
            config,
            Overrides {
                output_dir,
                n,
                iterations,
                repetitions,
                base_seed,
                telemetry,
                workers,
                reference,
            },
            resume,
        ),
        Command::Report { results_dir, reference } => report(results_dir, reference),
        Command::VerifyRng => verify_rng(),
        Command::ListProblems => {
            for line in inspect::list_problems() {
                println!("{line}");
            }
            ExitCode::SUCCESS
        }
    }
}

fn config_error(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("{e}");
    ExitCode::from(EXIT_CONFIG)
}

fn run(path: PathBuf, overrides: Overrides, resume: bool) -> ExitCode {
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => return config_error(format!("cannot read {}: {e}", path.display())),
    };
    let mut cfg = match parse_config(&text).and_then(|mut c| c.apply(&overrides).map(|()| c)) {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    if cfg.output_dir.as_os_str().is_empty() {
        cfg.output_dir = PathBuf::from(geossa_experiment::config::DEFAULT_OUTPUT_DIR);
    }
    let total = cfg.algorithms.len() * cfg.problems.len() * cfg.repetitions;
    eprintln!("running {total} runs into {}", cfg.output_dir.display());
    match grid::run_grid(&cfg, resume) {
        Ok(outcome) => {
            for f in &outcome.failures {
                eprintln!("run failed: {} on {} rep {}: {}", f.algorithm, f.problem, f.repetition, f.message);
            }
            if outcome.is_complete() {
                eprintln!(
                    "completed {} runs ({} resumed); reports written",
                    outcome.records.len(),
                    outcome.resumed
                );
                ExitCode::SUCCESS
            } else {
                eprintln!("{} of {total} runs failed; reports not written", outcome.failures.len());
                ExitCode::from(EXIT_PARTIAL)
            }
        }
        Err(e @ GridError::Problem { .. }) => config_error(e),
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(EXIT_PARTIAL)
        }
    }
}

fn report(dir: PathBuf, reference: Option<Preset>) -> ExitCode {
    let mut metadata = match Metadata::load(&dir) {
        Ok(m) => m,
        Err(e) => return config_error(e),
    };
    let mut cfg = match parse_config(&metadata.config).and_then(|mut c| {
        c.apply(&Overrides {
            reference,
            ..Overrides::default()
        })
        .map(|()| c)
    }) {
        Ok(c) => c,
        Err(e) => return config_error(e),
    };
    cfg.output_dir = dir.clone();
    let records = match grid::load_records(&dir) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_PARTIAL);
        }
    };
    match emit_reports(&dir, &cfg, &records) {
        Ok(summary) => {
            metadata.reference = cfg.reference.name().to_string();
            metadata.csv_sha256 = summary.checksums;
            metadata.stream_audit = grid::audit_streams(&records);
            if let Err(e) = metadata.store(&dir) {
                eprintln!("{e}");
                return ExitCode::from(EXIT_PARTIAL);
            }
            eprintln!("reports written to {}", dir.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(EXIT_PARTIAL)
        }
    }
}

fn verify_rng() -> ExitCode {
    let checks = inspect::verify_rng();
    let mut ok = true;
    for c in &checks {
        let status = if c.ok() { "ok" } else { "MISMATCH" };
        ok &= c.ok();
        println!("{:<8} {:>2} expected {:>24e} got {:>24e} {status}", c.kind, c.index, c.expected, c.actual);
    }
    if ok {
        println!("all {} reference draws match", checks.len());
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_PARTIAL)
    }
}
