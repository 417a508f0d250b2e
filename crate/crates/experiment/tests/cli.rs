use std::fs;
use std::path::Path;
use std::process::Command;

use geossa_experiment::grid::{self, Metadata};
use geossa_experiment::reports::{
    CONVERGENCE_HEADER, RUNS_HEADER, SUMMARY_HEADER, WILCOXON_HEADER, WTL_OE_HEADER,
};
use geossa_experiment::{parse_config, run_grid};

const SMALL: &str = r#"
algorithms = ["SSA", "GeoSSA"]
problems = ["F1", "CB", "uav"]
n = 10
iterations = 20
repetitions = 5
base_seed = 3
telemetry = "curve_and_diversity"
workers = 2
"#;

fn geossa(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_geossa"))
        .args(args)
        .env_remove("GEOSSA_OUTPUT_DIR")
        .output()
        .unwrap()
}

fn write_config(dir: &Path, text: &str) -> String {
    let path = dir.join("grid.toml");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

const REPORT_FILES: [&str; 5] = ["runs.csv", "summary_ave_std.csv", "wilcoxon.csv", "friedman.csv", "wtl_oe.csv"];

fn report_text(dir: &Path) -> Vec<String> {
    REPORT_FILES.iter().map(|f| fs::read_to_string(dir.join(f)).unwrap()).collect()
}

#[test]
fn grid_produces_one_record_per_cell() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cfg = parse_config(SMALL).unwrap();
    cfg.output_dir = tmp.path().to_path_buf();
    let outcome = run_grid(&cfg, false).unwrap();
    assert!(outcome.is_complete());
    assert_eq!(outcome.records.len(), 30);
    assert_eq!(fs::read_dir(tmp.path().join("records")).unwrap().count(), 30);
    assert_eq!(fs::read_dir(tmp.path().join("convergence")).unwrap().count(), 30);
    assert!(outcome.metadata.stream_audit.all_distinct);
    assert_eq!(outcome.metadata.stream_audit.distinct_streams, 30);

    let curve = fs::read_to_string(tmp.path().join("convergence/GeoSSA_CB_4.csv")).unwrap();
    let lines: Vec<&str> = curve.lines().collect();
    assert_eq!(lines[0], CONVERGENCE_HEADER.join(","));
    assert_eq!(lines.len(), 21);
    let last: Vec<f64> = lines[20].split(',').map(|v| v.parse().unwrap()).collect();
    assert_eq!(last[0], 20.0);
    let record = outcome.records.iter().find(|r| r.algorithm == "GeoSSA" && r.problem == "CB" && r.repetition == 4).unwrap();
    assert_eq!(last[1], record.best_fitness);
    // Initial population, then n movers plus ceil(0.2 n) danger members per iteration.
    assert_eq!(record.evaluations, 10 + 20 * (10 + 2));
}

#[test]
fn csv_headers_are_pinned() {
    assert_eq!(RUNS_HEADER.join(","), "algorithm,problem,repetition,seed,stream_id,best_fitness,evaluations");
    assert_eq!(SUMMARY_HEADER.join(","), "problem,algorithm,ave,std");
    assert_eq!(
        WILCOXON_HEADER.join(","),
        "problem,algorithm,reference,w_plus,w_minus,p_value,n_effective,zeros_dropped,method,outcome"
    );
    assert_eq!(WTL_OE_HEADER.join(","), "algorithm,wins,ties,losses,oe");
    assert_eq!(CONVERGENCE_HEADER.join(","), "t,best_fitness,diversity,exploration_pct");
    assert_eq!(grid::SCHEMA_VERSION, 1);
}

#[test]
fn cli_run_is_reproducible_and_resumable() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), SMALL);
    let a = tmp.path().join("a");
    let b = tmp.path().join("b");

    let out = geossa(&["run", &config, "--output-dir", a.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let out = geossa(&["run", &config, "--output-dir", b.to_str().unwrap(), "--workers", "1"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(report_text(&a), report_text(&b));
    let curve = "convergence/SSA_uav_2.csv";
    assert_eq!(fs::read(a.join(curve)).unwrap(), fs::read(b.join(curve)).unwrap());
    let meta_a = Metadata::load(&a).unwrap();
    assert_eq!(meta_a.csv_sha256, Metadata::load(&b).unwrap().csv_sha256);
    assert_eq!(meta_a.csv_sha256.len(), 5);

    fs::remove_file(a.join("records/GeoSSA_F1_3.json")).unwrap();
    let out = geossa(&["run", &config, "--output-dir", a.to_str().unwrap(), "--resume"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(Metadata::load(&a).unwrap().resumed_runs, 29);
    assert_eq!(report_text(&a), report_text(&b));
}

#[test]
fn output_dir_from_environment() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "algorithms = [\"GeoSSA\"]\nproblems = [\"F9\"]\nrepetitions = 2\niterations = 5\nn = 6\n");
    let target = tmp.path().join("from-env");
    let out = Command::new(env!("CARGO_BIN_EXE_geossa"))
        .args(["run", &config])
        .env("GEOSSA_OUTPUT_DIR", &target)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(target.join("runs.csv").exists());
    let wilcoxon = fs::read_to_string(target.join("wilcoxon.csv")).unwrap();
    assert_eq!(wilcoxon.lines().count(), 1);
}

#[test]
fn report_command_switches_reference() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), SMALL);
    let dir = tmp.path().join("r");
    assert_eq!(geossa(&["run", &config, "--output-dir", dir.to_str().unwrap()]).status.code(), Some(0));
    let out = geossa(&["report", dir.to_str().unwrap(), "--reference", "SSA"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let wtl = fs::read_to_string(dir.join("wtl_oe.csv")).unwrap();
    assert!(wtl.contains("\nSSA,-,-,-,-\n"));
    assert!(wtl.contains("\nGeoSSA,"));
    assert_eq!(Metadata::load(&dir).unwrap().reference, "SSA");
    assert_eq!(geossa(&["report", dir.to_str().unwrap(), "--reference", "GeoSSA3"]).status.code(), Some(2));

    fs::remove_file(dir.join("records/SSA_CB_0.json")).unwrap();
    let out = geossa(&["report", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("SSA/CB/0"));
}

#[test]
fn failed_run_gives_partial_exit_code() {
    let tmp = tempfile::tempdir().unwrap();
    let config = write_config(tmp.path(), "algorithms = [\"SSA\"]\nproblems = [\"F1\"]\nrepetitions = 3\niterations = 5\nn = 6\n");
    let dir = tmp.path().join("out");
    // A directory where a record file should go makes that write fail.
    fs::create_dir_all(dir.join("records/SSA_F1_1.json")).unwrap();
    let out = geossa(&["run", &config, "--output-dir", dir.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let meta = Metadata::load(&dir).unwrap();
    assert_eq!(meta.failures.len(), 1);
    assert_eq!(meta.failures[0].repetition, 1);
    assert!(!dir.join("runs.csv").exists());
}

#[test]
fn config_errors_exit_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let bad = write_config(tmp.path(), "algorithms = [\"GeoSSA9\"]\nproblems = [\"F1\"]\n");
    let out = geossa(&["run", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("GeoSSA9"));
    let terrain = write_config(tmp.path(), "algorithms = [\"SSA\"]\nproblems = [\"uav:/no/such/terrain.toml\"]\n");
    assert_eq!(geossa(&["run", &terrain, "--output-dir", tmp.path().join("o").to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(geossa(&["run", "/no/such/config.toml"]).status.code(), Some(2));
}

#[test]
fn inspection_commands() {
    let out = geossa(&["verify-rng"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("all 20 reference draws match"));
    let out = geossa(&["list-problems"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).lines().count(), 28);
}

#[test]
fn full_telemetry_writes_history() {
    let tmp = tempfile::tempdir().unwrap();
    let mut cfg = parse_config("algorithms = [\"GeoSSA\"]\nproblems = [\"F17\"]\nrepetitions = 2\niterations = 3\nn = 4\ntelemetry = \"full\"\n").unwrap();
    cfg.output_dir = tmp.path().to_path_buf();
    run_grid(&cfg, false).unwrap();
    let history = fs::read_to_string(tmp.path().join("history/GeoSSA_F17_1.csv")).unwrap();
    let lines: Vec<&str> = history.lines().collect();
    assert_eq!(lines[0], "t,member,x1,x2");
    assert_eq!(lines.len(), 1 + 4 * 4);
    assert!(lines[1].starts_with("0,0,"));
}
