//! Experiment configuration: a TOML document with the keys below.
//!
//! ```toml
//! algorithms = ["GeoSSA", "SSA"]      # required; SSA, GeoSSA, GeoSSA1..GeoSSA3
//! problems = ["F1", "CB", "uav"]      # required; F1..F23, CB, PL, RN, IRS, uav, uav:<path>
//! n = 30                              # population size
//! iterations = 500                    # T (alias `T`)
//! repetitions = 30
//! base_seed = 0
//! output_dir = "results"
//! telemetry = "curve"                 # none | curve | curve_and_diversity | full
//! workers = 0                         # 0 = one per available core
//! reference = "GeoSSA"                # defaults to GeoSSA when listed, else the first algorithm
//! ```

use std::fmt;
use std::ops::Range;
use std::path::PathBuf;
use std::str::FromStr;

use geossa_core::ssa::Preset;
use serde::Deserialize;
use toml::Spanned;

use crate::problems::ProblemRef;

pub const DEFAULT_N: usize = 30;
pub const DEFAULT_ITERATIONS: usize = 500;
pub const DEFAULT_REPETITIONS: usize = 30;
pub const DEFAULT_OUTPUT_DIR: &str = "results";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TelemetryLevel {
    /// No per-run convergence files.
    None,
    /// Convergence files with `t` and `best_fitness`; diversity columns left empty.
    Curve,
    CurveAndDiversity,
    /// As above plus per-iteration population snapshots under `history/`.
    Full,
}

impl TelemetryLevel {
    pub fn name(self) -> &'static str {
        match self {
            Self::None => "none",
            Self::Curve => "curve",
            Self::CurveAndDiversity => "curve_and_diversity",
            Self::Full => "full",
        }
    }
}

impl fmt::Display for TelemetryLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TelemetryLevel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [Self::None, Self::Curve, Self::CurveAndDiversity, Self::Full]
            .into_iter()
            .find(|level| level.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                format!("unknown telemetry level `{s}` (expected none, curve, curve_and_diversity or full)")
            })
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("config error at line {line}, column {column}: {message}\n  | {snippet}")]
    At {
        line: usize,
        column: usize,
        message: String,
        snippet: String,
    },
    #[error("config error: {0}")]
    General(String),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub algorithms: Vec<Preset>,
    pub problems: Vec<ProblemRef>,
    pub n: usize,
    pub iterations: usize,
    pub repetitions: usize,
    pub base_seed: u64,
    pub output_dir: PathBuf,
    pub telemetry: TelemetryLevel,
    pub workers: usize,
    pub reference: Preset,
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub output_dir: Option<PathBuf>,
    pub n: Option<usize>,
    pub iterations: Option<usize>,
    pub repetitions: Option<usize>,
    pub base_seed: Option<u64>,
    pub telemetry: Option<TelemetryLevel>,
    pub workers: Option<usize>,
    pub reference: Option<Preset>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    algorithms: Spanned<Vec<Spanned<String>>>,
    problems: Spanned<Vec<Spanned<String>>>,
    n: Option<Spanned<i64>>,
    #[serde(alias = "T")]
    iterations: Option<Spanned<i64>>,
    repetitions: Option<Spanned<i64>>,
    base_seed: Option<Spanned<i64>>,
    output_dir: Option<String>,
    telemetry: Option<Spanned<String>>,
    workers: Option<Spanned<i64>>,
    reference: Option<Spanned<String>>,
}

struct Locator<'a> {
    text: &'a str,
}

impl Locator<'_> {
    fn error(&self, span: Range<usize>, message: impl Into<String>) -> ConfigError {
        let start = span.start.min(self.text.len());
        let before = &self.text[..start];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = self.text[line_start..start].chars().count() + 1;
        let snippet = self.text[line_start..].lines().next().unwrap_or("").to_string();
        ConfigError::At {
            line,
            column,
            message: message.into(),
            snippet,
        }
    }

    fn count(&self, value: Option<Spanned<i64>>, key: &str, default: usize, min: i64) -> Result<usize, ConfigError> {
        match value {
            None => Ok(default),
            Some(v) if *v.get_ref() < min => {
                Err(self.error(v.span(), format!("`{key}` must be at least {min}, got {}", v.get_ref())))
            }
            Some(v) => Ok(*v.get_ref() as usize),
        }
    }
}

/// Parses and validates a config document, applying defaults.
pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    let raw: RawConfig = toml::from_str(text).map_err(|e| match e.span() {
        Some(span) => Locator { text }.error(span, e.message().to_string()),
        None => ConfigError::General(e.message().to_string()),
    })?;
    let at = Locator { text };

    if raw.algorithms.get_ref().is_empty() {
        return Err(at.error(raw.algorithms.span(), "`algorithms` must not be empty"));
    }
    let mut algorithms = Vec::new();
    for token in raw.algorithms.get_ref() {
        let preset: Preset = token
            .get_ref()
            .parse()
            .map_err(|_| at.error(token.span(), format!("unknown algorithm preset `{}`", token.get_ref())))?;
        if algorithms.contains(&preset) {
            return Err(at.error(token.span(), format!("algorithm `{preset}` listed twice")));
        }
        algorithms.push(preset);
    }

    if raw.problems.get_ref().is_empty() {
        return Err(at.error(raw.problems.span(), "`problems` must not be empty"));
    }
    let mut problems = Vec::new();
    for token in raw.problems.get_ref() {
        let problem: ProblemRef = token
            .get_ref()
            .parse()
            .map_err(|_| at.error(token.span(), format!("unknown problem `{}`", token.get_ref())))?;
        if problems.contains(&problem) {
            return Err(at.error(token.span(), format!("problem `{problem}` listed twice")));
        }
        problems.push(problem);
    }

    let n = at.count(raw.n, "n", DEFAULT_N, 2)?;
    let iterations = at.count(raw.iterations, "iterations", DEFAULT_ITERATIONS, 1)?;
    let repetitions = at.count(raw.repetitions, "repetitions", DEFAULT_REPETITIONS, 1)?;
    let workers = at.count(raw.workers, "workers", 0, 0)?;
    let base_seed = at.count(raw.base_seed, "base_seed", 0, 0)? as u64;

    let telemetry = match raw.telemetry {
        None => TelemetryLevel::Curve,
        Some(t) => t.get_ref().parse().map_err(|e: String| at.error(t.span(), e))?,
    };

    let reference = match raw.reference {
        None => default_reference(&algorithms),
        Some(r) => {
            let preset: Preset = r
                .get_ref()
                .parse()
                .map_err(|_| at.error(r.span(), format!("unknown reference preset `{}`", r.get_ref())))?;
            if !algorithms.contains(&preset) {
                return Err(at.error(r.span(), format!("reference `{preset}` is not among `algorithms`")));
            }
            preset
        }
    };

    Ok(ExperimentConfig {
        algorithms,
        problems,
        n,
        iterations,
        repetitions,
        base_seed,
        output_dir: raw.output_dir.map_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR), PathBuf::from),
        telemetry,
        workers,
        reference,
    })
}

fn default_reference(algorithms: &[Preset]) -> Preset {
    if algorithms.contains(&Preset::GeoSsa) {
        Preset::GeoSsa
    } else {
        algorithms[0]
    }
}

impl ExperimentConfig {
    pub fn apply(&mut self, o: &Overrides) -> Result<(), ConfigError> {
        if let Some(dir) = &o.output_dir {
            self.output_dir = dir.clone();
        }
        if let Some(n) = o.n {
            if n < 2 {
                return Err(ConfigError::General(format!("--n must be at least 2, got {n}")));
            }
            self.n = n;
        }
        if let Some(t) = o.iterations {
            if t == 0 {
                return Err(ConfigError::General("--iterations must be at least 1".into()));
            }
            self.iterations = t;
        }
        if let Some(r) = o.repetitions {
            if r == 0 {
                return Err(ConfigError::General("--repetitions must be at least 1".into()));
            }
            self.repetitions = r;
        }
        if let Some(seed) = o.base_seed {
            self.base_seed = seed;
        }
        if let Some(level) = o.telemetry {
            self.telemetry = level;
        }
        if let Some(w) = o.workers {
            self.workers = w;
        }
        if let Some(r) = o.reference {
            if !self.algorithms.contains(&r) {
                return Err(ConfigError::General(format!("reference `{r}` is not among `algorithms`")));
            }
            self.reference = r;
        }
        Ok(())
    }

    /// Canonical TOML rendering of the resolved settings.
    pub fn to_toml(&self) -> String {
        let quote = |items: Vec<String>| {
            items.iter().map(|s| format!("{s:?}")).collect::<Vec<_>>().join(", ")
        };
        format!(
            "algorithms = [{}]\nproblems = [{}]\nn = {}\niterations = {}\nrepetitions = {}\nbase_seed = {}\noutput_dir = {:?}\ntelemetry = {:?}\nworkers = {}\nreference = {:?}\n",
            quote(self.algorithms.iter().map(|a| a.name().to_string()).collect()),
            quote(self.problems.iter().map(ProblemRef::label).collect()),
            self.n,
            self.iterations,
            self.repetitions,
            self.base_seed,
            self.output_dir.display().to_string(),
            self.telemetry.name(),
            self.workers,
            self.reference.name(),
        )
    }
}
