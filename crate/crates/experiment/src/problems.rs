//! Problem references as they appear in configs: `F1`..`F23`, `CB`, `PL`,
//! `RN`, `IRS`, `uav` (shipped terrain) or `uav:<terrain.toml>`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use geossa_core::benchmarks::{Benchmark, BenchmarkId};
use geossa_core::engineering::{self, EngineeringId};
use geossa_core::uav::{self, CostWeights, Terrain, DEFAULT_INTERIOR};
use geossa_core::{Error, Objective, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProblemRef {
    Benchmark(BenchmarkId),
    Engineering(EngineeringId),
    /// `None` selects the canonical terrain.
    Uav(Option<PathBuf>),
}

impl ProblemRef {
    pub fn label(&self) -> String {
        match self {
            Self::Benchmark(id) => id.to_string(),
            Self::Engineering(id) => id.name().to_string(),
            Self::Uav(None) => "uav".into(),
            Self::Uav(Some(path)) => format!("uav:{}", path.display()),
        }
    }

    /// Label reduced to characters that are safe in file names.
    pub fn file_stem(&self) -> String {
        sanitize(&self.label())
    }

    pub fn build(&self) -> Result<Arc<dyn Objective>> {
        Ok(match self {
            Self::Benchmark(id) => Arc::new(Benchmark::new(*id)),
            Self::Engineering(id) => Arc::new(engineering::as_problem(*id)),
            Self::Uav(path) => {
                let terrain = match path {
                    None => Terrain::canonical(),
                    Some(p) => Terrain::load(p)?,
                };
                Arc::new(
                    uav::as_problem(terrain, CostWeights::default(), DEFAULT_INTERIOR)?
                        .with_label(self.label()),
                )
            }
        })
    }
}

impl fmt::Display for ProblemRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for ProblemRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let token = s.trim();
        if token.eq_ignore_ascii_case("uav") {
            return Ok(Self::Uav(None));
        }
        if let Some(path) = token.strip_prefix("uav:") {
            if path.is_empty() {
                return Err(Error::InvalidInput("`uav:` needs a terrain path".into()));
            }
            return Ok(Self::Uav(Some(PathBuf::from(path))));
        }
        if let Ok(id) = token.parse::<BenchmarkId>() {
            return Ok(Self::Benchmark(id));
        }
        if let Ok(id) = token.parse::<EngineeringId>() {
            return Ok(Self::Engineering(id));
        }
        Err(Error::InvalidInput(format!("unknown problem `{token}`")))
    }
}

pub fn sanitize(label: &str) -> String {
    label
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '.' { c } else { '-' })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        assert_eq!("F7".parse::<ProblemRef>().unwrap(), ProblemRef::Benchmark(BenchmarkId::F7));
        assert_eq!("irs".parse::<ProblemRef>().unwrap(), ProblemRef::Engineering(EngineeringId::Irs));
        assert_eq!("uav".parse::<ProblemRef>().unwrap(), ProblemRef::Uav(None));
        let custom = "uav:maps/hills.toml".parse::<ProblemRef>().unwrap();
        assert_eq!(custom.label(), "uav:maps/hills.toml");
        assert_eq!(custom.file_stem(), "uav-maps-hills.toml");
        assert!("F24".parse::<ProblemRef>().is_err());
        assert!("uav:".parse::<ProblemRef>().is_err());
    }

    #[test]
    fn builds_objectives_with_matching_labels() {
        for token in ["F1", "F23", "CB", "PL", "RN", "IRS", "uav"] {
            let problem: ProblemRef = token.parse().unwrap();
            assert_eq!(problem.build().unwrap().label(), token);
        }
        let missing = ProblemRef::Uav(Some("/nonexistent/terrain.toml".into()));
        assert!(missing.build().is_err());
    }
}
