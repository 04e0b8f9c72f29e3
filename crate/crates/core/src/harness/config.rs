use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::roster::{full_roster, AlgorithmSpec};
use crate::bench::{load_problem_file, make_suite, BaseFunction, ProblemSpec, ProblemSuite};
use crate::error::{Error, Result};

fn default_runs() -> u32 {
    30
}

fn default_budget_per_dim() -> u64 {
    5000
}

fn default_trace_points() -> usize {
    100
}

fn default_output() -> PathBuf {
    PathBuf::from("results")
}

/// Generated part of the problem suite: every function at every dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    #[serde(default)]
    pub functions: Vec<BaseFunction>,
    #[serde(default)]
    pub dims: Vec<usize>,
    #[serde(default)]
    pub seed: u64,
    /// Extra problems from a problem-definition file, appended after the
    /// generated ones.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub problem_file: Option<PathBuf>,
}

/// A full experiment, as read from a TOML file.
///
/// ```toml
/// master_seed = 1
/// runs = 30
/// output = "results/desk"
///
/// [suite]
/// functions = ["sphere", "rastrigin"]
/// dims = [10]
/// seed = 7
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub master_seed: u64,
    #[serde(default = "default_runs")]
    pub runs: u32,
    #[serde(default = "default_budget_per_dim")]
    pub budget_per_dim: u64,
    /// Defaults to the full 13-algorithm roster.
    #[serde(default = "full_roster")]
    pub algorithms: Vec<String>,
    #[serde(default = "default_output")]
    pub output: PathBuf,
    /// Worker threads; 0 uses every core.
    #[serde(default)]
    pub threads: usize,
    /// Best-fitness checkpoints stored per run, evenly spaced over the budget.
    #[serde(default = "default_trace_points")]
    pub trace_points: usize,
    pub suite: SuiteConfig,
    /// Problems listed inline, appended last.
    #[serde(default, rename = "problem", skip_serializing_if = "Vec::is_empty")]
    pub problems: Vec<ProblemSpec>,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    /// Reads a config file. Relative paths inside it are taken relative to
    /// the file's directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut config = Self::from_toml(&std::fs::read_to_string(path)?)?;
        let base = path.parent().unwrap_or(Path::new(""));
        if config.output.is_relative() {
            config.output = base.join(&config.output);
        }
        if let Some(file) = &mut config.suite.problem_file {
            if file.is_relative() {
                *file = base.join(&*file);
            }
        }
        Ok(config)
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::InvalidArgument("runs must be >= 1".into()));
        }
        if self.budget_per_dim == 0 {
            return Err(Error::InvalidArgument("budget_per_dim must be >= 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(Error::InvalidArgument("empty algorithm roster".into()));
        }
        let mut seen = HashSet::new();
        for id in &self.algorithms {
            if !seen.insert(id) {
                return Err(Error::InvalidArgument(format!("duplicate algorithm id `{id}`")));
            }
            AlgorithmSpec::from_id(id)?;
        }
        Ok(())
    }

    pub fn roster(&self) -> Result<Vec<AlgorithmSpec>> {
        self.algorithms.iter().map(|id| AlgorithmSpec::from_id(id)).collect()
    }

    /// Generated problems, then those from the problem file, then inline ones.
    pub fn build_suite(&self) -> Result<ProblemSuite> {
        let generated = make_suite(&self.suite.functions, &self.suite.dims, self.suite.seed)?;
        let mut specs = generated.specs().to_vec();
        if let Some(file) = &self.suite.problem_file {
            specs.extend(load_problem_file(file)?);
        }
        specs.extend(self.problems.iter().cloned());
        if specs.is_empty() {
            return Err(Error::InvalidArgument("the suite has no problems".into()));
        }
        ProblemSuite::from_specs(specs)
    }

    pub fn budget_for(&self, dimension: usize) -> u64 {
        self.budget_per_dim * dimension as u64
    }

    /// Number of records a complete experiment produces.
    pub fn expected_records(&self, n_problems: usize) -> usize {
        self.algorithms.len() * n_problems * self.runs as usize
    }
}
