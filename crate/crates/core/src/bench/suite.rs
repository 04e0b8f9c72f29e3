use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{random_rotation, BaseFunction, Problem};
use crate::error::{Error, Result};
use crate::model::SearchSpace;
use crate::rng::{stable_hash64, RandomSource};

fn default_lower() -> f64 {
    -100.0
}

fn default_upper() -> f64 {
    100.0
}

fn default_true() -> bool {
    true
}

/// Everything needed to rebuild one problem bit for bit. This is also the
/// record format of problem-definition files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub function: BaseFunction,
    pub dimension: usize,
    /// Seed for the shift vector and rotation matrix.
    pub seed: u64,
    #[serde(default = "default_lower")]
    pub lower: f64,
    #[serde(default = "default_upper")]
    pub upper: f64,
    #[serde(default = "default_true")]
    pub shift: bool,
    /// Defaults to [`BaseFunction::rotated_by_default`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rotate: Option<bool>,
}

impl ProblemSpec {
    pub fn id(&self) -> String {
        self.id
            .clone()
            .unwrap_or_else(|| format!("{}_D{}", self.function.name(), self.dimension))
    }

    pub fn rotated(&self) -> bool {
        self.rotate
            .unwrap_or_else(|| self.function.rotated_by_default())
    }

    /// The shift is drawn uniformly from the central 80% of the box, then
    /// the rotation, both from one stream seeded by `seed`.
    pub fn build(&self) -> Result<Problem> {
        if self.dimension == 0 {
            return Err(Error::InvalidArgument("problem dimension must be >= 1".into()));
        }
        let space = SearchSpace::uniform(self.dimension, self.lower, self.upper)?;
        let mut rng = RandomSource::new(self.seed);
        let center = 0.5 * (self.lower + self.upper);
        let half = 0.4 * (self.upper - self.lower);
        let shift = self.shift.then(|| {
            (0..self.dimension)
                .map(|_| center + half * rng.uniform_symmetric())
                .collect()
        });
        let rotation = self
            .rotated()
            .then(|| random_rotation(self.dimension, &mut rng));
        Problem::new(self.id(), self.function, space, shift, rotation)
    }
}

/// An ordered list of problems with unique ids.
#[derive(Debug, Clone)]
pub struct ProblemSuite {
    specs: Vec<ProblemSpec>,
    problems: Vec<Problem>,
}

impl ProblemSuite {
    pub fn from_specs(specs: Vec<ProblemSpec>) -> Result<Self> {
        let mut seen = HashSet::new();
        for s in &specs {
            if !seen.insert(s.id()) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate problem id `{}`",
                    s.id()
                )));
            }
        }
        let problems = specs.iter().map(ProblemSpec::build).collect::<Result<_>>()?;
        Ok(Self { specs, problems })
    }

    pub fn problems(&self) -> &[Problem] {
        &self.problems
    }

    pub fn specs(&self) -> &[ProblemSpec] {
        &self.specs
    }

    pub fn len(&self) -> usize {
        self.problems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.problems.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&Problem> {
        self.problems.iter().find(|p| p.id() == id)
    }
}

/// Functions x dimensions, function-major. Each problem is shifted; rotation
/// follows [`BaseFunction::rotated_by_default`]. Per-problem seeds are
/// derived from `(seed, function, D)`.
pub fn make_suite(functions: &[BaseFunction], dims: &[usize], seed: u64) -> Result<ProblemSuite> {
    let mut specs = Vec::new();
    let mut seen = HashSet::new();
    for &f in functions {
        for &d in dims {
            if !seen.insert((f, d)) {
                continue;
            }
            // 63 bits so the seed survives as a TOML integer
            let problem_seed = stable_hash64(&[
                b"suite",
                &seed.to_le_bytes(),
                f.name().as_bytes(),
                &(d as u64).to_le_bytes(),
            ]) >> 1;
            specs.push(ProblemSpec {
                id: None,
                function: f,
                dimension: d,
                seed: problem_seed,
                lower: default_lower(),
                upper: default_upper(),
                shift: true,
                rotate: None,
            });
        }
    }
    ProblemSuite::from_specs(specs)
}

/// Problem-definition file: a TOML document with one `[[problem]]` table
/// per problem.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    #[serde(default, rename = "problem")]
    pub problems: Vec<ProblemSpec>,
}

pub fn load_problem_file(path: impl AsRef<Path>) -> Result<Vec<ProblemSpec>> {
    let text = std::fs::read_to_string(path)?;
    let file: ProblemFile = toml::from_str(&text)?;
    Ok(file.problems)
}
