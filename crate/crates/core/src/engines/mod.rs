//! The four compact engines behind one step-wise contract:
//!
//! 1. initialize the probability vector (optionally centered on a given point),
//! 2. sample and evaluate the elite,
//! 3. on every [`Engine::step`], build a candidate with the engine's own
//!    operators, compare it with the elite, update the probability vector from
//!    the winner/loser pair and apply the elitism rule.
//!
//! All engine logic lives in `[-1, 1]^D`; the [`Evaluator`] maps candidates to
//! decision space.

mod cbfo;
mod cde;
mod cpso;
pub mod crossover;
mod rcga;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{
    CandidateSolution, Evaluator, MeanBoundary, ProbabilityVector, DEFAULT_SIGMA_MIN,
};
use crate::rng::RandomSource;

pub use cde::cde_mutant;
pub use cpso::pso_velocity;
pub use crossover::{cr_from_alpha, exp_crossover, exp_xover_length};
pub use rcga::binomial_mask;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CdeLightParams {
    /// Scale factor `F` of the rand/1 mutation.
    pub scale_factor: f64,
    /// Expected inherited fraction used to derive the crossover rate.
    pub alpha_m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum RcgaCrossover {
    /// The raw sample is the candidate.
    None,
    /// Each gene comes from the sample with probability `p_gene`, otherwise
    /// from the elite; one random gene is always taken from the sample.
    Binomial { p_gene: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RcgaParams {
    pub crossover: RcgaCrossover,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CpsoParams {
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CbfoParams {
    /// Chemotactic step length `Ci` in normalized units.
    pub step_size: f64,
    /// Maximum number of extra "run" moves `Ns` after a successful tumble.
    pub max_run: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "engine", rename_all = "snake_case")]
pub enum EngineKind {
    CdeLight(CdeLightParams),
    Rcga(RcgaParams),
    Cpso(CpsoParams),
    Cbfo(CbfoParams),
}

impl EngineKind {
    /// Short name used in algorithm ids (`cDE`, `rcGA`, `cPSO`, `cBFO`).
    pub fn short_name(&self) -> &'static str {
        match self {
            EngineKind::CdeLight(_) => "cDE",
            EngineKind::Rcga(_) => "rcGA",
            EngineKind::Cpso(_) => "cPSO",
            EngineKind::Cbfo(_) => "cBFO",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "scheme", rename_all = "snake_case")]
pub enum Elitism {
    /// The elite is replaced only by a strictly better candidate.
    #[default]
    Persistent,
    /// Additionally, an elite that survived `refresh` comparisons is
    /// replaced by the next candidate regardless of fitness.
    NonPersistent { refresh: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub kind: EngineKind,
    pub virtual_population: usize,
    /// Initial standard deviation of every axis.
    pub lambda: f64,
    pub elitism: Elitism,
    pub sigma_min: f64,
    #[serde(skip)]
    pub boundary: MeanBoundary,
}

impl EngineConfig {
    fn with_kind(kind: EngineKind) -> Self {
        Self {
            kind,
            virtual_population: 300,
            lambda: 10.0,
            elitism: Elitism::Persistent,
            sigma_min: DEFAULT_SIGMA_MIN,
            boundary: MeanBoundary::Clamp,
        }
    }

    /// cDE "light": `Np = 300`, `F = 0.5`, `alpha_m = 0.25`.
    pub fn cde_light() -> Self {
        Self::with_kind(EngineKind::CdeLight(CdeLightParams {
            scale_factor: 0.5,
            alpha_m: 0.25,
        }))
    }

    /// rcGA: `Np = 300`, binomial crossover with the elite at `p_gene = 0.5`.
    pub fn rcga() -> Self {
        Self::with_kind(EngineKind::Rcga(RcgaParams {
            crossover: RcgaCrossover::Binomial { p_gene: 0.5 },
        }))
    }

    /// cPSO: `Np = 300`, `phi = (0.2, 0.07, 3.74)`, `gamma = (1, 1)`.
    pub fn cpso() -> Self {
        Self::with_kind(EngineKind::Cpso(CpsoParams {
            phi1: 0.2,
            phi2: 0.07,
            phi3: 3.74,
            gamma1: 1.0,
            gamma2: 1.0,
        }))
    }

    /// cBFO: `Np = 300`, `Ci = 0.1`, `Ns = 4`.
    pub fn cbfo() -> Self {
        Self::with_kind(EngineKind::Cbfo(CbfoParams {
            step_size: 0.1,
            max_run: 4,
        }))
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.virtual_population == 0 {
            return bad("virtual population must be >= 1".into());
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return bad(format!("lambda must be positive, got {}", self.lambda));
        }
        if !(self.sigma_min > 0.0) {
            return bad(format!("sigma_min must be positive, got {}", self.sigma_min));
        }
        if let Elitism::NonPersistent { refresh: 0 } = self.elitism {
            return bad("non-persistent elitism needs refresh >= 1".into());
        }
        match self.kind {
            EngineKind::CdeLight(p) => {
                if !(p.scale_factor > 0.0) {
                    return bad(format!("F must be positive, got {}", p.scale_factor));
                }
                if !(p.alpha_m > 0.0 && p.alpha_m <= 1.0) {
                    return bad(format!("alpha_m must lie in (0, 1], got {}", p.alpha_m));
                }
            }
            EngineKind::Rcga(RcgaParams {
                crossover: RcgaCrossover::Binomial { p_gene },
            }) => {
                if !(p_gene > 0.0 && p_gene <= 1.0) {
                    return bad(format!("p_gene must lie in (0, 1], got {p_gene}"));
                }
            }
            EngineKind::Rcga(_) => {}
            EngineKind::Cpso(p) => {
                let all = [p.phi1, p.phi2, p.phi3, p.gamma1, p.gamma2];
                if all.iter().any(|v| !(*v >= 0.0 && v.is_finite())) {
                    return bad("cPSO coefficients must be non-negative".into());
                }
            }
            EngineKind::Cbfo(p) => {
                if !(p.step_size > 0.0) {
                    return bad(format!("Ci must be positive, got {}", p.step_size));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for EngineConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (Np={})", self.kind.short_name(), self.virtual_population)
    }
}

/// Engine-specific state beyond the probability vector and the elite.
#[derive(Debug, Clone, PartialEq)]
pub enum EngineExtras {
    None,
    Pso {
        position: Vec<f64>,
        velocity: Vec<f64>,
    },
    Bfo {
        /// Where the last chemotactic move ended.
        position: Vec<f64>,
        /// Successful run moves in the last step.
        last_run: usize,
        tumbles: u64,
    },
}

/// A running compact engine. One instance per epoch of a run.
#[derive(Debug, Clone)]
pub struct Engine {
    config: EngineConfig,
    pv: ProbabilityVector,
    elite: CandidateSolution,
    extras: EngineExtras,
    elite_age: usize,
    crossover_rate: f64,
}

impl Engine {
    /// Builds the probability vector (centered on `initial_mu` when given),
    /// samples the elite and evaluates it. Consumes one evaluation.
    pub fn init(
        config: &EngineConfig,
        eval: &mut Evaluator<'_>,
        rng: &mut RandomSource,
        initial_mu: Option<&[f64]>,
    ) -> Result<Self> {
        config.validate()?;
        let dim = eval.dimension();
        let mut pv = ProbabilityVector::init(dim, config.lambda, config.virtual_population)?
            .with_sigma_min(config.sigma_min)
            .with_boundary(config.boundary);
        if let Some(mu) = initial_mu {
            pv.set_mu(mu)?;
        }
        let mut elite = pv.sample(rng);
        elite.fitness = Some(eval.evaluate(&elite.coords)?);

        let extras = match config.kind {
            EngineKind::Cpso(_) => EngineExtras::Pso {
                position: elite.coords.clone(),
                velocity: vec![0.0; dim],
            },
            EngineKind::Cbfo(_) => EngineExtras::Bfo {
                position: elite.coords.clone(),
                last_run: 0,
                tumbles: 0,
            },
            _ => EngineExtras::None,
        };
        let crossover_rate = match config.kind {
            EngineKind::CdeLight(p) => cr_from_alpha(p.alpha_m, dim)?,
            _ => 0.0,
        };
        Ok(Self {
            config: config.clone(),
            pv,
            elite,
            extras,
            elite_age: 0,
            crossover_rate,
        })
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn pv(&self) -> &ProbabilityVector {
        &self.pv
    }

    pub fn elite(&self) -> &CandidateSolution {
        &self.elite
    }

    pub fn extras(&self) -> &EngineExtras {
        &self.extras
    }

    /// One iteration of the engine. Fails with `BudgetExhausted` before any
    /// state change when no evaluation is left.
    pub fn step(&mut self, eval: &mut Evaluator<'_>, rng: &mut RandomSource) -> Result<()> {
        if eval.budget().is_exhausted() {
            return Err(Error::BudgetExhausted {
                consumed: eval.budget().consumed(),
            });
        }
        match self.config.kind {
            EngineKind::CdeLight(p) => self.cde_light_step(p, eval, rng),
            EngineKind::Rcga(p) => self.rcga_step(p, eval, rng),
            EngineKind::Cpso(p) => self.cpso_step(p, eval, rng),
            EngineKind::Cbfo(p) => self.cbfo_step(p, eval, rng),
        }
    }

    /// Steps until the current budget slice is used up; returns the elite.
    pub fn run(
        &mut self,
        eval: &mut Evaluator<'_>,
        rng: &mut RandomSource,
    ) -> Result<&CandidateSolution> {
        loop {
            match self.step(eval, rng) {
                Ok(()) => {}
                Err(e) if e.is_budget_exhausted() => return Ok(&self.elite),
                Err(e) => return Err(e),
            }
        }
    }

    /// Compares an evaluated candidate with the elite, updates the
    /// probability vector from the winner/loser pair and applies elitism.
    /// Returns whether the candidate was strictly better.
    fn compete(&mut self, candidate: CandidateSolution) -> Result<bool> {
        let improved = candidate.is_better_than(&self.elite);
        if improved {
            self.pv.update(&candidate.coords, &self.elite.coords)?;
        } else {
            self.pv.update(&self.elite.coords, &candidate.coords)?;
        }
        self.elite_age += 1;
        let refresh = matches!(
            self.config.elitism,
            Elitism::NonPersistent { refresh } if self.elite_age >= refresh
        );
        if improved || refresh {
            self.elite = candidate;
            self.elite_age = 0;
        }
        Ok(improved)
    }
}

/// Clamps every coordinate into `[-1, 1]`.
pub(crate) fn clamp_unit(x: &mut [f64]) {
    for v in x {
        *v = v.clamp(-1.0, 1.0);
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use crate::error::Result;
    use crate::model::{Objective, SearchSpace};

    /// Sphere on `[-100, 100]^D`, local to engine tests.
    pub struct Sphere(pub SearchSpace);

    impl Sphere {
        pub fn new(dim: usize) -> Self {
            Sphere(SearchSpace::uniform(dim, -100.0, 100.0).unwrap())
        }

        pub fn evaluate_normalized(&self, coords: &[f64]) -> f64 {
            self.evaluate(&self.0.denormalize(coords).unwrap()).unwrap()
        }
    }

    impl Objective for Sphere {
        fn space(&self) -> &SearchSpace {
            &self.0
        }
        fn evaluate(&self, x: &[f64]) -> Result<f64> {
            Ok(x.iter().map(|v| v * v).sum())
        }
    }
}
