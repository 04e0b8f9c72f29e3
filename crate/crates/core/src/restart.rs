//! Restart wrappers around the compact engines.
//!
//! * [`run_with_ri`]: re-sampled inheritance. After every epoch a uniform
//!   random point inherits a cyclic block of coordinates from the best
//!   solution so far (exponential crossover), is evaluated, and becomes the
//!   center of the next epoch's probability vector.
//! * [`run_with_random_restart`]: same schedule, no inheritance.
//! * [`run_bare`]: the engine alone for the whole budget.
//! * [`run_random_walk`]: uniform sampling baseline.
//!
//! Budget layout of the two restart wrappers (`E` = epoch length):
//! one evaluation for the initial random point, then alternately an engine
//! epoch of `min(E, remaining)` evaluations and one restart evaluation,
//! until the total budget is spent.

use serde::{Deserialize, Serialize};

use crate::engines::{cr_from_alpha, exp_crossover, exp_xover_length, Engine, EngineConfig};
use crate::error::{Error, Result};
use crate::model::{CandidateSolution, Evaluator, Objective};
use crate::rng::RandomSource;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WrapperMode {
    None,
    ResampledInheritance,
    RandomRestart,
    RandomWalk,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WrapperConfig {
    pub mode: WrapperMode,
    /// Share of the total budget given to each engine epoch.
    pub epoch_fraction: f64,
    /// Expected inherited share of the variables.
    pub ri_alpha: f64,
    /// Overrides the crossover rate derived from `ri_alpha`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crossover_rate: Option<f64>,
}

impl WrapperConfig {
    /// `epoch_fraction = 0.25`, `ri_alpha = 0.05`.
    pub fn new(mode: WrapperMode) -> Self {
        Self {
            mode,
            epoch_fraction: 0.25,
            ri_alpha: 0.05,
            crossover_rate: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epoch_fraction > 0.0 && self.epoch_fraction <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "epoch_fraction must lie in (0, 1], got {}",
                self.epoch_fraction
            )));
        }
        if !(self.ri_alpha > 0.0 && self.ri_alpha <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "ri_alpha must lie in (0, 1], got {}",
                self.ri_alpha
            )));
        }
        if let Some(cr) = self.crossover_rate {
            if !(0.0..=1.0).contains(&cr) {
                return Err(Error::InvalidArgument(format!(
                    "crossover rate must lie in [0, 1], got {cr}"
                )));
            }
        }
        Ok(())
    }

    pub fn epoch_length(&self, total_budget: u64) -> u64 {
        ((self.epoch_fraction * total_budget as f64).floor() as u64).max(1)
    }
}

/// One engine epoch inside a run.
#[derive(Debug, Clone, PartialEq)]
pub struct EpochSummary {
    /// Evaluations consumed when the epoch started and ended.
    pub start: u64,
    pub end: u64,
    /// Mean the probability vector was centered on (`None` means zeros).
    pub center: Option<Vec<f64>>,
    /// Fitness of the restart point the epoch was centered on.
    pub center_fitness: Option<f64>,
    pub elite_fitness: f64,
    /// Coordinates copied from the best solution into `center`, for
    /// inheritance restarts.
    pub inherited: Option<usize>,
}

/// Best-so-far bookkeeping of a run.
#[derive(Debug, Clone, Default)]
pub struct BestTracker {
    best: Option<CandidateSolution>,
    trace: Vec<(u64, f64)>,
    epochs: Vec<EpochSummary>,
    evaluations: u64,
}

impl BestTracker {
    /// Records `candidate` if it is strictly better than the current best.
    pub fn offer(&mut self, candidate: &CandidateSolution, at: u64) -> bool {
        let better = match &self.best {
            None => candidate.fitness.is_some(),
            Some(best) => candidate.is_better_than(best),
        };
        if better {
            self.best = Some(candidate.clone());
            self.trace.push((at, candidate.fitness_or_inf()));
        }
        better
    }

    pub fn best(&self) -> Option<&CandidateSolution> {
        self.best.as_ref()
    }

    pub fn best_fitness(&self) -> f64 {
        self.best.as_ref().map_or(f64::INFINITY, |b| b.fitness_or_inf())
    }

    /// `(evaluation index, best fitness)` at every improvement.
    pub fn trace(&self) -> &[(u64, f64)] {
        &self.trace
    }

    pub fn epochs(&self) -> &[EpochSummary] {
        &self.epochs
    }

    /// Evaluations consumed by the whole run.
    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    /// Best fitness known after `evaluation` evaluations (`+inf` before the
    /// first one).
    pub fn best_at(&self, evaluation: u64) -> f64 {
        match self.trace.partition_point(|(at, _)| *at <= evaluation) {
            0 => f64::INFINITY,
            k => self.trace[k - 1].1,
        }
    }
}

/// Exponential-crossover inheritance: a cyclic block of `x_best` copied into
/// `x_rand`, starting at a uniform index in `[0, D)`.
pub fn ri_recombine(
    x_rand: &[f64],
    x_best: &[f64],
    cr: f64,
    rng: &mut RandomSource,
) -> Vec<f64> {
    ri_recombine_counted(x_rand, x_best, cr, rng).0
}

fn ri_recombine_counted(
    x_rand: &[f64],
    x_best: &[f64],
    cr: f64,
    rng: &mut RandomSource,
) -> (Vec<f64>, usize) {
    let dim = x_rand.len();
    let len = exp_xover_length(cr, dim, rng);
    let start = rng.index(dim);
    (exp_crossover(x_best, x_rand, len, start), len)
}

fn evaluated(eval: &mut Evaluator<'_>, coords: Vec<f64>) -> Result<CandidateSolution> {
    let f = eval.evaluate(&coords)?;
    Ok(CandidateSolution::evaluated(coords, f))
}

/// Engine wrapped with re-sampled inheritance.
pub fn run_with_ri(
    engine: &EngineConfig,
    objective: &dyn Objective,
    total_budget: u64,
    wrapper: &WrapperConfig,
    rng: &mut RandomSource,
) -> Result<BestTracker> {
    run_restarts(engine, objective, total_budget, wrapper, true, rng)
}

/// Engine wrapped with uniform random restarts.
pub fn run_with_random_restart(
    engine: &EngineConfig,
    objective: &dyn Objective,
    total_budget: u64,
    wrapper: &WrapperConfig,
    rng: &mut RandomSource,
) -> Result<BestTracker> {
    run_restarts(engine, objective, total_budget, wrapper, false, rng)
}

fn run_restarts(
    engine: &EngineConfig,
    objective: &dyn Objective,
    total_budget: u64,
    wrapper: &WrapperConfig,
    inherit: bool,
    rng: &mut RandomSource,
) -> Result<BestTracker> {
    wrapper.validate()?;
    engine.validate()?;
    let dim = objective.dimension();
    let epoch_len = wrapper.epoch_length(total_budget);
    if total_budget < epoch_len {
        return Err(Error::InvalidArgument(format!(
            "budget {total_budget} is shorter than one epoch"
        )));
    }
    let cr = match wrapper.crossover_rate {
        Some(cr) => cr,
        None => cr_from_alpha(wrapper.ri_alpha, dim)?,
    };

    let mut eval = Evaluator::new(objective, total_budget)?;
    let mut tracker = BestTracker::default();

    let x = evaluated(&mut eval, rng.uniform_point(dim))?;
    tracker.offer(&x, eval.budget().consumed());
    let mut center_fitness = x.fitness;
    let mut center = x.coords;
    let mut inherited = None;

    while eval.budget().remaining_total() > 0 {
        let start = eval.budget().consumed();
        eval.budget_mut().set_stop_at(Some(start + epoch_len));
        let mut e = Engine::init(engine, &mut eval, rng, Some(&center))?;
        let elite = e.run(&mut eval, rng)?.clone();
        eval.budget_mut().set_stop_at(None);
        let end = eval.budget().consumed();
        tracker.offer(&elite, end);
        tracker.epochs.push(EpochSummary {
            start,
            end,
            center: Some(center.clone()),
            center_fitness,
            elite_fitness: elite.fitness_or_inf(),
            inherited,
        });

        if eval.budget().remaining_total() == 0 {
            break;
        }
        let x_rand = rng.uniform_point(dim);
        let next = if inherit {
            let best = tracker.best().expect("best is set after the first evaluation");
            let (x, len) = ri_recombine_counted(&x_rand, &best.coords, cr, rng);
            inherited = Some(len);
            x
        } else {
            x_rand
        };
        let x = evaluated(&mut eval, next)?;
        tracker.offer(&x, eval.budget().consumed());
        center_fitness = x.fitness;
        center = x.coords;
    }
    tracker.evaluations = eval.budget().consumed();
    Ok(tracker)
}

/// The engine alone, started from `mu = 0`, for the whole budget.
pub fn run_bare(
    engine: &EngineConfig,
    objective: &dyn Objective,
    total_budget: u64,
    rng: &mut RandomSource,
) -> Result<BestTracker> {
    let mut eval = Evaluator::new(objective, total_budget)?;
    let mut tracker = BestTracker::default();
    let mut e = Engine::init(engine, &mut eval, rng, None)?;
    tracker.offer(e.elite(), eval.budget().consumed());
    loop {
        match e.step(&mut eval, rng) {
            Ok(()) => {
                tracker.offer(e.elite(), eval.budget().consumed());
            }
            Err(err) if err.is_budget_exhausted() => break,
            Err(err) => return Err(err),
        }
    }
    tracker.epochs.push(EpochSummary {
        start: 0,
        end: eval.budget().consumed(),
        center: None,
        center_fitness: None,
        elite_fitness: e.elite().fitness_or_inf(),
        inherited: None,
    });
    tracker.evaluations = eval.budget().consumed();
    Ok(tracker)
}

/// Uniform samples of the search space, keeping the best.
pub fn run_random_walk(
    objective: &dyn Objective,
    total_budget: u64,
    rng: &mut RandomSource,
) -> Result<BestTracker> {
    let dim = objective.dimension();
    let mut eval = Evaluator::new(objective, total_budget)?;
    let mut tracker = BestTracker::default();
    while eval.budget().remaining_total() > 0 {
        let x = evaluated(&mut eval, rng.uniform_point(dim))?;
        tracker.offer(&x, eval.budget().consumed());
    }
    tracker.evaluations = eval.budget().consumed();
    Ok(tracker)
}

/// Dispatches on `wrapper.mode`. `engine` is ignored for the random walk and
/// required otherwise.
pub fn run_wrapped(
    engine: Option<&EngineConfig>,
    objective: &dyn Objective,
    total_budget: u64,
    wrapper: &WrapperConfig,
    rng: &mut RandomSource,
) -> Result<BestTracker> {
    let need_engine = || {
        engine.ok_or_else(|| Error::InvalidArgument("wrapper mode needs an engine".into()))
    };
    match wrapper.mode {
        WrapperMode::RandomWalk => run_random_walk(objective, total_budget, rng),
        WrapperMode::None => run_bare(need_engine()?, objective, total_budget, rng),
        WrapperMode::ResampledInheritance => {
            run_with_ri(need_engine()?, objective, total_budget, wrapper, rng)
        }
        WrapperMode::RandomRestart => {
            run_with_random_restart(need_engine()?, objective, total_budget, wrapper, rng)
        }
    }
}
