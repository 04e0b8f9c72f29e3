//! The probability-vector model shared by every compact engine, plus the
//! normalized search space, candidate solutions and evaluation accounting.

mod budget;
mod candidate;
mod pv;
mod space;

pub use budget::{BudgetCounter, CountingObjective, Evaluator, Objective};
pub use candidate::CandidateSolution;
pub use pv::{
    sample_truncated_normal, truncated_normal_from_uniform, MeanBoundary, ProbabilityVector,
    DEFAULT_SIGMA_MIN,
};
pub use space::SearchSpace;
