use std::sync::atomic::{AtomicU64, Ordering};

use super::SearchSpace;
use crate::error::{Error, Result};

/// A black-box objective evaluated in decision space.
pub trait Objective: Sync {
    fn space(&self) -> &SearchSpace;

    fn evaluate(&self, x: &[f64]) -> Result<f64>;

    fn dimension(&self) -> usize {
        self.space().dimension()
    }
}

/// Wraps an objective and counts every call that reaches it. Used to audit
/// [`BudgetCounter`] against what the objective actually saw.
pub struct CountingObjective<'a> {
    inner: &'a dyn Objective,
    calls: AtomicU64,
}

impl<'a> CountingObjective<'a> {
    pub fn new(inner: &'a dyn Objective) -> Self {
        Self {
            inner,
            calls: AtomicU64::new(0),
        }
    }

    pub fn calls(&self) -> u64 {
        self.calls.load(Ordering::Relaxed)
    }
}

impl Objective for CountingObjective<'_> {
    fn space(&self) -> &SearchSpace {
        self.inner.space()
    }

    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.calls.fetch_add(1, Ordering::Relaxed);
        self.inner.evaluate(x)
    }
}

/// Evaluation accounting: `consumed <= limit` always holds.
///
/// An optional `stop_at` mark caps the current epoch below the overall
/// limit; it is what lets a restart wrapper hand the engine a slice of the
/// budget.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetCounter {
    consumed: u64,
    limit: u64,
    stop_at: Option<u64>,
}

impl BudgetCounter {
    pub fn new(limit: u64) -> Result<Self> {
        if limit == 0 {
            return Err(Error::InvalidArgument("budget limit must be positive".into()));
        }
        Ok(Self {
            consumed: 0,
            limit,
            stop_at: None,
        })
    }

    pub fn consumed(&self) -> u64 {
        self.consumed
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// The effective ceiling: the epoch mark if set, else the limit.
    pub fn ceiling(&self) -> u64 {
        self.stop_at.map_or(self.limit, |s| s.min(self.limit))
    }

    /// Evaluations left before the overall limit.
    pub fn remaining_total(&self) -> u64 {
        self.limit - self.consumed
    }

    /// Evaluations left in the current epoch.
    pub fn remaining(&self) -> u64 {
        self.ceiling().saturating_sub(self.consumed)
    }

    pub fn is_exhausted(&self) -> bool {
        self.remaining() == 0
    }

    pub fn set_stop_at(&mut self, mark: Option<u64>) {
        self.stop_at = mark;
    }

    /// Reserves one evaluation.
    pub fn try_consume(&mut self) -> Result<()> {
        if self.is_exhausted() {
            return Err(Error::BudgetExhausted {
                consumed: self.consumed,
            });
        }
        self.consumed += 1;
        Ok(())
    }
}

/// Evaluates normalized candidates against an objective while charging the
/// budget. One evaluator per run.
pub struct Evaluator<'a> {
    objective: &'a dyn Objective,
    budget: BudgetCounter,
    scratch: Vec<f64>,
}

impl<'a> Evaluator<'a> {
    pub fn new(objective: &'a dyn Objective, limit: u64) -> Result<Self> {
        Ok(Self {
            objective,
            budget: BudgetCounter::new(limit)?,
            scratch: vec![0.0; objective.dimension()],
        })
    }

    pub fn dimension(&self) -> usize {
        self.objective.dimension()
    }

    pub fn budget(&self) -> &BudgetCounter {
        &self.budget
    }

    pub fn budget_mut(&mut self) -> &mut BudgetCounter {
        &mut self.budget
    }

    /// Evaluates a point of `[-1, 1]^D`. Fails with
    /// [`Error::BudgetExhausted`] without touching the objective when the
    /// current epoch has no evaluations left.
    pub fn evaluate(&mut self, coords: &[f64]) -> Result<f64> {
        if self.budget.is_exhausted() {
            return Err(Error::BudgetExhausted {
                consumed: self.budget.consumed(),
            });
        }
        self.objective
            .space()
            .denormalize_into(coords, &mut self.scratch)?;
        self.budget.try_consume()?;
        self.objective.evaluate(&self.scratch)
    }
}
