use super::{clamp_unit, CbfoParams, Engine, EngineExtras};
use crate::error::Result;
use crate::model::{CandidateSolution, Evaluator};
use crate::rng::RandomSource;

/// Random unit direction: uniform in `[-1, 1]^D`, then normalized.
fn tumble_direction(dim: usize, rng: &mut RandomSource) -> Vec<f64> {
    loop {
        let delta = rng.uniform_point(dim);
        let norm = delta.iter().map(|d| d * d).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return delta.into_iter().map(|d| d / norm).collect();
        }
    }
}

fn advance(from: &[f64], direction: &[f64], step: f64) -> Vec<f64> {
    let mut x: Vec<f64> = from
        .iter()
        .zip(direction)
        .map(|(x, d)| x + step * d)
        .collect();
    clamp_unit(&mut x);
    x
}

impl Engine {
    pub(super) fn cbfo_step(
        &mut self,
        params: CbfoParams,
        eval: &mut Evaluator<'_>,
        rng: &mut RandomSource,
    ) -> Result<()> {
        let start = self.pv.sample(rng).coords;
        let direction = tumble_direction(start.len(), rng);
        self.chemotaxis(&start, &direction, params, eval)?;
        Ok(())
    }

    /// Tumble from `start` along `direction`, then keep swimming the same way
    /// for up to `max_run` moves while each move beats the elite. Every move
    /// is one evaluation followed by a winner/loser update. A run cut short
    /// by the budget ends the step normally. Returns evaluations spent.
    pub(crate) fn chemotaxis(
        &mut self,
        start: &[f64],
        direction: &[f64],
        params: CbfoParams,
        eval: &mut Evaluator<'_>,
    ) -> Result<usize> {
        let mut position = advance(start, direction, params.step_size);
        let fitness = eval.evaluate(&position)?;
        let mut spent = 1;
        let mut improved = self.compete(CandidateSolution::evaluated(position.clone(), fitness))?;
        let mut run = 0;
        while improved && run < params.max_run && !eval.budget().is_exhausted() {
            position = advance(&position, direction, params.step_size);
            let fitness = eval.evaluate(&position)?;
            spent += 1;
            improved = self.compete(CandidateSolution::evaluated(position.clone(), fitness))?;
            if improved {
                run += 1;
            } else {
                break;
            }
        }
        let tumbles = match &self.extras {
            EngineExtras::Bfo { tumbles, .. } => *tumbles + 1,
            _ => 1,
        };
        self.extras = EngineExtras::Bfo {
            position,
            last_run: run,
            tumbles,
        };
        Ok(spent)
    }
}
