use super::{clamp_unit, CpsoParams, Engine, EngineExtras};
use crate::error::Result;
use crate::model::{CandidateSolution, Evaluator};
use crate::rng::RandomSource;

/// Compact PSO velocity update, per dimension `i`:
///
/// ```text
/// v'_i = phi1 v_i + phi2 u1_i (lb_i - gamma1 x_i) + phi3 u2_i (gb_i - gamma2 x_i)
/// ```
///
/// `local_best` is a sample from the model standing in for a neighbour's
/// best; `global_best` is the elite.
pub fn pso_velocity(
    params: &CpsoParams,
    velocity: &[f64],
    position: &[f64],
    local_best: &[f64],
    global_best: &[f64],
    u1: &[f64],
    u2: &[f64],
) -> Vec<f64> {
    (0..velocity.len())
        .map(|i| {
            params.phi1 * velocity[i]
                + params.phi2 * u1[i] * (local_best[i] - params.gamma1 * position[i])
                + params.phi3 * u2[i] * (global_best[i] - params.gamma2 * position[i])
        })
        .collect()
}

impl Engine {
    pub(super) fn cpso_step(
        &mut self,
        params: CpsoParams,
        eval: &mut Evaluator<'_>,
        rng: &mut RandomSource,
    ) -> Result<()> {
        let EngineExtras::Pso { position, velocity } = &self.extras else {
            unreachable!("cPSO engine without particle state");
        };
        let dim = position.len();
        let local_best = self.pv.sample(rng).coords;
        let u1: Vec<f64> = (0..dim).map(|_| rng.uniform()).collect();
        let u2: Vec<f64> = (0..dim).map(|_| rng.uniform()).collect();
        let new_velocity = pso_velocity(
            &params,
            velocity,
            position,
            &local_best,
            &self.elite.coords,
            &u1,
            &u2,
        );
        let mut new_position: Vec<f64> = position
            .iter()
            .zip(&new_velocity)
            .map(|(x, v)| x + v)
            .collect();
        clamp_unit(&mut new_position);

        let fitness = eval.evaluate(&new_position)?;
        self.extras = EngineExtras::Pso {
            position: new_position.clone(),
            velocity: new_velocity,
        };
        self.compete(CandidateSolution::evaluated(new_position, fitness))?;
        Ok(())
    }
}
