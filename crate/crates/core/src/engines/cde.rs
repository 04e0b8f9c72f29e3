use super::{exp_crossover, exp_xover_length, CdeLightParams, Engine};
use crate::error::Result;
use crate::model::{CandidateSolution, Evaluator, ProbabilityVector};
use crate::rng::RandomSource;

/// Light rand/1 mutant: one draw per coordinate from the model with the
/// deviation inflated by `sqrt(1 + 2F^2)`, the spread of
/// `x_r1 + F (x_r2 - x_r3)` for three independent samples.
pub fn cde_mutant(pv: &ProbabilityVector, scale_factor: f64, rng: &mut RandomSource) -> Vec<f64> {
    let inflate = (1.0 + 2.0 * scale_factor * scale_factor).sqrt();
    pv.sample_scaled(inflate, rng).coords
}

impl Engine {
    pub(super) fn cde_light_step(
        &mut self,
        params: CdeLightParams,
        eval: &mut Evaluator<'_>,
        rng: &mut RandomSource,
    ) -> Result<()> {
        let dim = self.pv.dimension();
        let mutant = cde_mutant(&self.pv, params.scale_factor, rng);
        let len = exp_xover_length(self.crossover_rate, dim, rng);
        let start = rng.index(dim);
        let coords = exp_crossover(&mutant, &self.elite.coords, len, start);
        let fitness = eval.evaluate(&coords)?;
        self.compete(CandidateSolution::evaluated(coords, fitness))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::test_support::Sphere;
    use crate::engines::EngineConfig;

    #[test]
    fn mutant_collapses_on_mean() {
        let pv = ProbabilityVector::from_parts(vec![0.3, -0.7], vec![1e-12; 2], 300).unwrap();
        let mut rng = RandomSource::new(2);
        for _ in 0..100 {
            let m = cde_mutant(&pv, 0.5, &mut rng);
            assert!((m[0] - 0.3).abs() < 1e-9 && (m[1] + 0.7).abs() < 1e-9);
        }
    }

    #[test]
    fn mutant_spread_matches_inflated_sigma() {
        let pv = ProbabilityVector::from_parts(vec![0.0], vec![0.2], 300).unwrap();
        let mut rng = RandomSource::new(4);
        let n = 100_000;
        let xs: Vec<f64> = (0..n).map(|_| cde_mutant(&pv, 0.5, &mut rng)[0]).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let expected = 0.2 * 1.5f64.sqrt();
        assert!((1.5f64.sqrt() - 1.224_745).abs() < 1e-6);
        assert!((var.sqrt() / expected - 1.0).abs() < 0.02, "std {}", var.sqrt());
        assert!((var / 0.04 / 1.5 - 1.0).abs() < 0.05);
    }

    #[test]
    fn one_step_one_evaluation_and_elite_rule() {
        let p = Sphere::new(8);
        let mut ev = Evaluator::new(&p, 10_000).unwrap();
        let mut rng = RandomSource::new(3);
        let mut e = Engine::init(&EngineConfig::cde_light(), &mut ev, &mut rng, None).unwrap();
        for _ in 0..200 {
            let before = ev.budget().consumed();
            let elite = e.elite().clone();
            let mu = e.pv().mu().to_vec();
            e.step(&mut ev, &mut rng).unwrap();
            assert_eq!(ev.budget().consumed(), before + 1);
            if e.elite() != &elite {
                // trial won: the mean moved by (trial - old elite) / Np
                assert!(e.elite().fitness.unwrap() < elite.fitness.unwrap());
                for (i, m) in mu.iter().enumerate() {
                    let expected = m + (e.elite().coords[i] - elite.coords[i]) / 300.0;
                    assert!((e.pv().mu()[i] - expected.clamp(-1.0, 1.0)).abs() < 1e-12);
                }
            }
        }
    }
}
