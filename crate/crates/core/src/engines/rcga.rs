use super::{Engine, RcgaCrossover, RcgaParams};
use crate::error::Result;
use crate::model::{CandidateSolution, Evaluator};
use crate::rng::RandomSource;

/// Binomial mask over `dim` genes: `true` keeps the sampled gene (probability
/// `p_gene`), `false` takes the elite's. One uniformly chosen gene is forced
/// to `true`.
pub fn binomial_mask(dim: usize, p_gene: f64, rng: &mut RandomSource) -> Vec<bool> {
    let mut mask: Vec<bool> = (0..dim).map(|_| rng.uniform() < p_gene).collect();
    let forced = rng.index(dim);
    mask[forced] = true;
    mask
}

impl Engine {
    pub(super) fn rcga_step(
        &mut self,
        params: RcgaParams,
        eval: &mut Evaluator<'_>,
        rng: &mut RandomSource,
    ) -> Result<()> {
        let mut coords = self.pv.sample(rng).coords;
        if let RcgaCrossover::Binomial { p_gene } = params.crossover {
            let mask = binomial_mask(coords.len(), p_gene, rng);
            for ((c, keep), e) in coords.iter_mut().zip(mask).zip(&self.elite.coords) {
                if !keep {
                    *c = *e;
                }
            }
        }
        let fitness = eval.evaluate(&coords)?;
        self.compete(CandidateSolution::evaluated(coords, fitness))?;
        Ok(())
    }
}
