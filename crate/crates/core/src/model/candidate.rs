/// A point of the normalized space `[-1, 1]^D` with its fitness, once known.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSolution {
    pub coords: Vec<f64>,
    pub fitness: Option<f64>,
}

impl CandidateSolution {
    pub fn unevaluated(coords: Vec<f64>) -> Self {
        Self {
            coords,
            fitness: None,
        }
    }

    pub fn evaluated(coords: Vec<f64>, fitness: f64) -> Self {
        Self {
            coords,
            fitness: Some(fitness),
        }
    }

    /// Fitness, or `+inf` when not evaluated yet.
    pub fn fitness_or_inf(&self) -> f64 {
        self.fitness.unwrap_or(f64::INFINITY)
    }

    /// Strictly better under minimization. Ties keep the incumbent, so an
    /// equal fitness is never "better".
    pub fn is_better_than(&self, other: &CandidateSolution) -> bool {
        self.fitness_or_inf() < other.fitness_or_inf()
    }
}
