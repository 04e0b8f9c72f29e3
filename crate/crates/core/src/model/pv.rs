use std::f64::consts::SQRT_2;

use super::CandidateSolution;
use crate::error::{Error, Result};
use crate::rng::RandomSource;
use crate::special::{erf, erf_inv};

/// Floor applied to every standard deviation after an update.
pub const DEFAULT_SIGMA_MIN: f64 = 1e-6;

/// What to do with a mean that the update pushes outside `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MeanBoundary {
    #[default]
    Clamp,
    /// Mirror back into the box (`1.2 -> 0.8`), then clamp.
    Reflect,
}

impl MeanBoundary {
    fn apply(self, m: f64) -> f64 {
        match self {
            MeanBoundary::Clamp => m.clamp(-1.0, 1.0),
            MeanBoundary::Reflect => {
                let r = if m > 1.0 {
                    2.0 - m
                } else if m < -1.0 {
                    -2.0 - m
                } else {
                    m
                };
                r.clamp(-1.0, 1.0)
            }
        }
    }
}

/// Per-dimension truncated Gaussian model over `[-1, 1]^D`: the whole
/// "population" of a compact algorithm.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    mu: Vec<f64>,
    sigma: Vec<f64>,
    virtual_population: usize,
    sigma_min: f64,
    boundary: MeanBoundary,
}

impl ProbabilityVector {
    /// `mu = 0`, `sigma = lambda` on every axis.
    pub fn init(dim: usize, lambda: f64, virtual_population: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "initial sigma must be positive, got {lambda}"
            )));
        }
        Self::from_parts(vec![0.0; dim], vec![lambda; dim], virtual_population)
    }

    /// Builds a vector from explicit means and deviations. Deviations only
    /// need to be positive here; the floor is enforced by [`update`](Self::update).
    pub fn from_parts(mu: Vec<f64>, sigma: Vec<f64>, virtual_population: usize) -> Result<Self> {
        if mu.is_empty() {
            return Err(Error::InvalidArgument("dimension must be >= 1".into()));
        }
        if mu.len() != sigma.len() {
            return Err(Error::DimensionMismatch {
                expected: mu.len(),
                actual: sigma.len(),
            });
        }
        if virtual_population == 0 {
            return Err(Error::InvalidArgument(
                "virtual population must be >= 1".into(),
            ));
        }
        if let Some((i, &m)) = mu
            .iter()
            .enumerate()
            .find(|(_, m)| !(-1.0..=1.0).contains(*m))
        {
            return Err(Error::OutOfBounds { index: i, value: m });
        }
        if sigma.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
            return Err(Error::InvalidArgument(
                "standard deviations must be positive and finite".into(),
            ));
        }
        Ok(Self {
            mu,
            sigma,
            virtual_population,
            sigma_min: DEFAULT_SIGMA_MIN,
            boundary: MeanBoundary::Clamp,
        })
    }

    pub fn with_sigma_min(mut self, sigma_min: f64) -> Self {
        self.sigma_min = sigma_min;
        self
    }

    pub fn with_boundary(mut self, boundary: MeanBoundary) -> Self {
        self.boundary = boundary;
        self
    }

    /// Re-centers the model on `mu` (a point of `[-1, 1]^D`).
    pub fn set_mu(&mut self, mu: &[f64]) -> Result<()> {
        if mu.len() != self.mu.len() {
            return Err(Error::DimensionMismatch {
                expected: self.mu.len(),
                actual: mu.len(),
            });
        }
        if let Some((i, &m)) = mu
            .iter()
            .enumerate()
            .find(|(_, m)| !(-1.0..=1.0).contains(*m))
        {
            return Err(Error::OutOfBounds { index: i, value: m });
        }
        self.mu.copy_from_slice(mu);
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn sigma(&self) -> &[f64] {
        &self.sigma
    }

    pub fn virtual_population(&self) -> usize {
        self.virtual_population
    }

    pub fn sigma_min(&self) -> f64 {
        self.sigma_min
    }

    /// Draws one unevaluated candidate, each coordinate from its truncated
    /// Gaussian.
    pub fn sample(&self, rng: &mut RandomSource) -> CandidateSolution {
        self.sample_scaled(1.0, rng)
    }

    /// Like [`sample`](Self::sample) with every deviation multiplied by
    /// `scale`.
    pub fn sample_scaled(&self, scale: f64, rng: &mut RandomSource) -> CandidateSolution {
        let coords = self
            .mu
            .iter()
            .zip(&self.sigma)
            .map(|(&m, &s)| sample_truncated_normal(m, s * scale, rng))
            .collect();
        CandidateSolution::unevaluated(coords)
    }

    /// Moves the model toward `winner` and away from `loser`:
    ///
    /// ```text
    /// mu'    = mu + (w - l) / Np
    /// sigma' = sqrt(max(sigma_min^2, sigma^2 + mu^2 - mu'^2 + (w^2 - l^2) / Np))
    /// ```
    ///
    /// `sigma'` uses the raw `mu'`; the mean is brought back into the box
    /// afterwards.
    pub fn update(&mut self, winner: &[f64], loser: &[f64]) -> Result<()> {
        let d = self.dimension();
        for len in [winner.len(), loser.len()] {
            if len != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    actual: len,
                });
            }
        }
        let np = self.virtual_population as f64;
        let floor = self.sigma_min * self.sigma_min;
        for i in 0..d {
            let (w, l) = (winner[i], loser[i]);
            if w == l {
                continue;
            }
            let mu = self.mu[i];
            let s = self.sigma[i];
            let mu_new = mu + (w - l) / np;
            let var = s * s + mu * mu - mu_new * mu_new + (w * w - l * l) / np;
            self.sigma[i] = var.max(floor).sqrt();
            self.mu[i] = self.boundary.apply(mu_new);
        }
        Ok(())
    }
}

/// Inverse-CDF map from a uniform `u` in `(0, 1)` to the Gaussian
/// `N(mu, sigma)` truncated to `[-1, 1]`. Non-decreasing in `u`.
pub fn truncated_normal_from_uniform(mu: f64, sigma: f64, u: f64) -> f64 {
    let scale = sigma * SQRT_2;
    let ea = erf((-1.0 - mu) / scale);
    let eb = erf((1.0 - mu) / scale);
    let y = ((1.0 - u) * ea + u * eb).clamp(-1.0, 1.0);
    let x = mu + scale * erf_inv(y);
    if x.is_nan() {
        return mu.clamp(-1.0, 1.0);
    }
    x.clamp(-1.0, 1.0)
}

pub fn sample_truncated_normal(mu: f64, sigma: f64, rng: &mut RandomSource) -> f64 {
    truncated_normal_from_uniform(mu, sigma, rng.uniform_open())
}
