use crate::error::{Error, Result};

/// Box bounds of the decision space. Engines work in `[-1, 1]^D` and map
/// through this type only when calling the objective.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl SearchSpace {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() {
            return Err(Error::InvalidArgument("search space needs D >= 1".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        for (i, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::InvalidArgument(format!(
                    "bounds at index {i} must satisfy lower < upper, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same interval `[lower, upper]` on every axis.
    pub fn uniform(dim: usize, lower: f64, upper: f64) -> Result<Self> {
        Self::new(vec![lower; dim], vec![upper; dim])
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn midpoint(&self) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| 0.5 * (lo + hi))
            .collect()
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dimension() {
            return Err(Error::DimensionMismatch {
                expected: self.dimension(),
                actual: len,
            });
        }
        Ok(())
    }

    /// Maps a decision-space point into `[-1, 1]^D`.
    pub fn normalize(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_len(x.len())?;
        x.iter()
            .enumerate()
            .map(|(i, &v)| {
                let (lo, hi) = (self.lower[i], self.upper[i]);
                if !(lo..=hi).contains(&v) {
                    return Err(Error::OutOfBounds { index: i, value: v });
                }
                Ok((2.0 * (v - lo) / (hi - lo) - 1.0).clamp(-1.0, 1.0))
            })
            .collect()
    }

    /// Inverse of [`normalize`](Self::normalize).
    pub fn denormalize(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; x.len()];
        self.denormalize_into(x, &mut out)?;
        Ok(out)
    }

    pub(crate) fn denormalize_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        self.check_len(x.len())?;
        for (i, &v) in x.iter().enumerate() {
            if !(-1.0..=1.0).contains(&v) {
                return Err(Error::OutOfBounds { index: i, value: v });
            }
            let (lo, hi) = (self.lower[i], self.upper[i]);
            out[i] = (lo + 0.5 * (v + 1.0) * (hi - lo)).clamp(lo, hi);
        }
        Ok(())
    }
}
