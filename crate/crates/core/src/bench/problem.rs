use super::{BaseFunction, Rotation};
use crate::error::{Error, Result};
use crate::model::{Objective, SearchSpace};

/// A base function placed in a box, optionally shifted by `o` and rotated
/// by `M`: `f(x) = base(M (x - o))`.
#[derive(Debug, Clone)]
pub struct Problem {
    id: String,
    function: BaseFunction,
    space: SearchSpace,
    shift: Option<Vec<f64>>,
    rotation: Option<Rotation>,
}

impl Problem {
    pub fn new(
        id: impl Into<String>,
        function: BaseFunction,
        space: SearchSpace,
        shift: Option<Vec<f64>>,
        rotation: Option<Rotation>,
    ) -> Result<Self> {
        let dim = space.dimension();
        if let Some(o) = &shift {
            if o.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: o.len(),
                });
            }
            for (i, v) in o.iter().enumerate() {
                if !(space.lower()[i] < *v && *v < space.upper()[i]) {
                    return Err(Error::OutOfBounds { index: i, value: *v });
                }
            }
        }
        if let Some(m) = &rotation {
            if m.dimension() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    actual: m.dimension(),
                });
            }
            if m.orthogonality_error() > 1e-9 {
                return Err(Error::InvalidArgument("rotation is not orthogonal".into()));
            }
        }
        Ok(Self {
            id: id.into(),
            function,
            space,
            shift,
            rotation,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn function(&self) -> BaseFunction {
        self.function
    }

    pub fn shift(&self) -> Option<&[f64]> {
        self.shift.as_deref()
    }

    pub fn rotation(&self) -> Option<&Rotation> {
        self.rotation.as_ref()
    }

    pub fn is_rotated(&self) -> bool {
        self.rotation.is_some()
    }

    pub fn is_separable(&self) -> bool {
        self.rotation.is_none() && self.function.is_separable()
    }

    /// The global minimizer in decision space.
    pub fn optimum(&self) -> Vec<f64> {
        match &self.shift {
            Some(o) => o.clone(),
            None => vec![0.0; self.space.dimension()],
        }
    }
}

impl Objective for Problem {
    fn space(&self) -> &SearchSpace {
        &self.space
    }

    fn evaluate(&self, x: &[f64]) -> Result<f64> {
        let dim = self.space.dimension();
        if x.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: x.len(),
            });
        }
        let mut z = Vec::with_capacity(dim);
        for (i, v) in x.iter().enumerate() {
            if !(self.space.lower()[i]..=self.space.upper()[i]).contains(v) {
                return Err(Error::OutOfBounds { index: i, value: *v });
            }
            z.push(v - self.shift.as_ref().map_or(0.0, |o| o[i]));
        }
        Ok(match &self.rotation {
            Some(m) => self.function.eval(&m.apply(&z)),
            None => self.function.eval(&z),
        })
    }
}
