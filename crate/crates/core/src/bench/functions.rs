use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Base functions, written so that `f(0) = 0` is the global minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseFunction {
    Sphere,
    Elliptic,
    Rastrigin,
    Rosenbrock,
    Ackley,
    Griewank,
    #[serde(rename = "schwefel_1_2")]
    Schwefel12,
    BentCigar,
}

impl BaseFunction {
    pub const ALL: [BaseFunction; 8] = [
        BaseFunction::Sphere,
        BaseFunction::Elliptic,
        BaseFunction::Rastrigin,
        BaseFunction::Rosenbrock,
        BaseFunction::Ackley,
        BaseFunction::Griewank,
        BaseFunction::Schwefel12,
        BaseFunction::BentCigar,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BaseFunction::Sphere => "sphere",
            BaseFunction::Elliptic => "elliptic",
            BaseFunction::Rastrigin => "rastrigin",
            BaseFunction::Rosenbrock => "rosenbrock",
            BaseFunction::Ackley => "ackley",
            BaseFunction::Griewank => "griewank",
            BaseFunction::Schwefel12 => "schwefel_1_2",
            BaseFunction::BentCigar => "bent_cigar",
        }
    }

    /// Separable when not rotated.
    pub fn is_separable(&self) -> bool {
        matches!(
            self,
            BaseFunction::Sphere
                | BaseFunction::Elliptic
                | BaseFunction::Rastrigin
                | BaseFunction::BentCigar
        )
    }

    pub fn is_multimodal(&self) -> bool {
        matches!(
            self,
            BaseFunction::Rastrigin
                | BaseFunction::Ackley
                | BaseFunction::Griewank
                | BaseFunction::Rosenbrock
        )
    }

    /// Whether the generated suite rotates this function. Sphere and
    /// Rastrigin stay separable.
    pub fn rotated_by_default(&self) -> bool {
        !matches!(self, BaseFunction::Sphere | BaseFunction::Rastrigin)
    }

    pub fn eval(&self, z: &[f64]) -> f64 {
        let d = z.len();
        match self {
            BaseFunction::Sphere => z.iter().map(|v| v * v).sum(),
            BaseFunction::Elliptic => {
                if d == 1 {
                    return z[0] * z[0];
                }
                z.iter()
                    .enumerate()
                    .map(|(i, v)| 1e6f64.powf(i as f64 / (d - 1) as f64) * v * v)
                    .sum()
            }
            BaseFunction::Rastrigin => z
                .iter()
                .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
                .sum(),
            BaseFunction::Rosenbrock => {
                // shifted by one so the optimum sits at z = 0
                let mut s = 0.0;
                for i in 0..d.saturating_sub(1) {
                    let a = z[i] + 1.0;
                    let b = z[i + 1] + 1.0;
                    s += 100.0 * (a * a - b).powi(2) + (a - 1.0).powi(2);
                }
                s
            }
            BaseFunction::Ackley => {
                let n = d as f64;
                let sq = z.iter().map(|v| v * v).sum::<f64>() / n;
                let cs = z.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
                (-20.0 * (-0.2 * sq.sqrt()).exp() - cs.exp() + 20.0 + E).max(0.0)
            }
            BaseFunction::Griewank => {
                let s = z.iter().map(|v| v * v).sum::<f64>() / 4000.0;
                let p = z
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
                    .product::<f64>();
                s - p + 1.0
            }
            BaseFunction::Schwefel12 => {
                let mut partial = 0.0;
                let mut s = 0.0;
                for v in z {
                    partial += v;
                    s += partial * partial;
                }
                s
            }
            BaseFunction::BentCigar => {
                z[0] * z[0] + 1e6 * z[1..].iter().map(|v| v * v).sum::<f64>()
            }
        }
    }
}

impl fmt::Display for BaseFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BaseFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BaseFunction::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFunction(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_is_optimal() {
        for f in BaseFunction::ALL {
            for d in [1, 2, 10] {
                let v = f.eval(&vec![0.0; d]);
                assert!(v.abs() < 1e-12, "{f} D={d}: {v}");
                if f == BaseFunction::Rosenbrock && d == 1 {
                    continue;
                }
                let mut probe = vec![0.0; d];
                probe[0] = 0.3;
                assert!(f.eval(&probe) > v, "{f} D={d}");
            }
        }
    }

    #[test]
    fn rastrigin_at_ones() {
        let v = BaseFunction::Rastrigin.eval(&[1.0; 10]);
        assert!((v - 10.0).abs() < 1e-9, "{v}");
    }

    #[test]
    fn names_round_trip() {
        for f in BaseFunction::ALL {
            assert_eq!(f.name().parse::<BaseFunction>().unwrap(), f);
        }
        assert!("nope".parse::<BaseFunction>().is_err());
    }
}
