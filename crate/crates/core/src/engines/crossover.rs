//! Exponential crossover: a cyclic block of coordinates copied from a donor,
//! with a block length that follows a geometric law capped at `D`.

use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Crossover rate such that a block of `D * alpha` copied variables occurs
/// with probability 1/2: `Cr = 2^(-1 / (D * alpha))`.
pub fn cr_from_alpha(alpha: f64, dim: usize) -> Result<f64> {
    let da = alpha * dim as f64;
    if !(da > 0.0 && da.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "alpha * D must be positive, got {da}"
        )));
    }
    Ok(2f64.powf(-1.0 / da))
}

/// Samples the block length `L` in `[1, D]` with `P(L >= k) = Cr^(k-1)`.
///
/// Closed form of the copy loop: `G = 1 + floor(ln u / ln Cr)` with `u` in
/// `(0, 1)`, capped at `D`.
pub fn exp_xover_length(cr: f64, dim: usize, rng: &mut RandomSource) -> usize {
    debug_assert!(dim >= 1);
    if cr >= 1.0 {
        return dim;
    }
    if cr <= 0.0 || dim == 1 {
        return 1;
    }
    let u = rng.uniform_open();
    let extra = (u.ln() / cr.ln()).floor();
    if extra >= (dim - 1) as f64 {
        dim
    } else {
        1 + extra as usize
    }
}

/// Copies `donor[start..start+len]` (indices mod `D`) over `receiver`.
pub fn exp_crossover(donor: &[f64], receiver: &[f64], len: usize, start: usize) -> Vec<f64> {
    let d = receiver.len();
    debug_assert_eq!(donor.len(), d);
    debug_assert!(start < d && (1..=d).contains(&len));
    let mut out = receiver.to_vec();
    for k in 0..len {
        let i = (start + k) % d;
        out[i] = donor[i];
    }
    out
}
