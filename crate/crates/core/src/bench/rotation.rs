use crate::rng::RandomSource;

/// Dense `D x D` orthogonal matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct Rotation {
    dim: usize,
    data: Vec<f64>,
}

impl Rotation {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        Self { dim, data }
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    /// `out = M v`.
    pub fn apply_into(&self, v: &[f64], out: &mut [f64]) {
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.row(i).iter().zip(v).map(|(a, b)| a * b).sum();
        }
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.apply_into(v, &mut out);
        out
    }

    /// Largest `|(M^T M - I)_ij|`.
    pub fn orthogonality_error(&self) -> f64 {
        let d = self.dim;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in 0..d {
                let dot: f64 = (0..d).map(|k| self.get(k, i) * self.get(k, j)).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }
}

/// Random orthogonal matrix: Gram-Schmidt on a matrix of independent
/// standard normals. Each row is orthogonalized twice against the previous
/// rows; a draw whose residual norm collapses is redrawn.
pub fn random_rotation(dim: usize, rng: &mut RandomSource) -> Rotation {
    assert!(dim >= 1, "rotation needs D >= 1");
    'draw: loop {
        let mut data: Vec<f64> = (0..dim * dim).map(|_| rng.standard_normal()).collect();
        for i in 0..dim {
            let (done, rest) = data.split_at_mut(i * dim);
            let row = &mut rest[..dim];
            let start_norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
            for _ in 0..2 {
                for j in 0..i {
                    let prev = &done[j * dim..(j + 1) * dim];
                    let dot: f64 = prev.iter().zip(row.iter()).map(|(a, b)| a * b).sum();
                    for (r, p) in row.iter_mut().zip(prev) {
                        *r -= dot * p;
                    }
                }
            }
            let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
            if !(norm > 1e-8 * start_norm.max(1e-300)) {
                continue 'draw;
            }
            for r in row.iter_mut() {
                *r /= norm;
            }
        }
        return Rotation { dim, data };
    }
}
