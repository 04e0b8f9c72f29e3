//! Independent reference implementations shared by the integration tests.
#![allow(dead_code)]

/// erf by its Maclaurin series for |x| < 1.5 and by the Laplace continued
/// fraction of erfc beyond. Accurate to ~1e-15 over the real line.
pub fn erf_ref(x: f64) -> f64 {
    if x.abs() < 1.5 {
        let mut term = x;
        let mut sum = x;
        let mut n = 0.0;
        while term.abs() > 1e-17 * sum.abs().max(1e-300) {
            n += 1.0;
            term *= -x * x / n;
            sum += term / (2.0 * n + 1.0);
        }
        2.0 / std::f64::consts::PI.sqrt() * sum
    } else {
        let s = x.signum();
        s * (1.0 - erfc_cf(x.abs()))
    }
}

/// erfc(x) for x >= 1.5 via the continued fraction, evaluated bottom-up.
fn erfc_cf(x: f64) -> f64 {
    let mut f = 0.0;
    for k in (1..=400).rev() {
        f = (k as f64 / 2.0) / (x + f);
    }
    (-x * x).exp() / std::f64::consts::PI.sqrt() / (x + f)
}

/// Standard normal CDF from the series / continued fraction above, computed
/// on the tail side to keep relative precision for very negative z.
pub fn phi_ref(z: f64) -> f64 {
    let t = z / std::f64::consts::SQRT_2;
    if t < -1.5 {
        0.5 * erfc_cf(-t)
    } else {
        0.5 * (1.0 + erf_ref(t))
    }
}

/// CDF of N(mu, sigma) truncated to [-1, 1].
pub fn truncated_cdf(x: f64, mu: f64, sigma: f64) -> f64 {
    let a = phi_ref((-1.0 - mu) / sigma);
    let b = phi_ref((1.0 - mu) / sigma);
    ((phi_ref((x - mu) / sigma) - a) / (b - a)).clamp(0.0, 1.0)
}

/// Two-sided Kolmogorov-Smirnov statistic of a sample against `cdf`.
pub fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_by(f64::total_cmp);
    let n = samples.len() as f64;
    samples
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

/// Asymptotic p-value of the KS statistic with the Stephens small-sample
/// correction.
pub fn ks_p_value(d: f64, n: usize) -> f64 {
    let sn = (n as f64).sqrt();
    let lambda = (sn + 0.12 + 0.11 / sn) * d;
    let mut sum = 0.0;
    for k in 1..=100 {
        let k = k as f64;
        let term = 2.0 * (-1f64).powf(k - 1.0) * (-2.0 * k * k * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-16 {
            break;
        }
    }
    sum.clamp(0.0, 1.0)
}

/// Total-variation distance between two histograms over the same bins.
pub fn total_variation(a: &[u64], b: &[u64]) -> f64 {
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    0.5 * a
        .iter()
        .zip(b)
        .map(|(&x, &y)| (x as f64 / na as f64 - y as f64 / nb as f64).abs())
        .sum::<f64>()
}

/// Average score per algorithm by counting, without sorting: on each problem
/// an algorithm with `k` strictly better and `t` tied rivals scores
/// `NA - k - t / 2`.
pub fn scores_by_counting(means: &[Vec<f64>]) -> Vec<f64> {
    let na = means.len();
    let ntp = means[0].len();
    (0..na)
        .map(|a| {
            (0..ntp)
                .map(|p| {
                    let mine = means[a][p];
                    let better = (0..na).filter(|&o| means[o][p] < mine).count() as f64;
                    let tied = (0..na).filter(|&o| o != a && means[o][p] == mine).count() as f64;
                    na as f64 - better - tied / 2.0
                })
                .sum::<f64>()
                / ntp as f64
        })
        .collect()
}

pub struct HolmRef {
    pub algorithm: usize,
    pub z: f64,
    pub p: f64,
    pub rejected: bool,
}

/// Holm's step-down rule from its definition: the hypothesis with the
/// `i`-th smallest p (1-based, ties broken by name) is rejected iff every
/// hypothesis up to and including it satisfies `p <= delta / (m - i + 1)`.
pub fn holm_reference(
    names: &[String],
    scores: &[f64],
    reference: usize,
    n_problems: usize,
    delta: f64,
) -> Vec<HolmRef> {
    let na = scores.len() as f64;
    let denom = (na * (na + 1.0) / (6.0 * n_problems as f64)).sqrt();
    let mut rows: Vec<HolmRef> = (0..scores.len())
        .filter(|&a| a != reference)
        .map(|a| {
            let z = (scores[a] - scores[reference]) / denom;
            HolmRef {
                algorithm: a,
                z,
                p: phi_ref(z),
                rejected: false,
            }
        })
        .collect();
    let m = rows.len();
    let order = |r: &HolmRef| (r.p, names[r.algorithm].clone());
    let mut sorted: Vec<(f64, String)> = rows.iter().map(order).collect();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then_with(|| a.1.cmp(&b.1)));
    for row in rows.iter_mut() {
        let key = order(row);
        let i = 1 + sorted.iter().position(|k| *k == key).unwrap();
        row.rejected = (1..=i).all(|q| sorted[q - 1].0 <= delta / (m - q + 1) as f64);
    }
    rows
}
