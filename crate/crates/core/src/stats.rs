//! Rank scoring over a table of mean results and the sequentially rejective
//! Holm-Bonferroni comparison against a reference algorithm.
//!
//! Per problem the best (smallest) mean scores `NA`, the worst 1; tied means
//! share the average of their positions. With `R_0` the reference's average
//! score,
//!
//! ```text
//! z_j = (R_j - R_0) / sqrt(NA (NA + 1) / (6 NTP)),    p_j = Phi(z_j)
//! ```
//!
//! Hypotheses are taken in ascending order of `p`; the `k`-th smallest of
//! `m = NA - 1` is labelled `j = m - k + 1` and tested against `delta / j`.
//! Rejection continues until the first acceptance, which accepts every
//! remaining hypothesis.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::special::normal_cdf;

/// Mean best fitness per (algorithm, problem).
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    algorithms: Vec<String>,
    problems: Vec<String>,
    /// `means[a][p]`
    means: Vec<Vec<f64>>,
}

impl ResultTable {
    pub fn new(algorithms: Vec<String>, problems: Vec<String>, means: Vec<Vec<f64>>) -> Result<Self> {
        if algorithms.len() < 2 {
            return Err(Error::InvalidArgument("need at least two algorithms".into()));
        }
        if problems.is_empty() {
            return Err(Error::InvalidArgument("need at least one problem".into()));
        }
        if means.len() != algorithms.len() || means.iter().any(|row| row.len() != problems.len()) {
            return Err(Error::InvalidArgument(format!(
                "means must be {} x {}",
                algorithms.len(),
                problems.len()
            )));
        }
        Ok(Self {
            algorithms,
            problems,
            means,
        })
    }

    pub fn algorithms(&self) -> &[String] {
        &self.algorithms
    }

    pub fn problems(&self) -> &[String] {
        &self.problems
    }

    pub fn mean(&self, algorithm: usize, problem: usize) -> f64 {
        self.means[algorithm][problem]
    }

    /// Keeps the listed algorithms, in the given order.
    pub fn select_algorithms(&self, ids: &[&str]) -> Result<Self> {
        let rows = ids
            .iter()
            .map(|id| {
                self.algorithms
                    .iter()
                    .position(|a| a == id)
                    .map(|i| self.means[i].clone())
                    .ok_or_else(|| Error::UnknownAlgorithm(id.to_string()))
            })
            .collect::<Result<_>>()?;
        Self::new(
            ids.iter().map(|s| s.to_string()).collect(),
            self.problems.clone(),
            rows,
        )
    }

    /// Keeps the problems for which `keep` returns true.
    pub fn filter_problems(&self, keep: impl Fn(&str) -> bool) -> Result<Self> {
        let cols: Vec<usize> = (0..self.problems.len())
            .filter(|&p| keep(&self.problems[p]))
            .collect();
        Self::new(
            self.algorithms.clone(),
            cols.iter().map(|&p| self.problems[p].clone()).collect(),
            self.means
                .iter()
                .map(|row| cols.iter().map(|&p| row[p]).collect())
                .collect(),
        )
    }
}

/// NaN sorts as the worst possible mean.
fn cmp_mean(a: f64, b: f64) -> Ordering {
    match (a.is_nan(), b.is_nan()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        _ => a.partial_cmp(&b).unwrap(),
    }
}

/// Scores of one problem column: best mean gets `NA`, worst 1, ties share
/// the average of the positions they span.
pub fn score_column(means: &[f64]) -> Vec<f64> {
    let n = means.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| cmp_mean(means[a], means[b]));
    let mut scores = vec![0.0; n];
    let mut k = 0;
    while k < n {
        let mut end = k + 1;
        while end < n && cmp_mean(means[order[k]], means[order[end]]) == Ordering::Equal {
            end += 1;
        }
        // positions k..end score n-k down to n-end+1
        let shared = (2 * n - k - end + 1) as f64 / 2.0;
        for &i in &order[k..end] {
            scores[i] = shared;
        }
        k = end;
    }
    scores
}

/// Average score of every algorithm over all problems, in table order.
pub fn score_problems(table: &ResultTable) -> Vec<f64> {
    let na = table.algorithms.len();
    let ntp = table.problems.len();
    let mut total = vec![0.0; na];
    let mut column = vec![0.0; na];
    for p in 0..ntp {
        for (a, c) in column.iter_mut().enumerate() {
            *c = table.means[a][p];
        }
        for (t, s) in total.iter_mut().zip(score_column(&column)) {
            *t += s;
        }
    }
    total.into_iter().map(|t| t / ntp as f64).collect()
}

/// `sqrt(NA (NA + 1) / (6 NTP))`.
pub fn z_denominator(n_algorithms: usize, n_problems: usize) -> f64 {
    let na = n_algorithms as f64;
    (na * (na + 1.0) / (6.0 * n_problems as f64)).sqrt()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankRow {
    pub j: usize,
    pub algorithm: String,
    pub score: f64,
    pub z: f64,
    pub p: f64,
    pub threshold: f64,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    pub reference: String,
    pub reference_score: f64,
    pub delta: f64,
    pub n_algorithms: usize,
    pub n_problems: usize,
    /// In testing order: ascending `p`, so `j` runs from `NA - 1` down to 1.
    pub rows: Vec<RankRow>,
}

impl RankReport {
    pub fn row(&self, algorithm: &str) -> Option<&RankRow> {
        self.rows.iter().find(|r| r.algorithm == algorithm)
    }
}

/// Runs the procedure over `(algorithm, average score)` pairs.
pub fn holm_bonferroni(
    scores: &[(String, f64)],
    n_problems: usize,
    reference: &str,
    delta: f64,
) -> Result<RankReport> {
    if n_problems == 0 {
        return Err(Error::InvalidArgument("need at least one problem".into()));
    }
    if scores.len() < 2 {
        return Err(Error::InvalidArgument("need at least two algorithms".into()));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidArgument(format!("delta must lie in (0, 1), got {delta}")));
    }
    let reference_score = scores
        .iter()
        .find(|(id, _)| id == reference)
        .map(|(_, s)| *s)
        .ok_or_else(|| Error::UnknownAlgorithm(reference.to_string()))?;
    let na = scores.len();
    let denom = z_denominator(na, n_problems);

    let mut rows: Vec<RankRow> = scores
        .iter()
        .filter(|(id, _)| id != reference)
        .map(|(id, s)| {
            let z = (s - reference_score) / denom;
            RankRow {
                j: 0,
                algorithm: id.clone(),
                score: *s,
                z,
                p: normal_cdf(z),
                threshold: 0.0,
                accepted: false,
            }
        })
        .collect();
    rows.sort_by(|a, b| a.p.total_cmp(&b.p).then_with(|| a.algorithm.cmp(&b.algorithm)));

    let m = rows.len();
    let mut accepting = false;
    for (k, row) in rows.iter_mut().enumerate() {
        row.j = m - k;
        row.threshold = delta / row.j as f64;
        accepting |= row.p > row.threshold;
        row.accepted = accepting;
    }
    Ok(RankReport {
        reference: reference.to_string(),
        reference_score,
        delta,
        n_algorithms: na,
        n_problems,
        rows,
    })
}

/// The algorithm with the highest average score (first one on ties).
pub fn top_ranked(scores: &[(String, f64)]) -> Option<&str> {
    scores
        .iter()
        .fold(None, |best: Option<&(String, f64)>, cur| match best {
            Some(b) if b.1 >= cur.1 => Some(b),
            _ => Some(cur),
        })
        .map(|(id, _)| id.as_str())
}

const CSV_HEADER: [&str; 10] = [
    "j",
    "algorithm",
    "rank",
    "z",
    "p",
    "delta_over_j",
    "hypothesis",
    "delta",
    "n_algorithms",
    "n_problems",
];

fn hypothesis_label(accepted: bool) -> &'static str {
    if accepted {
        "Accepted"
    } else {
        "Rejected"
    }
}

/// Machine-readable form: one CSV row for the reference (rank only) and one
/// per hypothesis. Floats use the shortest representation that parses back
/// to the same value.
pub fn emit_rank_csv(report: &RankReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    let shared = [
        report.delta.to_string(),
        report.n_algorithms.to_string(),
        report.n_problems.to_string(),
    ];
    w.write_record(
        ["", &report.reference, &report.reference_score.to_string(), "", "", "", ""]
            .iter()
            .map(|s| s.to_string())
            .chain(shared.iter().cloned()),
    )?;
    for r in &report.rows {
        w.write_record(
            [
                r.j.to_string(),
                r.algorithm.clone(),
                r.score.to_string(),
                r.z.to_string(),
                r.p.to_string(),
                r.threshold.to_string(),
                hypothesis_label(r.accepted).to_string(),
            ]
            .into_iter()
            .chain(shared.iter().cloned()),
        )?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
}

/// Inverse of [`emit_rank_csv`].
pub fn parse_rank_csv(text: &str) -> Result<RankReport> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers()?.iter().map(String::from).collect();
    if header != CSV_HEADER {
        return Err(Error::Parse(format!("unexpected header {header:?}")));
    }
    let num = |s: &str| -> Result<f64> {
        s.parse::<f64>()
            .map_err(|_| Error::Parse(format!("not a number: `{s}`")))
    };
    let int = |s: &str| -> Result<usize> {
        s.parse::<usize>()
            .map_err(|_| Error::Parse(format!("not an integer: `{s}`")))
    };
    let mut reference = None;
    let mut rows = Vec::new();
    let mut shared = None;
    for rec in r.records() {
        let rec = rec?;
        if rec.len() != CSV_HEADER.len() {
            return Err(Error::Parse("wrong field count".into()));
        }
        shared = Some((num(&rec[7])?, int(&rec[8])?, int(&rec[9])?));
        if rec[0].is_empty() {
            reference = Some((rec[1].to_string(), num(&rec[2])?));
            continue;
        }
        let accepted = match &rec[6] {
            "Accepted" => true,
            "Rejected" => false,
            other => return Err(Error::Parse(format!("unknown hypothesis `{other}`"))),
        };
        rows.push(RankRow {
            j: int(&rec[0])?,
            algorithm: rec[1].to_string(),
            score: num(&rec[2])?,
            z: num(&rec[3])?,
            p: num(&rec[4])?,
            threshold: num(&rec[5])?,
            accepted,
        });
    }
    let (reference, reference_score) =
        reference.ok_or_else(|| Error::Parse("missing reference row".into()))?;
    let (delta, n_algorithms, n_problems) =
        shared.ok_or_else(|| Error::Parse("empty table".into()))?;
    Ok(RankReport {
        reference,
        reference_score,
        delta,
        n_algorithms,
        n_problems,
        rows,
    })
}

/// `1.2346e+03` style: fixed-width exponent with an explicit sign.
pub(crate) fn sci(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let s = format!("{x:.digits$e}");
    match s.split_once('e') {
        Some((mantissa, exp)) => {
            let e: i32 = exp.parse().unwrap_or(0);
            format!("{mantissa}e{}{:02}", if e < 0 { '-' } else { '+' }, e.abs())
        }
        None => s,
    }
}

impl fmt::Display for RankReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Holm-Bonferroni procedure (NA = {}, NTP = {}, delta = {})",
            self.n_algorithms, self.n_problems, self.delta
        )?;
        writeln!(
            f,
            "Reference: {} (Rank {:.2})",
            self.reference, self.reference_score
        )?;
        let width = self
            .rows
            .iter()
            .map(|r| r.algorithm.len())
            .max()
            .unwrap_or(0)
            .max(9);
        writeln!(
            f,
            "{:>3}  {:<width$}  {:>6}  {:>11}  {:>11}  {:>11}  Hypothesis",
            "j", "Optimizer", "Rank", "z_j", "p_j", "delta/j"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>3}  {:<width$}  {:>6.2}  {:>11}  {:>11}  {:>11}  {}",
                r.j,
                r.algorithm,
                r.score,
                sci(r.z, 4),
                sci(r.p, 4),
                sci(r.threshold, 4),
                hypothesis_label(r.accepted)
            )?;
        }
        Ok(())
    }
}
