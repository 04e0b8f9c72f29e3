use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::records::RunRecord;
use crate::error::{Error, Result};
use crate::stats::{sci, ResultTable};

/// Statistics of the final best fitness over the runs of one
/// (algorithm, problem) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellStats {
    pub algorithm: String,
    pub problem: String,
    pub runs: usize,
    pub mean: f64,
    /// Sample standard deviation (0 for a single run).
    pub std: f64,
    pub median: f64,
    pub min: f64,
    pub max: f64,
}

impl CellStats {
    fn from_values(algorithm: &str, problem: &str, values: &mut [f64]) -> Self {
        let n = values.len();
        values.sort_by(f64::total_cmp);
        let mean = values.iter().sum::<f64>() / n as f64;
        let std = if n > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        let median = if n % 2 == 1 {
            values[n / 2]
        } else {
            0.5 * (values[n / 2 - 1] + values[n / 2])
        };
        Self {
            algorithm: algorithm.to_string(),
            problem: problem.to_string(),
            runs: n,
            mean,
            std,
            median,
            min: values[0],
            max: values[n - 1],
        }
    }
}

/// Per-cell statistics. Algorithms and problems keep the order in which
/// they first appear in the records.
#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub algorithms: Vec<String>,
    pub problems: Vec<String>,
    /// Algorithm-major: `cells[a * problems.len() + p]`.
    pub cells: Vec<CellStats>,
}

impl Summary {
    pub fn cell(&self, algorithm: &str, problem: &str) -> Option<&CellStats> {
        let a = self.algorithms.iter().position(|x| x == algorithm)?;
        let p = self.problems.iter().position(|x| x == problem)?;
        self.cells.get(a * self.problems.len() + p)
    }

    /// Mean final best per cell, the input to rank scoring.
    pub fn table(&self) -> Result<ResultTable> {
        let np = self.problems.len();
        ResultTable::new(
            self.algorithms.clone(),
            self.problems.clone(),
            self.cells
                .chunks(np)
                .map(|row| row.iter().map(|c| c.mean).collect())
                .collect(),
        )
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["algorithm", "problem", "runs", "mean", "std", "median", "min", "max"])?;
        for c in &self.cells {
            w.write_record([
                c.algorithm.clone(),
                c.problem.clone(),
                c.runs.to_string(),
                c.mean.to_string(),
                c.std.to_string(),
                c.median.to_string(),
                c.min.to_string(),
                c.max.to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Mean table: one row per problem, one column per algorithm.
impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pw = self.problems.iter().map(String::len).max().unwrap_or(0).max(7);
        write!(f, "{:<pw$}", "problem")?;
        for a in &self.algorithms {
            write!(f, "  {a:>11}")?;
        }
        writeln!(f)?;
        for (p, name) in self.problems.iter().enumerate() {
            write!(f, "{name:<pw$}")?;
            for a in 0..self.algorithms.len() {
                write!(f, "  {:>11}", sci(self.cells[a * self.problems.len() + p].mean, 4))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Groups records by cell. Every algorithm must have a record for every
/// problem and every run index seen anywhere in the input; missing and
/// duplicated runs are reported in full.
pub fn summarize(records: &[RunRecord]) -> Result<Summary> {
    if records.is_empty() {
        return Err(Error::InvalidArgument("no records to summarize".into()));
    }
    let mut algorithms: Vec<String> = Vec::new();
    let mut problems: Vec<String> = Vec::new();
    let mut runs = BTreeSet::new();
    let mut by_run: HashMap<(&str, &str, u32), f64> = HashMap::new();
    let mut duplicates = Vec::new();
    for r in records {
        if !algorithms.contains(&r.algorithm) {
            algorithms.push(r.algorithm.clone());
        }
        if !problems.contains(&r.problem) {
            problems.push(r.problem.clone());
        }
        runs.insert(r.run);
        if by_run.insert(r.key(), r.final_best).is_some() {
            duplicates.push(format!("{}/{}/run {} (duplicate)", r.algorithm, r.problem, r.run));
        }
    }
    let mut missing = duplicates;
    let mut cells = Vec::with_capacity(algorithms.len() * problems.len());
    for a in &algorithms {
        for p in &problems {
            let mut values = Vec::with_capacity(runs.len());
            for &run in &runs {
                match by_run.get(&(a.as_str(), p.as_str(), run)) {
                    Some(v) => values.push(*v),
                    None => missing.push(format!("{a}/{p}/run {run}")),
                }
            }
            if !values.is_empty() {
                cells.push(CellStats::from_values(a, p, &mut values));
            }
        }
    }
    if !missing.is_empty() {
        return Err(Error::MissingCells(missing));
    }
    Ok(Summary {
        algorithms,
        problems,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(a: &str, p: &str, run: u32, v: f64) -> RunRecord {
        RunRecord {
            algorithm: a.into(),
            problem: p.into(),
            dimension: 2,
            run,
            seed: 0,
            final_best: v,
            evaluations: 1,
            trace: vec![v],
        }
    }

    #[test]
    fn identical_runs() {
        let rs: Vec<_> = (0..30).map(|i| rec("a", "p", i, 4.25)).collect();
        let s = summarize(&rs).unwrap();
        let c = s.cell("a", "p").unwrap();
        assert_eq!((c.mean, c.std, c.median, c.runs), (4.25, 0.0, 4.25, 30));
    }

    #[test]
    fn one_two_three() {
        let rs = vec![rec("a", "p", 0, 3.0), rec("a", "p", 1, 1.0), rec("a", "p", 2, 2.0)];
        let c = summarize(&rs).unwrap().cells[0].clone();
        assert_eq!((c.mean, c.median, c.std, c.min, c.max), (2.0, 2.0, 1.0, 1.0, 3.0));
        let even = summarize(&[rec("a", "p", 0, 1.0), rec("a", "p", 1, 4.0)]).unwrap();
        assert_eq!(even.cells[0].median, 2.5);
    }

    #[test]
    fn missing_and_duplicate_runs_are_listed() {
        let rs = vec![
            rec("a", "p", 0, 1.0),
            rec("a", "p", 1, 1.0),
            rec("b", "p", 0, 1.0),
            rec("b", "q", 1, 1.0),
            rec("b", "q", 1, 2.0),
        ];
        match summarize(&rs) {
            Err(Error::MissingCells(list)) => {
                assert!(list.contains(&"b/q/run 1 (duplicate)".to_string()));
                assert!(list.contains(&"b/p/run 1".to_string()));
                assert!(list.contains(&"a/q/run 0".to_string()));
                assert!(list.contains(&"b/q/run 0".to_string()));
                assert_eq!(list.len(), 5);
            }
            other => panic!("{other:?}"),
        }
        assert!(summarize(&[]).is_err());
    }

    #[test]
    fn table_layout() {
        let rs = vec![
            rec("a", "p", 0, 1.0),
            rec("a", "q", 0, 2.0),
            rec("b", "p", 0, 3.0),
            rec("b", "q", 0, 4.0),
        ];
        let t = summarize(&rs).unwrap().table().unwrap();
        assert_eq!(t.mean(1, 0), 3.0);
        assert_eq!(t.mean(0, 1), 2.0);
    }
}
