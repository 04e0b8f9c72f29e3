use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use super::records::{write_records, RecordAppender, RunRecord, RECORDS_FILE};
use super::roster::AlgorithmSpec;
use super::seed::derive_seed;
use crate::bench::{Problem, ProblemSpec};
use crate::error::{Error, Result};
use crate::model::{CountingObjective, Objective};
use crate::rng::RandomSource;

pub const MANIFEST_FILE: &str = "manifest.toml";
const FAILURES_FILE: &str = "failures.csv";

/// Everything that determines the records. Execution details (output
/// location, thread count) are left out so they cannot change the artifacts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct Manifest {
    master_seed: u64,
    runs: u32,
    budget_per_dim: u64,
    trace_points: usize,
    algorithms: Vec<String>,
    #[serde(rename = "problem")]
    problems: Vec<ProblemSpec>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellFailure {
    pub algorithm: String,
    pub problem: String,
    pub run: u32,
    pub message: String,
}

#[derive(Debug)]
pub struct ExperimentOutcome {
    /// Every record in the output, in canonical order.
    pub records: Vec<RunRecord>,
    /// Runs executed by this call.
    pub executed: usize,
    /// Runs found already finished and skipped.
    pub skipped: usize,
    pub failures: Vec<CellFailure>,
    pub records_path: PathBuf,
}

/// Executes one run of `algorithm` on `problem`, auditing the evaluation
/// count at the objective.
pub fn run_cell(
    config: &ExperimentConfig,
    algorithm: &AlgorithmSpec,
    problem: &Problem,
    run: u32,
) -> Result<RunRecord> {
    let seed = derive_seed(config.master_seed, &algorithm.id, problem.id(), run);
    let mut rng = RandomSource::new(seed);
    let dimension = problem.dimension();
    let budget = config.budget_for(dimension);
    let counted = CountingObjective::new(problem);
    let tracker = algorithm.run(&counted, budget, &mut rng)?;
    let evaluations = counted.calls();
    if evaluations > budget || evaluations != tracker.evaluations() {
        return Err(Error::InvalidArgument(format!(
            "evaluation audit failed: objective saw {evaluations}, run reported {}, budget {budget}",
            tracker.evaluations()
        )));
    }
    let points = config.trace_points as u64;
    let trace = (1..=points)
        .map(|k| tracker.best_at(k * budget / points))
        .collect();
    Ok(RunRecord {
        algorithm: algorithm.id.clone(),
        problem: problem.id().to_string(),
        dimension,
        run,
        seed,
        final_best: tracker.best_fitness(),
        evaluations,
        trace,
    })
}

fn check_manifest(dir: &Path, manifest: &Manifest) -> Result<()> {
    let path = dir.join(MANIFEST_FILE);
    let text = toml::to_string(manifest)?;
    if path.exists() {
        let previous: Manifest = toml::from_str(&std::fs::read_to_string(&path)?)?;
        if &previous != manifest {
            return Err(Error::InvalidArgument(format!(
                "{} holds a different experiment; use a fresh output directory",
                dir.display()
            )));
        }
    } else {
        std::fs::write(path, text)?;
    }
    Ok(())
}

fn write_failures(dir: &Path, failures: &[CellFailure]) -> Result<()> {
    let path = dir.join(FAILURES_FILE);
    if failures.is_empty() {
        if path.exists() {
            std::fs::remove_file(path)?;
        }
        return Ok(());
    }
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["algorithm", "problem", "run", "message"])?;
    for f in failures {
        w.write_record([&f.algorithm, &f.problem, &f.run.to_string(), &f.message])?;
    }
    w.flush()?;
    Ok(())
}

fn panic_message(payload: Box<dyn std::any::Any + Send>) -> String {
    payload
        .downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| payload.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "panic".into())
}

/// Runs every (algorithm, problem, run) cell not already present in the
/// output directory. Records are appended as they finish, so an interrupted
/// experiment resumes where it stopped; at the end the file is rewritten in
/// canonical order (roster order, suite order, run index), which makes the
/// output independent of scheduling.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome> {
    config.validate()?;
    let roster = config.roster()?;
    let suite = config.build_suite()?;
    let dir = &config.output;
    std::fs::create_dir_all(dir)?;
    check_manifest(
        dir,
        &Manifest {
            master_seed: config.master_seed,
            runs: config.runs,
            budget_per_dim: config.budget_per_dim,
            trace_points: config.trace_points,
            algorithms: config.algorithms.clone(),
            problems: suite.specs().to_vec(),
        },
    )?;

    let records_path = dir.join(RECORDS_FILE);
    let (appender, existing) = RecordAppender::open(&records_path)?;
    let done: HashSet<(String, String, u32)> = existing
        .iter()
        .map(|r| (r.algorithm.clone(), r.problem.clone(), r.run))
        .collect();

    let mut pending = Vec::new();
    for (a, algorithm) in roster.iter().enumerate() {
        for (p, problem) in suite.problems().iter().enumerate() {
            for run in 0..config.runs {
                let key = (algorithm.id.clone(), problem.id().to_string(), run);
                if !done.contains(&key) {
                    pending.push((a, p, run));
                }
            }
        }
    }
    let total_cells = roster.len() * suite.len() * config.runs as usize;
    let skipped = total_cells - pending.len();

    let sink = Mutex::new((appender, existing, None::<Error>));
    let failures = Mutex::new(Vec::new());
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    pool.install(|| {
        pending.par_iter().for_each(|&(a, p, run)| {
            let (algorithm, problem) = (&roster[a], &suite.problems()[p]);
            let outcome = catch_unwind(AssertUnwindSafe(|| run_cell(config, algorithm, problem, run)))
                .unwrap_or_else(|payload| Err(Error::InvalidArgument(panic_message(payload))));
            match outcome {
                Ok(record) => {
                    let mut guard = sink.lock().unwrap_or_else(|e| e.into_inner());
                    let (appender, records, io_error) = &mut *guard;
                    if io_error.is_none() {
                        match appender.append(&record) {
                            Ok(()) => records.push(record),
                            Err(e) => *io_error = Some(e),
                        }
                    }
                }
                Err(e) => failures.lock().unwrap_or_else(|e| e.into_inner()).push(CellFailure {
                    algorithm: algorithm.id.clone(),
                    problem: problem.id().to_string(),
                    run,
                    message: e.to_string(),
                }),
            }
        })
    });

    let (appender, mut records, io_error) = sink.into_inner().unwrap_or_else(|e| e.into_inner());
    drop(appender);
    if let Some(e) = io_error {
        return Err(e);
    }
    let alg_rank = |id: &str| roster.iter().position(|a| a.id == id);
    let prob_rank = |id: &str| suite.problems().iter().position(|p| p.id() == id);
    records.sort_by_key(|r| (alg_rank(&r.algorithm), prob_rank(&r.problem), r.run));
    write_records(&records_path, &records)?;

    let mut failures = failures.into_inner().unwrap_or_else(|e| e.into_inner());
    failures.sort_by_key(|f| (alg_rank(&f.algorithm), prob_rank(&f.problem), f.run));
    write_failures(dir, &failures)?;

    Ok(ExperimentOutcome {
        executed: pending.len() - failures.len(),
        skipped,
        records,
        failures,
        records_path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::records::read_records;

    fn tiny(dir: &Path, threads: usize) -> ExperimentConfig {
        let mut c = ExperimentConfig::from_toml(
            r#"
            master_seed = 5
            runs = 2
            budget_per_dim = 40
            trace_points = 4
            algorithms = ["cDE", "RIcBFO", "RW"]
            [suite]
            functions = ["sphere", "griewank"]
            dims = [3]
            seed = 1
            "#,
        )
        .unwrap();
        c.output = dir.to_path_buf();
        c.threads = threads;
        c
    }

    #[test]
    fn full_grid_with_audited_budgets() {
        let dir = tempfile::tempdir().unwrap();
        let out = run_experiment(&tiny(dir.path(), 2)).unwrap();
        assert_eq!(out.records.len(), 3 * 2 * 2);
        assert_eq!(out.executed, 12);
        assert!(out.failures.is_empty());
        for r in &out.records {
            assert_eq!(r.evaluations, 120);
            assert_eq!(r.trace.len(), 4);
            assert_eq!(*r.trace.last().unwrap(), r.final_best);
        }
        assert_eq!(read_records(&out.records_path).unwrap(), out.records);
        assert_eq!(out.records[0].algorithm, "cDE");
        assert_eq!(out.records.last().unwrap().algorithm, "RW");
    }

    #[test]
    fn rerun_skips_everything_and_other_experiments_are_refused() {
        let dir = tempfile::tempdir().unwrap();
        let config = tiny(dir.path(), 1);
        run_experiment(&config).unwrap();
        let again = run_experiment(&config).unwrap();
        assert_eq!((again.executed, again.skipped), (0, 12));

        let mut other = config.clone();
        other.master_seed += 1;
        assert!(run_experiment(&other).is_err());
    }
}
