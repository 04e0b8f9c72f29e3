//! Experiment orchestration: algorithm roster, seeding, factorial execution
//! with resumable persistence, summaries and rank reports.

mod config;
mod records;
mod report;
mod roster;
mod runner;
mod seed;
mod summary;

pub use config::{ExperimentConfig, SuiteConfig};
pub use records::{read_records, write_records, RunRecord, RECORDS_FILE};
pub use report::{report, Grouping};
pub use roster::{full_roster, AlgorithmSpec, ENGINE_FAMILIES};
pub use runner::{run_cell, run_experiment, CellFailure, ExperimentOutcome, MANIFEST_FILE};
pub use seed::derive_seed;
pub use summary::{summarize, CellStats, Summary};
