use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use compact_core::harness::{
    read_records, report, run_experiment, summarize, ExperimentConfig, Grouping,
};
use compact_core::model::Objective;
use compact_core::stats::emit_rank_csv;

#[derive(Parser)]
#[command(name = "compact-bench", version, about = "Compact optimizers with restart wrappers: experiments and rank reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Execute (or resume) the experiment described by a TOML config.
    Run {
        config: PathBuf,
        /// Override the worker thread count (0 = all cores).
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Per-cell mean, std and median of the final best fitness.
    Summarize {
        records: PathBuf,
        /// Print the full CSV instead of the mean table.
        #[arg(long)]
        csv: bool,
    },
    /// Holm-Bonferroni rank tables.
    Report {
        records: PathBuf,
        /// One three-way table per engine (bare, RI, Re).
        #[arg(long, conflicts_with = "all")]
        group_by_engine: bool,
        /// One table with every algorithm (the default).
        #[arg(long)]
        all: bool,
        /// Reference algorithm; defaults to the top-ranked one (or the RI
        /// variant when grouping by engine).
        #[arg(long)]
        reference: Option<String>,
        /// Family-wise significance level.
        #[arg(long, default_value_t = 0.05)]
        delta: f64,
        /// Also write one machine-readable CSV per table into this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// List the problems a config expands to.
    ListProblems { config: PathBuf },
}

fn load_config(path: &Path) -> Result<ExperimentConfig> {
    ExperimentConfig::load(path).with_context(|| format!("reading config {}", path.display()))
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run { config, threads } => {
            let mut config = load_config(&config)?;
            if let Some(t) = threads {
                config.threads = t;
            }
            let out = run_experiment(&config)?;
            println!(
                "{} records in {} ({} executed, {} already present)",
                out.records.len(),
                out.records_path.display(),
                out.executed,
                out.skipped
            );
            for f in &out.failures {
                eprintln!("FAILED {}/{}/run {}: {}", f.algorithm, f.problem, f.run, f.message);
            }
            if !out.failures.is_empty() {
                bail!("{} runs failed", out.failures.len());
            }
        }
        Command::Summarize { records, csv } => {
            let summary = summarize(&read_records(&records)?)?;
            if csv {
                print!("{}", summary.to_csv()?);
            } else {
                print!("{summary}");
            }
        }
        Command::Report {
            records,
            group_by_engine,
            all: _,
            reference,
            delta,
            out_dir,
        } => {
            let grouping = if group_by_engine {
                Grouping::ByEngine
            } else {
                Grouping::All
            };
            let reports = report(&read_records(&records)?, reference.as_deref(), grouping, delta)?;
            if let Some(dir) = &out_dir {
                std::fs::create_dir_all(dir)?;
            }
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    println!();
                }
                print!("{r}");
                if let Some(dir) = &out_dir {
                    let name = match grouping {
                        Grouping::All => "holm_all.csv".to_string(),
                        Grouping::ByEngine => format!("holm_{}.csv", r.reference),
                    };
                    std::fs::write(dir.join(name), emit_rank_csv(r)?)?;
                }
            }
        }
        Command::ListProblems { config } => {
            let suite = load_config(&config)?.build_suite()?;
            println!("id,function,dimension,seed,shifted,rotated,separable");
            for (spec, p) in suite.specs().iter().zip(suite.problems()) {
                println!(
                    "{},{},{},{},{},{},{}",
                    p.id(),
                    p.function(),
                    p.dimension(),
                    spec.seed,
                    p.shift().is_some(),
                    p.is_rotated(),
                    p.is_separable()
                );
            }
        }
    }
    Ok(())
}
