use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Read, Seek, SeekFrom, Write};
use std::path::Path;

use crate::error::{Error, Result};

pub const RECORDS_FILE: &str = "records.csv";

const HEADER: [&str; 8] = [
    "algorithm",
    "problem",
    "dimension",
    "run",
    "seed",
    "final_best",
    "evaluations",
    "trace",
];

/// Outcome of one independent run. Floats are written in their shortest
/// round-trip form, so a record read back equals the one written.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub algorithm: String,
    pub problem: String,
    pub dimension: usize,
    pub run: u32,
    pub seed: u64,
    pub final_best: f64,
    /// Objective calls counted at the objective itself.
    pub evaluations: u64,
    /// Best fitness at evenly spaced budget checkpoints, last one at the full
    /// budget.
    pub trace: Vec<f64>,
}

impl RunRecord {
    pub fn key(&self) -> (&str, &str, u32) {
        (&self.algorithm, &self.problem, self.run)
    }

    fn fields(&self) -> [String; 8] {
        [
            self.algorithm.clone(),
            self.problem.clone(),
            self.dimension.to_string(),
            self.run.to_string(),
            self.seed.to_string(),
            self.final_best.to_string(),
            self.evaluations.to_string(),
            self.trace
                .iter()
                .map(f64::to_string)
                .collect::<Vec<_>>()
                .join(";"),
        ]
    }

    fn from_fields(rec: &csv::StringRecord) -> Result<Self> {
        if rec.len() != HEADER.len() {
            return Err(Error::Parse(format!("expected {} fields, got {}", HEADER.len(), rec.len())));
        }
        fn parse<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
            s.parse()
                .map_err(|_| Error::Parse(format!("bad {what}: `{s}`")))
        }
        let trace = if rec[7].is_empty() {
            Vec::new()
        } else {
            rec[7]
                .split(';')
                .map(|v| parse(v, "trace value"))
                .collect::<Result<_>>()?
        };
        Ok(Self {
            algorithm: rec[0].to_string(),
            problem: rec[1].to_string(),
            dimension: parse(&rec[2], "dimension")?,
            run: parse(&rec[3], "run")?,
            seed: parse(&rec[4], "seed")?,
            final_best: parse(&rec[5], "final_best")?,
            evaluations: parse(&rec[6], "evaluations")?,
            trace,
        })
    }
}

fn write_to<W: Write>(w: W, records: &[RunRecord], header: bool) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(w);
    if header {
        w.write_record(HEADER)?;
    }
    for r in records {
        w.write_record(r.fields())?;
    }
    w.flush()?;
    Ok(())
}

/// Writes a complete records file, replacing any existing one.
pub fn write_records(path: impl AsRef<Path>, records: &[RunRecord]) -> Result<()> {
    let path = path.as_ref();
    let tmp = path.with_extension("csv.tmp");
    write_to(BufWriter::new(File::create(&tmp)?), records, true)?;
    std::fs::rename(tmp, path)?;
    Ok(())
}

fn parse_records(text: &str) -> Result<Vec<RunRecord>> {
    let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header: Vec<&str> = r.headers()?.iter().collect();
    if header != HEADER {
        return Err(Error::Parse(format!("unexpected records header {header:?}")));
    }
    r.records()
        .map(|rec| RunRecord::from_fields(&rec?))
        .collect()
}

pub fn read_records(path: impl AsRef<Path>) -> Result<Vec<RunRecord>> {
    parse_records(&std::fs::read_to_string(path)?)
}

/// Append-only writer used while an experiment runs. Each record is flushed
/// as soon as it is written.
pub(crate) struct RecordAppender {
    file: File,
}

impl RecordAppender {
    /// Opens `path` for appending and returns the records already in it. A
    /// trailing partial line, left by an interrupted write, is cut off.
    pub(crate) fn open(path: &Path) -> Result<(Self, Vec<RunRecord>)> {
        let mut file = OpenOptions::new()
            .read(true)
            .write(true)
            .create(true)
            .truncate(false)
            .open(path)?;
        let mut text = String::new();
        file.read_to_string(&mut text)?;
        let complete = text.rfind('\n').map_or(0, |i| i + 1);
        let existing = if complete == 0 {
            Vec::new()
        } else {
            parse_records(&text[..complete])?
        };
        file.set_len(complete as u64)?;
        file.seek(SeekFrom::End(0))?;
        if complete == 0 {
            write_to(&mut file, &[], true)?;
        }
        Ok((Self { file }, existing))
    }

    pub(crate) fn append(&mut self, record: &RunRecord) -> Result<()> {
        write_to(&mut self.file, std::slice::from_ref(record), false)?;
        self.file.sync_data()?;
        Ok(())
    }
}
