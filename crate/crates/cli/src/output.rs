//! Output formats and sinks.
//!
//! Machine formats print floats in shortest round-trip form (the same
//! encoding serde_json uses), so the CSV and JSON-lines views of a run carry
//! identical numeric values.

use std::fs::File;
use std::io::{BufWriter, Stdout, Write};
use std::path::Path;

use anyhow::{Context, Result};
use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// One JSON object per line.
    Jsonl,
    /// Comma-separated values with a header row.
    Csv,
}

pub enum Sink {
    Stdout(BufWriter<Stdout>),
    File(BufWriter<File>),
}

impl Sink {
    pub fn open(path: Option<&Path>) -> Result<Self> {
        Ok(match path {
            None => Sink::Stdout(BufWriter::new(std::io::stdout())),
            Some(p) => Sink::File(BufWriter::new(
                File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
            )),
        })
    }

    pub fn finish(self) -> Result<()> {
        match self {
            Sink::Stdout(mut w) => w.flush()?,
            Sink::File(mut w) => w.flush()?,
        }
        Ok(())
    }
}

impl Write for Sink {
    fn write(&mut self, buf: &[u8]) -> std::io::Result<usize> {
        match self {
            Sink::Stdout(w) => w.write(buf),
            Sink::File(w) => w.write(buf),
        }
    }

    fn flush(&mut self) -> std::io::Result<()> {
        match self {
            Sink::Stdout(w) => w.flush(),
            Sink::File(w) => w.flush(),
        }
    }
}

/// Shortest round-trip rendering of a float for CSV cells, via the same
/// encoder the JSON lines use, so the two formats print identical strings.
pub fn csv_f64(v: f64) -> String {
    serde_json::to_string(&v).expect("floats serialize")
}

pub fn csv_opt_f64(v: Option<f64>) -> String {
    v.map(csv_f64).unwrap_or_default()
}

pub fn csv_opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Write one JSON-lines record.
pub fn write_jsonl<T: serde::Serialize>(out: &mut Sink, record: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, record)?;
    out.write_all(b"\n")?;
    Ok(())
}
