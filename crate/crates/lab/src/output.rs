//! CSV tables and the JSON metadata sidecar.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::bench::BenchRecord;
use crate::error::{LabError, Result};
use crate::experiment::ErrorRecord;
use crate::microbench::MicrobenchSummary;

pub const ERRORS_HEADER: [&str; 9] = [
    "algo",
    "N",
    "sigma",
    "seed",
    "e_posit",
    "e_binary32",
    "digits",
    "info_posit",
    "info_binary32",
];
pub const MICROBENCH_HEADER: [&str; 7] = [
    "op",
    "range",
    "samples",
    "mean_regime_iters",
    "mean_norm_shifts",
    "mean_total_steps",
    "wall_ns_per_op",
];
pub const BENCH_HEADER: [&str; 7] = ["kernel", "N", "K", "sigma", "ops", "seconds", "gflops"];

/// Columns that hold wall-clock measurements and vary between runs.
pub const TIMING_COLUMNS: [&str; 3] = ["wall_ns_per_op", "seconds", "gflops"];

/// Shortest round-trip decimal form (`inf`, `-inf`, `NaN` for specials).
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

fn write_table<W: Write>(w: W, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(header)?;
    for row in rows {
        csv.write_record(&row)?;
    }
    csv.flush().map_err(|e| LabError::io("<csv>", e))?;
    Ok(())
}

pub fn write_errors<W: Write>(w: W, records: &[ErrorRecord]) -> Result<()> {
    write_table(
        w,
        &ERRORS_HEADER,
        records.iter().map(|r| {
            vec![
                r.algo.to_string(),
                r.n.to_string(),
                fmt_f64(r.sigma),
                r.seed.to_string(),
                fmt_f64(r.e_posit),
                fmt_f64(r.e_binary32),
                fmt_f64(r.digits),
                r.info_posit.to_string(),
                r.info_binary32.to_string(),
            ]
        }),
    )
}

pub fn write_microbench<W: Write>(w: W, rows: &[MicrobenchSummary]) -> Result<()> {
    write_table(
        w,
        &MICROBENCH_HEADER,
        rows.iter().map(|r| {
            vec![
                r.op.to_string(),
                r.range.clone(),
                r.samples.to_string(),
                fmt_f64(r.mean_regime_iters),
                fmt_f64(r.mean_norm_shifts),
                fmt_f64(r.mean_total_steps),
                fmt_f64(r.wall_ns_per_op),
            ]
        }),
    )
}

pub fn write_bench<W: Write>(w: W, rows: &[BenchRecord]) -> Result<()> {
    write_table(
        w,
        &BENCH_HEADER,
        rows.iter().map(|r| {
            vec![
                r.kernel.to_string(),
                r.n.to_string(),
                r.k.to_string(),
                fmt_f64(r.sigma),
                fmt_f64(r.ops),
                fmt_f64(r.seconds),
                fmt_f64(r.gflops),
            ]
        }),
    )
}

/// Drops the timing columns from CSV text so runs can be compared.
pub fn strip_timing(csv_text: &str) -> Result<String> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .from_reader(csv_text.as_bytes());
    let mut keep: Option<Vec<bool>> = None;
    let mut out = csv::Writer::from_writer(Vec::new());
    for rec in rdr.records() {
        let rec = rec?;
        let mask = keep.get_or_insert_with(|| rec.iter().map(|h| !TIMING_COLUMNS.contains(&h)).collect());
        let fields: Vec<&str> = rec
            .iter()
            .zip(mask.iter())
            .filter(|(_, k)| **k)
            .map(|(f, _)| f)
            .collect();
        out.write_record(&fields)?;
    }
    let bytes = out.into_inner().map_err(|e| LabError::io("<csv>", e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub library_version: String,
    pub command: String,
    pub rng: String,
    pub norm: String,
    pub block: usize,
    pub seeds: Vec<u64>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null")]
    pub extra: serde_json::Value,
}

impl Metadata {
    pub fn new(command: &str, block: usize, seeds: Vec<u64>) -> Metadata {
        Metadata {
            library_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            rng: crate::rng::RNG_NAME.to_string(),
            norm: "Euclidean 2-norm evaluated in binary64: ||b - A x||_2 / ||b||_2".to_string(),
            block,
            seeds,
            extra: serde_json::Value::Null,
        }
    }
}

/// Output directory that has been created and checked for writability.
#[derive(Debug, Clone)]
pub struct OutDir {
    path: PathBuf,
}

impl OutDir {
    pub fn prepare(path: impl Into<PathBuf>) -> Result<OutDir> {
        let path = path.into();
        fs::create_dir_all(&path).map_err(|e| LabError::io(&path, e))?;
        let probe = path.join(".posit-lab-write-probe");
        fs::write(&probe, b"").map_err(|e| LabError::io(&probe, e))?;
        fs::remove_file(&probe).map_err(|e| LabError::io(&probe, e))?;
        Ok(OutDir { path })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn create(&self, name: &str) -> Result<(PathBuf, fs::File)> {
        let p = self.path.join(name);
        let f = fs::File::create(&p).map_err(|e| LabError::io(&p, e))?;
        Ok((p, f))
    }

    pub fn write_metadata(&self, name: &str, meta: &Metadata) -> Result<PathBuf> {
        let (p, mut f) = self.create(name)?;
        serde_json::to_writer_pretty(&mut f, meta)?;
        f.write_all(b"\n").map_err(|e| LabError::io(&p, e))?;
        Ok(p)
    }
}
