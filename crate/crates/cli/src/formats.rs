//! File formats: sample CSV, spectrum JSON, raster CSV and error-table CSV.
//!
//! Floats are written with Rust's shortest round-trip formatting, so reading a
//! file back reproduces every value bit for bit.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use symtrig2d::analysis::ErrorTableRow;
use symtrig2d::{Complex64, Freq, FrequencyPair, Point2};

use crate::error::{CliError, CliResult};

pub const SAMPLE_HEADER: [&str; 6] = ["m", "n", "x", "y", "re", "im"];
pub const RASTER_HEADER: [&str; 4] = ["x", "y", "re", "im"];
pub const TABLE_HEADER: [&str; 5] = ["N", "exp_anti", "exp_sym", "cos2_anti", "cos2_sym"];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleRow {
    pub m: usize,
    pub n: usize,
    pub location: Point2,
    pub value: Complex64,
}

fn float(v: f64) -> String {
    format!("{v}")
}

pub fn write_samples<W: Write>(out: W, rows: &[SampleRow]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SAMPLE_HEADER)?;
    for r in rows {
        w.write_record([
            r.m.to_string(),
            r.n.to_string(),
            float(r.location.x),
            float(r.location.y),
            float(r.value.re),
            float(r.value.im),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_samples<R: Read>(input: R) -> CliResult<Vec<SampleRow>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(input);
    let mut records = reader.records();
    let header = records
        .next()
        .ok_or_else(|| CliError::Format("empty sample file".into()))??;
    if header.iter().map(str::trim).ne(SAMPLE_HEADER) {
        return Err(CliError::Format(format!(
            "expected header {}, found {}",
            SAMPLE_HEADER.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut rows = Vec::new();
    for (line, record) in records.enumerate() {
        let record = record?;
        let bad = |what: &str| CliError::Format(format!("row {}: {what}", line + 1));
        if record.len() != SAMPLE_HEADER.len() {
            return Err(bad("expected 6 fields"));
        }
        let int = |i: usize| record[i].trim().parse::<usize>().map_err(|_| bad(&format!("bad index '{}'", &record[i])));
        let num = |i: usize| record[i].trim().parse::<f64>().map_err(|_| bad(&format!("bad number '{}'", &record[i])));
        rows.push(SampleRow {
            m: int(0)?,
            n: int(1)?,
            location: Point2::new(num(2)?, num(3)?),
            value: Complex64::new(num(4)?, num(5)?),
        });
    }
    Ok(rows)
}

pub fn write_raster<W: Write>(out: W, rows: &[(Point2, Complex64)]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RASTER_HEADER)?;
    for (pt, v) in rows {
        w.write_record([float(pt.x), float(pt.y), float(v.re), float(v.im)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_table<W: Write>(out: W, rows: &[ErrorTableRow]) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TABLE_HEADER)?;
    for r in rows {
        let mut record = vec![r.n.to_string()];
        record.extend(r.values().iter().map(|&v| float(v)));
        w.write_record(&record)?;
    }
    w.flush()?;
    Ok(())
}

/// A frequency label: a JSON integer, or a string such as `"3/2"` for half-integers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Text(String),
}

impl From<Freq> for Label {
    fn from(f: Freq) -> Self {
        match f.as_int() {
            Some(k) => Label::Int(i64::from(k)),
            None => Label::Text(f.to_string()),
        }
    }
}

impl Label {
    pub fn to_freq(&self) -> CliResult<Freq> {
        match self {
            Label::Int(k) => i32::try_from(*k)
                .map(Freq::int)
                .map_err(|_| CliError::Format(format!("label {k} out of range"))),
            Label::Text(s) => s.parse().map_err(|e| CliError::Format(format!("{e}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffEntry {
    pub k: Label,
    pub l: Label,
    pub re: f64,
    pub im: f64,
}

impl CoeffEntry {
    pub fn new(p: FrequencyPair, v: Complex64) -> Self {
        CoeffEntry {
            k: p.k.into(),
            l: p.l.into(),
            re: v.re,
            im: v.im,
        }
    }

    pub fn pair(&self) -> CliResult<FrequencyPair> {
        Ok(FrequencyPair::new(self.k.to_freq()?, self.l.to_freq()?))
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Spectrum file. For the cosine families `N` holds the node-set parameter `M`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumFile {
    pub family: String,
    pub variant: Option<u8>,
    #[serde(rename = "N")]
    pub n: usize,
    pub a: f64,
    pub b: f64,
    #[serde(rename = "T")]
    pub t: f64,
    pub coeffs: Vec<CoeffEntry>,
}
