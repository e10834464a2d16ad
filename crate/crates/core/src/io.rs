//! CSV ingestion and label output.
//!
//! Coordinates are written in shortest round-trip decimal form, so a
//! written dataset loads back bit-identical.

use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use crate::dataset::Dataset;
use crate::error::{Error, Result};
use crate::labeling::{ClusterLabeling, Label};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CsvSchema {
    pub has_header: bool,
    pub delimiter: u8,
}

impl Default for CsvSchema {
    fn default() -> Self {
        CsvSchema {
            has_header: false,
            delimiter: b',',
        }
    }
}

/// Loads a numeric CSV where every column is a coordinate. Row and column
/// numbers in errors are 1-based data rows (header excluded) and columns.
pub fn load_csv(path: impl AsRef<Path>, schema: &CsvSchema) -> Result<Dataset> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file, schema)
}

pub fn read_csv<R: Read>(reader: R, schema: &CsvSchema) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(schema.has_header)
        .delimiter(schema.delimiter)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut dim = None;
    let mut coords = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let row = row + 1;
        let expected = *dim.get_or_insert(record.len());
        if record.len() != expected || expected == 0 {
            return Err(Error::Schema {
                row,
                expected,
                found: record.len(),
            });
        }
        for (column, field) in record.iter().enumerate() {
            let value = field
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::Parse {
                    row,
                    column: column + 1,
                    field: field.to_string(),
                })?;
            coords.push(value);
        }
    }
    match dim {
        Some(dim) => Dataset::new(dim, coords),
        None => Err(Error::EmptyInput),
    }
}

/// Headerless CSV, one row per point in stable-index order.
pub fn write_dataset_csv(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = Vec::with_capacity(dataset.len() * dataset.dim() * 12);
    write_dataset(dataset, &mut out).map_err(|e| Error::io(path, e))?;
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}

pub fn write_dataset<W: Write>(dataset: &Dataset, mut out: W) -> std::io::Result<()> {
    for p in dataset.in_index_order().points() {
        for (i, c) in p.coords.iter().enumerate() {
            if i > 0 {
                out.write_all(b",")?;
            }
            write!(out, "{c}")?;
        }
        out.write_all(b"\n")?;
    }
    Ok(())
}

/// `index,cluster` CSV with noise written as `-1`.
pub fn write_labels(labeling: &ClusterLabeling, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = Vec::with_capacity(16 + labeling.len() * 8);
    format_labels(labeling, &mut out).map_err(|e| Error::io(path, e))?;
    std::fs::write(path, out).map_err(|e| Error::io(path, e))
}

pub fn format_labels<W: Write>(labeling: &ClusterLabeling, mut out: W) -> std::io::Result<()> {
    out.write_all(b"index,cluster\n")?;
    for (i, l) in labeling.labels().iter().enumerate() {
        writeln!(out, "{i},{}", l.as_i64())?;
    }
    Ok(())
}

pub fn load_labels(path: impl AsRef<Path>) -> Result<ClusterLabeling> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(file);
    let mut labels = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = record?;
        let row = row + 1;
        if record.len() != 2 {
            return Err(Error::Schema {
                row,
                expected: 2,
                found: record.len(),
            });
        }
        let parse_err = |column: usize| Error::Parse {
            row,
            column,
            field: record[column - 1].to_string(),
        };
        let index: usize = record[0].parse().map_err(|_| parse_err(1))?;
        if index != labels.len() {
            return Err(parse_err(1));
        }
        let cluster: i64 = record[1].parse().map_err(|_| parse_err(2))?;
        labels.push(match cluster {
            -1 => Label::Noise,
            c if c >= 1 && c <= u32::MAX as i64 => Label::Cluster(c as u32),
            _ => return Err(parse_err(2)),
        });
    }
    Ok(ClusterLabeling::from_labels(labels))
}
