//! File-backed dataset readers.

use std::fs::File;
use std::io::{BufRead, BufReader, Lines};
use std::path::{Path, PathBuf};

use crate::error::Error;
use crate::estimator::Label;
use crate::feature::{FeatureName, FeatureValue, FeatureVector};
use crate::stream::StreamItem;

/// Column names of the electricity pricing dataset, in file order. All
/// eight features are numeric; `day` carries its integer code 1-7.
pub const ELEC2_FEATURES: [&str; 8] = [
    "date",
    "day",
    "period",
    "nswprice",
    "nswdemand",
    "vicprice",
    "vicdemand",
    "transfer",
];

/// Number of samples in the full dataset.
pub const ELEC2_SAMPLES: usize = 45_312;

/// Opens a comma-separated electricity pricing file: 9 columns, the 8
/// features above plus a trailing `UP`/`DOWN` class column. An optional
/// header line is auto-detected by a non-numeric first field. Samples are
/// yielded in file order; nothing is shuffled.
pub fn load_elec2(path: impl AsRef<Path>) -> Result<Elec2Reader, Error> {
    let path = path.as_ref().to_path_buf();
    let file = File::open(&path).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    let mut lines = BufReader::new(file).lines();

    // Peek at the first line; replay it as data unless it looks like a
    // header.
    let mut pending = None;
    let mut line_no = 0;
    if let Some(first) = lines.next() {
        line_no = 1;
        let first = first.map_err(|source| Error::Io {
            path: path.clone(),
            source,
        })?;
        let is_header = first
            .split(',')
            .next()
            .map(|field| field.trim().parse::<f64>().is_err())
            .unwrap_or(false);
        if !is_header {
            pending = Some(first);
        }
    }

    Ok(Elec2Reader {
        path,
        lines,
        line_no,
        pending,
    })
}

/// Lazy line-by-line reader produced by [`load_elec2`].
pub struct Elec2Reader {
    path: PathBuf,
    lines: Lines<BufReader<File>>,
    line_no: usize,
    pending: Option<String>,
}

impl Elec2Reader {
    fn parse_row(line: &str, line_no: usize) -> Result<(FeatureVector, Label), Error> {
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != ELEC2_FEATURES.len() + 1 {
            return Err(Error::ColumnCount {
                line: line_no,
                expected: ELEC2_FEATURES.len() + 1,
                got: fields.len(),
            });
        }
        let mut x = FeatureVector::new();
        for (column, field) in ELEC2_FEATURES.iter().zip(&fields) {
            let value: f64 = field.parse().map_err(|_| Error::NumericField {
                line: line_no,
                column,
                value: field.to_string(),
            })?;
            if !value.is_finite() {
                return Err(Error::NumericField {
                    line: line_no,
                    column,
                    value: field.to_string(),
                });
            }
            x.insert(
                FeatureName::new(*column).expect("column names are non-empty"),
                FeatureValue::Numeric(value),
            )?;
        }
        let label = match fields[ELEC2_FEATURES.len()] {
            "UP" => Label::text("UP"),
            "DOWN" => Label::text("DOWN"),
            other => {
                return Err(Error::UnknownLabel {
                    line: line_no,
                    value: other.to_string(),
                })
            }
        };
        Ok((x, label))
    }
}

impl Iterator for Elec2Reader {
    type Item = StreamItem;

    fn next(&mut self) -> Option<Self::Item> {
        if let Some(line) = self.pending.take() {
            return Some(Self::parse_row(&line, self.line_no));
        }
        loop {
            match self.lines.next()? {
                Err(source) => {
                    return Some(Err(Error::Io {
                        path: self.path.clone(),
                        source,
                    }))
                }
                Ok(line) => {
                    self.line_no += 1;
                    if line.is_empty() {
                        continue;
                    }
                    return Some(Self::parse_row(&line, self.line_no));
                }
            }
        }
    }
}
