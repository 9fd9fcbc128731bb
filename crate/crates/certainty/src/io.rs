//! Deterministic file ingestion: datasets, truth labels, and prediction
//! matrices from comma-delimited text.
//!
//! No delimiter sniffing: the delimiter is a comma, quoting follows the
//! usual CSV rules. Every rejection names a 1-based file row and a column.

use std::path::Path;

use csv::StringRecord;
use ndarray::Array2;

use crate::classifiers::Dataset;
use crate::error::{Error, Result};
use crate::matrices::{LabelEncoding, ProbabilityMatrix, ROW_SUM_BAND};

fn malformed(path: &Path, reason: impl Into<String>) -> Error {
    Error::MalformedFile {
        path: path.display().to_string(),
        reason: reason.into(),
    }
}

fn read_records(path: &Path) -> Result<Vec<StringRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(false)
        .from_path(path)
        .map_err(|e| malformed(path, e.to_string()))?;
    let mut records = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| malformed(path, e.to_string()))?;
        records.push(record);
    }
    if records.is_empty() {
        return Err(malformed(path, "empty file"));
    }
    Ok(records)
}

fn file_line(record: &StringRecord, fallback: usize) -> usize {
    record
        .position()
        .map(|p| p.line() as usize)
        .unwrap_or(fallback)
}

fn parse_feature(cell: &str, row: usize, column: &str) -> Result<f64> {
    let value: f64 = cell.trim().parse().map_err(|_| Error::Parse {
        row,
        column: column.to_owned(),
        reason: format!("cannot parse {cell:?} as a number"),
    })?;
    if !value.is_finite() {
        return Err(Error::Parse {
            row,
            column: column.to_owned(),
            reason: format!("non-finite value {cell:?}"),
        });
    }
    Ok(value)
}

/// Loads a dataset file: feature columns followed by a class-label column.
///
/// A header row is auto-detected: when every feature cell of the first row
/// parses as a number, the row is data; otherwise it is taken as the
/// header and its feature cells become feature names.
pub fn load_dataset(path: impl AsRef<Path>) -> Result<Dataset> {
    let path = path.as_ref();
    let records = read_records(path)?;
    let width = records[0].len();
    if width < 2 {
        return Err(malformed(
            path,
            "need at least one feature column and a label column",
        ));
    }
    let m = width - 1;

    let has_header = records[0]
        .iter()
        .take(m)
        .any(|cell| cell.trim().parse::<f64>().is_err());
    let feature_names: Option<Vec<String>> = has_header.then(|| {
        records[0]
            .iter()
            .take(m)
            .map(|c| c.trim().to_owned())
            .collect()
    });
    let data = &records[if has_header { 1 } else { 0 }..];
    if data.is_empty() {
        return Err(malformed(path, "header but no data rows"));
    }

    let column_name = |j: usize| -> String {
        feature_names
            .as_ref()
            .map(|names| names[j].clone())
            .unwrap_or_else(|| (j + 1).to_string())
    };

    let mut features = Array2::<f64>::zeros((data.len(), m));
    let mut labels = Vec::with_capacity(data.len());
    for (i, record) in data.iter().enumerate() {
        let row = file_line(record, i + 1 + usize::from(has_header));
        for j in 0..m {
            features[(i, j)] = parse_feature(&record[j], row, &column_name(j))?;
        }
        let label = record[m].trim();
        if label.is_empty() {
            return Err(Error::Parse {
                row,
                column: "label".into(),
                reason: "empty class label".into(),
            });
        }
        labels.push(label.to_owned());
    }

    Dataset::new(features, labels, feature_names)
}

/// Loads ground-truth labels for evaluate-only runs.
///
/// A single-column file is read as bare labels, one per row, with no
/// header. Any wider file is read as a dataset and its label column used.
pub fn load_truth_labels(path: impl AsRef<Path>) -> Result<Vec<String>> {
    let path = path.as_ref();
    let records = read_records(path)?;
    if records[0].len() > 1 {
        return Ok(load_dataset(path)?.labels().to_vec());
    }
    let mut labels = Vec::with_capacity(records.len());
    for (i, record) in records.iter().enumerate() {
        let label = record[0].trim();
        if label.is_empty() {
            return Err(Error::Parse {
                row: file_line(record, i + 1),
                column: "label".into(),
                reason: "empty class label".into(),
            });
        }
        labels.push(label.to_owned());
    }
    Ok(labels)
}

/// Loads a prediction file: a header of class labels, then one probability
/// row per instance.
///
/// Columns are reordered to the encoding's canonical order, so any column
/// permutation of the same file loads to the identical matrix. Rows are
/// validated and renormalized under the same policy as
/// [`ProbabilityMatrix::new`].
pub fn load_predictions(
    path: impl AsRef<Path>,
    encoding: &LabelEncoding,
) -> Result<ProbabilityMatrix> {
    let path = path.as_ref();
    let records = read_records(path)?;
    let k = encoding.num_classes();

    let header = &records[0];
    if header.len() != k {
        return Err(malformed(
            path,
            format!(
                "header has {} column(s), expected the {} class label(s) {:?}",
                header.len(),
                k,
                encoding.classes()
            ),
        ));
    }
    let mut column_to_class = Vec::with_capacity(k);
    for cell in header.iter() {
        let label = cell.trim();
        match encoding.index_of(label) {
            Some(idx) if !column_to_class.contains(&idx) => column_to_class.push(idx),
            _ => {
                return Err(malformed(
                    path,
                    format!(
                        "header classes must match {:?} exactly, got {:?}",
                        encoding.classes(),
                        header.iter().map(str::trim).collect::<Vec<_>>()
                    ),
                ));
            }
        }
    }

    let data = &records[1..];
    if data.is_empty() {
        return Err(malformed(path, "no probability rows after the header"));
    }

    let mut values = Array2::<f64>::zeros((data.len(), k));
    for (i, record) in data.iter().enumerate() {
        let row = file_line(record, i + 2);
        let mut sum = 0.0;
        for (j, cell) in record.iter().enumerate() {
            let value: f64 = cell.trim().parse().map_err(|_| Error::Parse {
                row,
                column: encoding.label(column_to_class[j]).to_owned(),
                reason: format!("cannot parse {cell:?} as a probability"),
            })?;
            if !value.is_finite() || value < 0.0 {
                return Err(Error::InvalidProbability {
                    row,
                    reason: format!("entry {value} is not a probability"),
                });
            }
            values[(i, column_to_class[j])] = value;
            sum += value;
        }
        if (sum - 1.0).abs() > ROW_SUM_BAND {
            return Err(Error::InvalidProbability {
                row,
                reason: format!("row sums to {sum}, outside the accepted band around 1"),
            });
        }
    }

    ProbabilityMatrix::new(values)
}
