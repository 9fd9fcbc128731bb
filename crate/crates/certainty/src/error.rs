//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced while building matrices, evaluating measures, fitting
/// classifiers, or reading and writing files.
#[derive(Error, Debug)]
pub enum Error {
    /// A classification problem needs at least two distinct class labels.
    #[error("degenerate problem: found {distinct} distinct class label(s), need at least 2")]
    DegenerateLabels { distinct: usize },

    /// A label was not present in the encoding used to build a matrix.
    #[error("unknown class label {label:?}")]
    UnknownLabel { label: String },

    /// Two matrices that must share a shape do not.
    #[error("dimension mismatch: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    /// Row-aligned inputs carry different instance counts.
    #[error("inconsistent instance counts: {left} vs {right}")]
    InstanceCountMismatch { left: usize, right: usize },

    /// A measure was applied to a matrix with zero total mass.
    #[error("zero total mass: measure undefined on an all-zero matrix")]
    ZeroMass,

    /// The certainty ratio is undefined for these measure values.
    #[error("undefined certainty ratio: phi_v={phi_v}, phi_u={phi_u} with nonzero uncertainty mass")]
    UndefinedRatio { phi_v: f64, phi_u: f64 },

    /// A probability row failed validation (1-based row number).
    #[error("invalid probability row {row}: {reason}")]
    InvalidProbability { row: usize, reason: String },

    /// Inputs were empty where at least one instance is required.
    #[error("empty input: {0}")]
    EmptyInput(String),

    /// A cell of a delimited file could not be parsed (1-based row number).
    #[error("row {row}, column {column}: {reason}")]
    Parse {
        row: usize,
        column: String,
        reason: String,
    },

    /// A file-level structural problem (empty file, ragged rows, bad header).
    #[error("malformed file {path}: {reason}")]
    MalformedFile { path: String, reason: String },

    /// A report file carries a schema version this build does not understand.
    #[error("unsupported report schema version {found}, expected {expected}")]
    SchemaVersion { found: u32, expected: u32 },

    /// Stratified folds cannot be formed.
    #[error("cannot stratify {folds} folds: smallest class has only {smallest_class} instance(s)")]
    Stratification { folds: usize, smallest_class: usize },

    /// An out-of-range configuration value.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
