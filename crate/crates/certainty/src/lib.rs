//! Classifier evaluation through probabilistic confusion matrices.
//!
//! Classical evaluation hardens classifier probabilities into one-hot
//! decisions before building the confusion matrix `CM = Tᵀ·P`, discarding
//! how confident each prediction was. This crate keeps the probabilities:
//! the probabilistic confusion matrix `CM★ = Tᵀ·Q` splits into a certainty
//! matrix `V` (winning probabilities) and an uncertainty matrix `U`
//! (everything else), and the certainty ratio
//! `C_ρ = φ(V) / (φ(V) + φ(U))` reports how much of any performance
//! measure φ is carried by confident predictions.
//!
//! The crate provides:
//!
//! - [`matrices`]: `T`, `P`, `Q`, `CM`, `CM★`, and the `V`/`U` split;
//! - [`measures`]: accuracy, macro precision/recall/F_β, multiclass MCC,
//!   the λ-weighted accuracy decomposition, divergence, and `C_ρ`;
//! - [`classifiers`]: desk-scale k-NN, Gaussian naive Bayes, CART decision
//!   trees, and random forests, plus stratified cross-validation;
//! - [`io`] and [`report`]: CSV ingestion and JSON/markdown reporting.

pub mod classifiers;
pub mod error;
pub mod io;
pub mod matrices;
pub mod measures;
pub mod report;

pub use classifiers::{
    cross_validate, fit_decision_tree, fit_gaussian_nb, fit_knn, fit_random_forest,
    ClassifierKind, CrossValidationPlan, Dataset, FittedModel, RandomForestConfig,
};
pub use error::{Error, Result};
pub use matrices::{
    build_ground_truth, confusion, decompose, encode_labels, harden, probabilistic_confusion,
    split_q, CertaintyDecomposition, ConfusionMatrix, ConfusionPair, GroundTruthMatrix,
    HardPredictionMatrix, LabelEncoding, ProbabilisticConfusionMatrix, ProbabilityMatrix,
};
pub use measures::{
    accuracy, accuracy_decomposition, accuracy_report, builtin_measures, certainty_ratio,
    divergence, lambda_weights, measure_breakdown, measure_by_name, AccuracyDecomposition,
    BuiltinMeasure, CertaintyReport, MeasureBreakdown, PerformanceMeasure,
};
pub use report::{
    load_reports_json, merge_reports, render_markdown, reports_to_json, write_reports_json,
    EvaluationReport, MeasureRecord, RunMetadata, REPORT_SCHEMA_VERSION,
};
