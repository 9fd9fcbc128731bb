//! Performance measures over confusion matrices, the accuracy
//! decomposition, probabilistic divergence, and the certainty ratio.
//!
//! Every measure here is a function of a `k×k` non-negative real matrix, so
//! the same code evaluates `CM`, `CM★`, `V`, and `U`. The certainty ratio
//! `C_ρ = φ(V) / (φ(V) + φ(U))` reports which fraction of a measure's value
//! is carried by winning (confident) probability mass.

use ndarray::ArrayView2;

use crate::error::{Error, Result};
use crate::matrices::{ConfusionMatrix, ConfusionPair, ProbabilisticConfusionMatrix};

/// A classification performance measure evaluable on any `k×k`
/// non-negative real matrix (confusion matrix, `CM★`, `V`, or `U`).
pub trait PerformanceMeasure {
    /// Short stable identifier, usable as a report key.
    fn name(&self) -> String;

    /// Evaluates the measure. All-zero matrices yield 0 by convention, so
    /// that a classifier with no uncertainty mass has `φ(U) = 0`.
    fn evaluate(&self, m: ArrayView2<'_, f64>) -> f64;
}

/// The measures named by the standard evaluation toolbox.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BuiltinMeasure {
    /// Trace over total sum.
    Accuracy,
    /// Unweighted mean of per-class precision (zero for empty columns).
    MacroPrecision,
    /// Unweighted mean of per-class recall (zero for empty rows).
    MacroRecall,
    /// Unweighted mean of per-class F_β.
    MacroFBeta { beta: f64 },
    /// Multiclass Matthews correlation coefficient; 0 on degenerate
    /// matrices where the denominator vanishes.
    MatthewsCorrelation,
}

impl BuiltinMeasure {
    /// Macro F₁, the default F_β.
    pub fn f1() -> Self {
        BuiltinMeasure::MacroFBeta { beta: 1.0 }
    }
}

impl PerformanceMeasure for BuiltinMeasure {
    fn name(&self) -> String {
        match self {
            BuiltinMeasure::Accuracy => "accuracy".into(),
            BuiltinMeasure::MacroPrecision => "precision".into(),
            BuiltinMeasure::MacroRecall => "recall".into(),
            BuiltinMeasure::MacroFBeta { beta } if *beta == 1.0 => "f1".into(),
            BuiltinMeasure::MacroFBeta { beta } => format!("f{beta}"),
            BuiltinMeasure::MatthewsCorrelation => "mcc".into(),
        }
    }

    fn evaluate(&self, m: ArrayView2<'_, f64>) -> f64 {
        let total = m.sum();
        if total == 0.0 {
            return 0.0;
        }
        let k = m.nrows();
        match self {
            BuiltinMeasure::Accuracy => m.diag().sum() / total,
            BuiltinMeasure::MacroPrecision => {
                mean_over_classes(k, |j| safe_div(m[(j, j)], m.column(j).sum()))
            }
            BuiltinMeasure::MacroRecall => {
                mean_over_classes(k, |j| safe_div(m[(j, j)], m.row(j).sum()))
            }
            BuiltinMeasure::MacroFBeta { beta } => {
                let b2 = beta * beta;
                mean_over_classes(k, |j| {
                    let p = safe_div(m[(j, j)], m.column(j).sum());
                    let r = safe_div(m[(j, j)], m.row(j).sum());
                    safe_div((1.0 + b2) * p * r, b2 * p + r)
                })
            }
            BuiltinMeasure::MatthewsCorrelation => {
                let trace = m.diag().sum();
                let row_sums: Vec<f64> = (0..k).map(|i| m.row(i).sum()).collect();
                let col_sums: Vec<f64> = (0..k).map(|j| m.column(j).sum()).collect();
                let cross: f64 = row_sums.iter().zip(&col_sums).map(|(t, p)| t * p).sum();
                let numerator = trace * total - cross;
                let row_sq: f64 = row_sums.iter().map(|t| t * t).sum();
                let col_sq: f64 = col_sums.iter().map(|p| p * p).sum();
                let denominator = ((total * total - col_sq) * (total * total - row_sq)).sqrt();
                if denominator == 0.0 {
                    0.0
                } else {
                    numerator / denominator
                }
            }
        }
    }
}

fn mean_over_classes(k: usize, f: impl Fn(usize) -> f64) -> f64 {
    (0..k).map(f).sum::<f64>() / k as f64
}

fn safe_div(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// The catalog of built-in measures, each pluggable into [`certainty_ratio`].
pub fn builtin_measures() -> Vec<BuiltinMeasure> {
    vec![
        BuiltinMeasure::Accuracy,
        BuiltinMeasure::MacroPrecision,
        BuiltinMeasure::MacroRecall,
        BuiltinMeasure::f1(),
        BuiltinMeasure::MatthewsCorrelation,
    ]
}

/// Looks a builtin measure up by its report key.
pub fn measure_by_name(name: &str) -> Option<BuiltinMeasure> {
    match name {
        "accuracy" => Some(BuiltinMeasure::Accuracy),
        "precision" => Some(BuiltinMeasure::MacroPrecision),
        "recall" => Some(BuiltinMeasure::MacroRecall),
        "f1" => Some(BuiltinMeasure::f1()),
        "mcc" => Some(BuiltinMeasure::MatthewsCorrelation),
        _ => None,
    }
}

/// Trace over total sum.
///
/// Unlike [`BuiltinMeasure::Accuracy`], this errors on an all-zero matrix so
/// callers apply the zero-matrix convention explicitly.
pub fn accuracy(m: ArrayView2<'_, f64>) -> Result<f64> {
    let total = m.sum();
    if total == 0.0 {
        return Err(Error::ZeroMass);
    }
    Ok(m.diag().sum() / total)
}

/// Mass fractions of `V` and `U` within `CM★`; they sum to 1.
pub fn lambda_weights(v: ArrayView2<'_, f64>, u: ArrayView2<'_, f64>) -> Result<(f64, f64)> {
    let v_mass = v.sum();
    let u_mass = u.sum();
    let total = v_mass + u_mass;
    if total == 0.0 {
        return Err(Error::ZeroMass);
    }
    Ok((v_mass / total, u_mass / total))
}

/// Accuracy split along the certainty/uncertainty decomposition:
/// `Acc★ = λ_v·Acc★_v + λ_u·Acc★_u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccuracyDecomposition {
    pub acc_star: f64,
    pub lambda_v: f64,
    pub lambda_u: f64,
    pub acc_v: f64,
    pub acc_u: f64,
}

/// Computes the accuracy decomposition from `V` and `U`.
///
/// `acc_v` (resp. `acc_u`) is the trace-over-sum of `V` (resp. `U`), taken
/// as 0 when the matrix carries no mass; `acc_star` is the λ-weighted sum,
/// so the decomposition identity holds by construction.
pub fn accuracy_decomposition(
    v: ArrayView2<'_, f64>,
    u: ArrayView2<'_, f64>,
) -> Result<AccuracyDecomposition> {
    let (lambda_v, lambda_u) = lambda_weights(v, u)?;
    let acc_v = accuracy(v).unwrap_or(0.0);
    let acc_u = accuracy(u).unwrap_or(0.0);
    Ok(AccuracyDecomposition {
        acc_star: lambda_v * acc_v + lambda_u * acc_u,
        lambda_v,
        lambda_u,
        acc_v,
        acc_u,
    })
}

/// Normalized Frobenius distance `d(CM, CM★) = ‖CM − CM★‖_F / n`.
///
/// Zero exactly when the probabilities are one-hot; bounded by
/// `√(1 − 1/k)` when `P` is the argmax hardening of `Q`.
pub fn divergence(cm: &ConfusionMatrix, cm_star: &ProbabilisticConfusionMatrix) -> Result<f64> {
    if cm.num_classes() != cm_star.num_classes() {
        return Err(Error::ShapeMismatch {
            expected_rows: cm.num_classes(),
            expected_cols: cm.num_classes(),
            rows: cm_star.num_classes(),
            cols: cm_star.num_classes(),
        });
    }
    if cm.num_instances() != cm_star.num_instances() {
        return Err(Error::InstanceCountMismatch {
            left: cm.num_instances(),
            right: cm_star.num_instances(),
        });
    }
    let sum_sq: f64 = cm
        .values()
        .iter()
        .zip(cm_star.values().iter())
        .map(|(&a, &b)| {
            let diff = a as f64 - b;
            diff * diff
        })
        .sum();
    Ok(sum_sq.sqrt() / cm.num_instances() as f64)
}

/// `C_ρ = φ(V) / (φ(V) + φ(U))`, the fraction of a measure's value
/// attributable to confident predictions.
///
/// When `U` carries no mass the classifier is fully confident and the ratio
/// is 1. When the measure values would make the ratio meaningless (both
/// zero, or either negative, as MCC can be) this refuses with
/// [`Error::UndefinedRatio`] rather than fabricating a number; any value
/// returned lies in `[0, 1]`.
pub fn certainty_ratio<M: PerformanceMeasure + ?Sized>(
    measure: &M,
    v: ArrayView2<'_, f64>,
    u: ArrayView2<'_, f64>,
) -> Result<f64> {
    let v_mass = v.sum();
    let u_mass = u.sum();
    if v_mass + u_mass == 0.0 {
        return Err(Error::ZeroMass);
    }
    if u_mass == 0.0 {
        return Ok(1.0);
    }
    let phi_v = if v_mass == 0.0 { 0.0 } else { measure.evaluate(v) };
    let phi_u = measure.evaluate(u);
    if phi_v < 0.0 || phi_u < 0.0 || (phi_v == 0.0 && phi_u == 0.0) {
        return Err(Error::UndefinedRatio { phi_v, phi_u });
    }
    Ok(phi_v / (phi_v + phi_u))
}

/// The accuracy-family summary of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertaintyReport {
    /// Accuracy on `CM`.
    pub measure_on_cm: f64,
    /// Accuracy on `CM★`.
    pub measure_on_cm_star: f64,
    /// `d(CM, CM★)`, a fraction in `[0, 1)`.
    pub divergence: f64,
    /// `C_ρ` for accuracy, a fraction in `[0, 1]`.
    pub certainty_ratio: f64,
    pub decomposition: AccuracyDecomposition,
}

/// Computes the accuracy-family report for a confusion pair.
pub fn accuracy_report(pair: &ConfusionPair) -> Result<CertaintyReport> {
    let v = pair.decomposition().certainty().view();
    let u = pair.decomposition().uncertainty().view();
    let decomposition = accuracy_decomposition(v, u)?;
    Ok(CertaintyReport {
        measure_on_cm: accuracy(pair.cm().to_real().view())?,
        measure_on_cm_star: decomposition.acc_star,
        divergence: divergence(pair.cm(), pair.cm_star())?,
        certainty_ratio: certainty_ratio(&BuiltinMeasure::Accuracy, v, u)?,
        decomposition,
    })
}

/// One measure evaluated on all four matrices of a confusion pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureBreakdown {
    pub on_cm: f64,
    pub on_cm_star: f64,
    pub on_certainty: f64,
    pub on_uncertainty: f64,
    /// `None` when the ratio is undefined for this measure's values.
    pub certainty_ratio: Option<f64>,
}

/// Evaluates a measure on `CM`, `CM★`, `V`, and `U`, with its `C_ρ`.
pub fn measure_breakdown<M: PerformanceMeasure + ?Sized>(
    measure: &M,
    pair: &ConfusionPair,
) -> MeasureBreakdown {
    let v = pair.decomposition().certainty().view();
    let u = pair.decomposition().uncertainty().view();
    MeasureBreakdown {
        on_cm: measure.evaluate(pair.cm().to_real().view()),
        on_cm_star: measure.evaluate(pair.cm_star().values().view()),
        on_certainty: measure.evaluate(v),
        on_uncertainty: measure.evaluate(u),
        certainty_ratio: certainty_ratio(measure, v, u).ok(),
    }
}
