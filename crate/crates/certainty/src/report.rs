//! Evaluation reports: one table row per (dataset, classifier) run, JSON
//! persistence, and markdown rendering.
//!
//! JSON stores full-precision fractions and is the lossless interchange
//! format; markdown applies display rounding (3 decimals for accuracies,
//! 1 decimal for the div and C_ρ percentages).

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrices::ConfusionPair;
use crate::measures::{accuracy_report, measure_breakdown, PerformanceMeasure};

/// Bumped whenever the report JSON layout changes incompatibly.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// One measure evaluated on `CM`, `CM★`, `V`, and `U`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureRecord {
    pub on_cm: f64,
    pub on_cm_star: f64,
    pub on_certainty: f64,
    pub on_uncertainty: f64,
    /// Fraction in `[0, 1]`; `None` when the ratio is undefined for this
    /// measure's values.
    pub certainty_ratio: Option<f64>,
}

/// How a report row was produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub seed: u64,
    pub folds: usize,
    /// RFC 3339 creation time; omitted entirely in comparison mode so two
    /// identical runs serialize to identical bytes.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

impl RunMetadata {
    /// Metadata carrying the current UTC time.
    pub fn stamped(seed: u64, folds: usize) -> Self {
        let now = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true);
        Self {
            seed,
            folds,
            timestamp: Some(now),
        }
    }

    /// Metadata without a timestamp, for byte-comparable output.
    pub fn unstamped(seed: u64, folds: usize) -> Self {
        Self {
            seed,
            folds,
            timestamp: None,
        }
    }
}

/// One row of the evaluation table.
///
/// Accuracy fields are fractions in `[0, 1]`; `divergence_pct` and
/// `certainty_ratio_pct` are the fractional values multiplied by 100.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub dataset: String,
    pub classifier: String,
    pub acc: f64,
    pub acc_star: f64,
    pub acc_v_star: f64,
    pub acc_u_star: f64,
    pub lambda_v: f64,
    pub lambda_u: f64,
    pub divergence_pct: f64,
    pub certainty_ratio_pct: f64,
    /// Extension measures beyond the accuracy family, keyed by measure name.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub measures: BTreeMap<String, MeasureRecord>,
    pub metadata: RunMetadata,
}

impl EvaluationReport {
    /// Assembles a report row from a computed confusion pair.
    pub fn from_pair<M: PerformanceMeasure>(
        dataset: impl Into<String>,
        classifier: impl Into<String>,
        pair: &ConfusionPair,
        extra_measures: &[M],
        metadata: RunMetadata,
    ) -> Result<Self> {
        let summary = accuracy_report(pair)?;
        let mut measures = BTreeMap::new();
        for measure in extra_measures {
            let b = measure_breakdown(measure, pair);
            measures.insert(
                measure.name(),
                MeasureRecord {
                    on_cm: b.on_cm,
                    on_cm_star: b.on_cm_star,
                    on_certainty: b.on_certainty,
                    on_uncertainty: b.on_uncertainty,
                    certainty_ratio: b.certainty_ratio,
                },
            );
        }
        Ok(Self {
            dataset: dataset.into(),
            classifier: classifier.into(),
            acc: summary.measure_on_cm,
            acc_star: summary.measure_on_cm_star,
            acc_v_star: summary.decomposition.acc_v,
            acc_u_star: summary.decomposition.acc_u,
            lambda_v: summary.decomposition.lambda_v,
            lambda_u: summary.decomposition.lambda_u,
            divergence_pct: summary.divergence * 100.0,
            certainty_ratio_pct: summary.certainty_ratio * 100.0,
            measures,
            metadata,
        })
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct ReportFile {
    schema_version: u32,
    reports: Vec<EvaluationReport>,
}

/// Serializes reports to the stable JSON document format.
pub fn reports_to_json(reports: &[EvaluationReport]) -> Result<String> {
    let file = ReportFile {
        schema_version: REPORT_SCHEMA_VERSION,
        reports: reports.to_vec(),
    };
    let mut text = serde_json::to_string_pretty(&file)?;
    text.push('\n');
    Ok(text)
}

/// Writes the JSON document to a file.
pub fn write_reports_json(reports: &[EvaluationReport], path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, reports_to_json(reports)?)?;
    Ok(())
}

/// Reads a report JSON document, refusing unknown schema versions.
pub fn load_reports_json(path: impl AsRef<Path>) -> Result<Vec<EvaluationReport>> {
    let text = std::fs::read_to_string(path)?;
    let file: ReportFile = serde_json::from_str(&text)?;
    if file.schema_version != REPORT_SCHEMA_VERSION {
        return Err(Error::SchemaVersion {
            found: file.schema_version,
            expected: REPORT_SCHEMA_VERSION,
        });
    }
    Ok(file.reports)
}

/// Flattens report batches into one list sorted by (dataset, classifier),
/// rejecting duplicate pairs.
pub fn merge_reports(
    batches: impl IntoIterator<Item = Vec<EvaluationReport>>,
) -> Result<Vec<EvaluationReport>> {
    let mut merged: Vec<EvaluationReport> = batches.into_iter().flatten().collect();
    merged.sort_by(|a, b| (&a.dataset, &a.classifier).cmp(&(&b.dataset, &b.classifier)));
    for pair in merged.windows(2) {
        if pair[0].dataset == pair[1].dataset && pair[0].classifier == pair[1].classifier {
            return Err(Error::InvalidParameter(format!(
                "duplicate report for dataset {:?}, classifier {:?}",
                pair[0].dataset, pair[0].classifier
            )));
        }
    }
    Ok(merged)
}

fn push_core_row(out: &mut String, dataset: &str, classifier: &str, r: [f64; 6]) {
    out.push_str(&format!(
        "| {} | {} | {:.3} | {:.3} | {:.3} | {:.3} | {:.1} | {:.1} |\n",
        dataset, classifier, r[0], r[1], r[2], r[3], r[4], r[5]
    ));
}

/// Renders the accuracy-family table (plus one table per extension
/// measure, when present).
///
/// Rows are sorted by (dataset, classifier). With `include_mean`, one
/// per-classifier mean row is appended per column, mirroring how results
/// are usually summarized across datasets.
pub fn render_markdown(reports: &[EvaluationReport], include_mean: bool) -> String {
    let mut rows: Vec<&EvaluationReport> = reports.iter().collect();
    rows.sort_by(|a, b| (&a.dataset, &a.classifier).cmp(&(&b.dataset, &b.classifier)));

    let mut out = String::new();
    out.push_str("| Dataset | Classifier | Acc | Acc* | Acc_v* | Acc_u* | div | C_rho |\n");
    out.push_str("|---|---|---|---|---|---|---|---|\n");
    for r in &rows {
        push_core_row(
            &mut out,
            &r.dataset,
            &r.classifier,
            [
                r.acc,
                r.acc_star,
                r.acc_v_star,
                r.acc_u_star,
                r.divergence_pct,
                r.certainty_ratio_pct,
            ],
        );
    }

    if include_mean {
        let mut classifiers: Vec<&str> = rows.iter().map(|r| r.classifier.as_str()).collect();
        classifiers.sort_unstable();
        classifiers.dedup();
        for classifier in classifiers {
            let group: Vec<&&EvaluationReport> = rows
                .iter()
                .filter(|r| r.classifier == classifier)
                .collect();
            let n = group.len() as f64;
            let mean = |f: fn(&EvaluationReport) -> f64| -> f64 {
                group.iter().map(|r| f(r)).sum::<f64>() / n
            };
            push_core_row(
                &mut out,
                "Mean",
                classifier,
                [
                    mean(|r| r.acc),
                    mean(|r| r.acc_star),
                    mean(|r| r.acc_v_star),
                    mean(|r| r.acc_u_star),
                    mean(|r| r.divergence_pct),
                    mean(|r| r.certainty_ratio_pct),
                ],
            );
        }
    }

    let mut measure_names: Vec<&str> = rows
        .iter()
        .flat_map(|r| r.measures.keys().map(String::as_str))
        .collect();
    measure_names.sort_unstable();
    measure_names.dedup();
    for name in measure_names {
        out.push_str(&format!("\n### {name}\n\n"));
        out.push_str("| Dataset | Classifier | CM | CM* | V | U | C_rho |\n");
        out.push_str("|---|---|---|---|---|---|---|\n");
        for r in &rows {
            if let Some(m) = r.measures.get(name) {
                let ratio = m
                    .certainty_ratio
                    .map(|c| format!("{:.1}", c * 100.0))
                    .unwrap_or_else(|| "n/a".into());
                out.push_str(&format!(
                    "| {} | {} | {:.3} | {:.3} | {:.3} | {:.3} | {} |\n",
                    r.dataset, r.classifier, m.on_cm, m.on_cm_star, m.on_certainty,
                    m.on_uncertainty, ratio
                ));
            }
        }
    }

    out
}
