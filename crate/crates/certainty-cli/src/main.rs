//! Command-line front end: evaluate external predictions, run the built-in
//! classifiers under cross-validation, and merge report files.
//!
//! Exit codes: 0 on success, 2 on any input problem (bad flags, malformed
//! files, misaligned inputs), 1 on internal faults.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use ndarray::ArrayView2;

use certainty::{
    build_ground_truth, cross_validate, encode_labels, io, measure_by_name, merge_reports,
    render_markdown, reports_to_json, BuiltinMeasure, ClassifierKind, ConfusionPair,
    CrossValidationPlan, Error, EvaluationReport, RunMetadata,
};

#[derive(Parser)]
#[command(
    name = "certainty",
    version,
    about = "Classifier evaluation with probabilistic confusion matrices and the certainty ratio"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Md,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an external prediction file against ground truth
    Evaluate {
        /// Ground truth: a single-column label file, or a dataset file whose
        /// last column is the label
        #[arg(long)]
        truth: PathBuf,
        /// Predictions: header row of class labels, then one probability row
        /// per instance, row-aligned with the truth
        #[arg(long)]
        pred: PathBuf,
        /// Dataset name for the report (defaults to the truth file stem)
        #[arg(long)]
        name: Option<String>,
        /// Extra measures beyond the accuracy family
        /// (comma-separated: precision,recall,f1,mcc)
        #[arg(long, value_delimiter = ',')]
        measures: Vec<String>,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// Also print CM, CM*, V, and U
        #[arg(long)]
        verbose: bool,
        /// Omit the timestamp so identical runs emit identical bytes
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Run built-in classifiers under stratified cross-validation
    Run {
        /// Dataset file(s): feature columns then a label column
        #[arg(long, required = true, num_args = 1..)]
        data: Vec<PathBuf>,
        /// Classifiers to run (comma-separated subset of knn3,nb,dt,rf)
        #[arg(long, value_delimiter = ',', default_value = "knn3,nb,dt,rf")]
        clf: Vec<String>,
        #[arg(long, default_value_t = 10)]
        folds: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Extra measures (comma-separated: precision,recall,f1,mcc)
        #[arg(long, value_delimiter = ',')]
        measures: Vec<String>,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// Omit timestamps so identical runs emit identical bytes
        #[arg(long)]
        no_timestamp: bool,
    },
    /// Merge report JSON files into one markdown table
    Report {
        /// Report JSON files produced by `evaluate` or `run`
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        /// Write the table here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    User(String),
    Internal(String),
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::Json(e) => CliError::Internal(e.to_string()),
            other => CliError::User(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Evaluate {
            truth,
            pred,
            name,
            measures,
            out,
            format,
            verbose,
            no_timestamp,
        } => cmd_evaluate(
            &truth,
            &pred,
            name,
            &measures,
            out.as_deref(),
            format,
            verbose,
            no_timestamp,
        ),
        Command::Run {
            data,
            clf,
            folds,
            seed,
            measures,
            out,
            format,
            no_timestamp,
        } => cmd_run(
            &data,
            &clf,
            folds,
            seed,
            &measures,
            out.as_deref(),
            format,
            no_timestamp,
        ),
        Command::Report { inputs, out } => cmd_report(&inputs, out.as_deref()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::User(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(message)) => {
            eprintln!("internal error: {message}");
            ExitCode::from(1)
        }
    }
}

fn parse_measures(tokens: &[String]) -> Result<Vec<BuiltinMeasure>, CliError> {
    tokens
        .iter()
        .filter(|t| !t.is_empty())
        .map(|token| {
            measure_by_name(token).ok_or_else(|| {
                CliError::User(format!(
                    "unknown measure {token:?}; valid measures: accuracy, precision, recall, f1, mcc"
                ))
            })
        })
        .collect()
}

fn parse_classifiers(tokens: &[String]) -> Result<Vec<ClassifierKind>, CliError> {
    let mut kinds = Vec::new();
    for token in tokens.iter().filter(|t| !t.is_empty()) {
        let kind = match token.as_str() {
            "knn3" => ClassifierKind::Knn { neighbors: 3 },
            "nb" => ClassifierKind::GaussianNb,
            "dt" => ClassifierKind::DecisionTree { max_depth: None },
            "rf" => ClassifierKind::RandomForest { trees: 100 },
            other => {
                return Err(CliError::User(format!(
                    "unknown classifier {other:?}; valid classifiers: knn3, nb, dt, rf"
                )))
            }
        };
        if !kinds.contains(&kind) {
            kinds.push(kind);
        }
    }
    if kinds.is_empty() {
        return Err(CliError::User("no classifier selected".into()));
    }
    Ok(kinds)
}

fn dataset_name(path: &Path, explicit: Option<String>) -> String {
    explicit.unwrap_or_else(|| {
        path.file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string())
    })
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::User(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(
    reports: &[EvaluationReport],
    format: Format,
    include_mean: bool,
) -> Result<String, CliError> {
    match format {
        Format::Json => Ok(reports_to_json(reports)?),
        Format::Md => Ok(render_markdown(reports, include_mean)),
    }
}

fn print_matrix(label: &str, m: ArrayView2<'_, f64>) {
    println!("{label}:");
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:8.3}")).collect();
        println!("  [{}]", cells.join(" "));
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_evaluate(
    truth: &Path,
    pred: &Path,
    name: Option<String>,
    measures: &[String],
    out: Option<&Path>,
    format: Format,
    verbose: bool,
    no_timestamp: bool,
) -> Result<(), CliError> {
    let extra = parse_measures(measures)?;
    let labels = io::load_truth_labels(truth)?;
    let encoding = encode_labels(&labels)?;
    let t = build_ground_truth(&labels, &encoding)?;
    let q = io::load_predictions(pred, &encoding)?;
    if t.num_instances() != q.num_instances() {
        return Err(CliError::User(format!(
            "misaligned inputs: {} truth row(s) vs {} prediction row(s)",
            t.num_instances(),
            q.num_instances()
        )));
    }

    let pair = ConfusionPair::compute(&t, &q)?;
    if verbose {
        print_matrix("CM", pair.cm().to_real().view());
        print_matrix("CM*", pair.cm_star().values().view());
        print_matrix("V", pair.decomposition().certainty().view());
        print_matrix("U", pair.decomposition().uncertainty().view());
    }

    let metadata = if no_timestamp {
        RunMetadata::unstamped(0, 0)
    } else {
        RunMetadata::stamped(0, 0)
    };
    let report = EvaluationReport::from_pair(
        dataset_name(truth, name),
        "external",
        &pair,
        &extra,
        metadata,
    )?;
    let text = render(std::slice::from_ref(&report), format, false)?;
    emit(&text, out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_run(
    data: &[PathBuf],
    clf: &[String],
    folds: usize,
    seed: u64,
    measures: &[String],
    out: Option<&Path>,
    format: Format,
    no_timestamp: bool,
) -> Result<(), CliError> {
    let kinds = parse_classifiers(clf)?;
    let extra = parse_measures(measures)?;
    let plan = CrossValidationPlan { folds, seed };

    let mut reports = Vec::new();
    for path in data {
        let dataset = io::load_dataset(path)?;
        let name = dataset_name(path, None);
        for kind in &kinds {
            let (q, t) = cross_validate(&dataset, kind, &plan)?;
            let pair = ConfusionPair::compute(&t, &q)?;
            let metadata = if no_timestamp {
                RunMetadata::unstamped(seed, folds)
            } else {
                RunMetadata::stamped(seed, folds)
            };
            reports.push(EvaluationReport::from_pair(
                name.clone(),
                kind.name(),
                &pair,
                &extra,
                metadata,
            )?);
        }
    }

    let text = render(&reports, format, data.len() > 1)?;
    emit(&text, out)
}

fn cmd_report(inputs: &[PathBuf], out: Option<&Path>) -> Result<(), CliError> {
    let mut batches = Vec::new();
    for path in inputs {
        batches.push(certainty::load_reports_json(path)?);
    }
    let merged = merge_reports(batches)?;
    if merged.is_empty() {
        return Err(CliError::User("no report rows in the given files".into()));
    }
    let text = render_markdown(&merged, true);
    emit(&text, out)
}
