//! Desk-scale classifiers emitting per-class probability rows, plus a
//! stratified cross-validation harness.
//!
//! Four model families are provided: k-nearest neighbors, Gaussian
//! naive Bayes, CART decision trees, and random forests. All of them
//! implement `predict_proba`, returning one valid probability row per
//! query instance, which is what the probabilistic confusion matrix
//! machinery consumes.

mod cross_validation;
mod decision_tree;
mod knn;
mod naive_bayes;
mod random_forest;

pub use cross_validation::{cross_validate, stratified_folds, CrossValidationPlan};
pub use decision_tree::fit_decision_tree;
pub use knn::fit_knn;
pub use naive_bayes::fit_gaussian_nb;
pub use random_forest::{fit_random_forest, RandomForestConfig};

use ndarray::{Array2, ArrayView2};

use crate::error::{Error, Result};
use crate::matrices::{LabelEncoding, ProbabilityMatrix};

/// A tabular classification dataset: real-valued features and one class
/// label per instance.
#[derive(Debug, Clone)]
pub struct Dataset {
    features: Array2<f64>,
    labels: Vec<String>,
    feature_names: Option<Vec<String>>,
    encoding: LabelEncoding,
}

impl Dataset {
    /// Validates and wraps features and labels.
    ///
    /// Requires at least one feature column, finite feature values, one
    /// label per row, and at least two distinct classes.
    pub fn new(
        features: Array2<f64>,
        labels: Vec<String>,
        feature_names: Option<Vec<String>>,
    ) -> Result<Self> {
        if features.nrows() == 0 {
            return Err(Error::EmptyInput("dataset has no instances".into()));
        }
        if features.ncols() == 0 {
            return Err(Error::EmptyInput("dataset has no feature columns".into()));
        }
        if features.nrows() != labels.len() {
            return Err(Error::InstanceCountMismatch {
                left: features.nrows(),
                right: labels.len(),
            });
        }
        if let Some(names) = &feature_names {
            if names.len() != features.ncols() {
                return Err(Error::InvalidParameter(format!(
                    "{} feature names for {} feature columns",
                    names.len(),
                    features.ncols()
                )));
            }
        }
        for (i, row) in features.rows().into_iter().enumerate() {
            if row.iter().any(|x| !x.is_finite()) {
                return Err(Error::Parse {
                    row: i + 1,
                    column: "<features>".into(),
                    reason: "non-finite feature value".into(),
                });
            }
        }
        let encoding = LabelEncoding::from_labels(&labels)?;
        Ok(Self {
            features,
            labels,
            feature_names,
            encoding,
        })
    }

    pub fn features(&self) -> ArrayView2<'_, f64> {
        self.features.view()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn feature_names(&self) -> Option<&[String]> {
        self.feature_names.as_deref()
    }

    /// The canonical label encoding derived from this dataset's labels.
    pub fn encoding(&self) -> &LabelEncoding {
        &self.encoding
    }

    pub fn num_instances(&self) -> usize {
        self.features.nrows()
    }

    pub fn num_features(&self) -> usize {
        self.features.ncols()
    }

    pub fn num_classes(&self) -> usize {
        self.encoding.num_classes()
    }

    /// Class index of each instance under this dataset's encoding.
    pub(crate) fn class_indices(&self) -> Vec<usize> {
        self.labels
            .iter()
            .map(|l| self.encoding.index_of(l).expect("label in own encoding"))
            .collect()
    }

    /// A new dataset holding the given rows (used by the fold harness).
    pub(crate) fn subset(&self, indices: &[usize]) -> Result<Dataset> {
        let features = self.features.select(ndarray::Axis(0), indices);
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        Dataset::new(features, labels, self.feature_names.clone())
    }
}

/// Which classifier to fit, with its hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassifierKind {
    Knn { neighbors: usize },
    GaussianNb,
    DecisionTree { max_depth: Option<usize> },
    RandomForest { trees: usize },
}

impl ClassifierKind {
    /// Short identifier used in reports and on the command line.
    pub fn name(&self) -> String {
        match self {
            ClassifierKind::Knn { neighbors } => format!("knn{neighbors}"),
            ClassifierKind::GaussianNb => "nb".into(),
            ClassifierKind::DecisionTree { .. } => "dt".into(),
            ClassifierKind::RandomForest { .. } => "rf".into(),
        }
    }

    /// Fits this classifier on a training set. The seed only affects the
    /// random forest; the other three families are fully deterministic.
    pub fn fit(&self, train: &Dataset, seed: u64) -> Result<FittedModel> {
        match *self {
            ClassifierKind::Knn { neighbors } => fit_knn(train, neighbors),
            ClassifierKind::GaussianNb => fit_gaussian_nb(train),
            ClassifierKind::DecisionTree { max_depth } => fit_decision_tree(train, max_depth),
            ClassifierKind::RandomForest { trees } => fit_random_forest(
                train,
                &RandomForestConfig {
                    num_trees: trees,
                    seed,
                    ..RandomForestConfig::default()
                },
            ),
        }
    }
}

/// A trained classifier together with the label encoding it was fit under.
#[derive(Debug, Clone)]
pub struct FittedModel {
    encoding: LabelEncoding,
    inner: ModelInner,
}

#[derive(Debug, Clone)]
pub(crate) enum ModelInner {
    Knn(knn::KnnModel),
    GaussianNb(naive_bayes::GaussianNbModel),
    DecisionTree(decision_tree::DecisionTreeModel),
    RandomForest(random_forest::RandomForestModel),
}

impl FittedModel {
    pub(crate) fn new(encoding: LabelEncoding, inner: ModelInner) -> Self {
        Self { encoding, inner }
    }

    pub fn encoding(&self) -> &LabelEncoding {
        &self.encoding
    }

    pub fn kind_name(&self) -> &'static str {
        match self.inner {
            ModelInner::Knn(_) => "knn",
            ModelInner::GaussianNb(_) => "gaussian-nb",
            ModelInner::DecisionTree(_) => "decision-tree",
            ModelInner::RandomForest(_) => "random-forest",
        }
    }

    /// Per-class probability rows for the given query instances, columns in
    /// this model's encoding order.
    pub fn predict_proba(&self, features: ArrayView2<'_, f64>) -> Result<ProbabilityMatrix> {
        let expected = self.num_features();
        if features.ncols() != expected {
            return Err(Error::ShapeMismatch {
                expected_rows: features.nrows(),
                expected_cols: expected,
                rows: features.nrows(),
                cols: features.ncols(),
            });
        }
        let raw = match &self.inner {
            ModelInner::Knn(m) => m.predict_proba(features),
            ModelInner::GaussianNb(m) => m.predict_proba(features),
            ModelInner::DecisionTree(m) => m.predict_proba(features),
            ModelInner::RandomForest(m) => m.predict_proba(features),
        };
        ProbabilityMatrix::new(raw)
    }

    fn num_features(&self) -> usize {
        match &self.inner {
            ModelInner::Knn(m) => m.num_features(),
            ModelInner::GaussianNb(m) => m.num_features(),
            ModelInner::DecisionTree(m) => m.num_features(),
            ModelInner::RandomForest(m) => m.num_features(),
        }
    }

    #[cfg(test)]
    pub(crate) fn inner(&self) -> &ModelInner {
        &self.inner
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn dataset_validates_shapes_and_labels() {
        let features = array![[1.0, 2.0], [3.0, 4.0]];
        let ds = Dataset::new(features.clone(), vec!["a".into(), "b".into()], None).unwrap();
        assert_eq!(ds.num_instances(), 2);
        assert_eq!(ds.num_features(), 2);
        assert_eq!(ds.num_classes(), 2);

        let err = Dataset::new(features.clone(), vec!["a".into()], None).unwrap_err();
        assert!(matches!(err, Error::InstanceCountMismatch { .. }));

        let err = Dataset::new(features, vec!["a".into(), "a".into()], None).unwrap_err();
        assert!(matches!(err, Error::DegenerateLabels { .. }));
    }

    #[test]
    fn dataset_rejects_non_finite_features() {
        let features = array![[1.0, f64::NAN], [3.0, 4.0]];
        let err = Dataset::new(features, vec!["a".into(), "b".into()], None).unwrap_err();
        assert!(matches!(err, Error::Parse { row: 1, .. }));
    }

    #[test]
    fn subset_keeps_row_alignment() {
        let features = array![[0.0], [1.0], [2.0], [3.0]];
        let labels = vec!["a".into(), "b".into(), "a".into(), "b".into()];
        let ds = Dataset::new(features, labels, None).unwrap();
        let sub = ds.subset(&[2, 3]).unwrap();
        assert_eq!(sub.labels(), ["a", "b"]);
        assert_eq!(sub.features()[(0, 0)], 2.0);
        assert_eq!(sub.features()[(1, 0)], 3.0);

        // a single-class subset is degenerate
        assert!(ds.subset(&[1, 3]).is_err());
    }

    #[test]
    fn classifier_kind_names_are_stable() {
        assert_eq!(ClassifierKind::Knn { neighbors: 3 }.name(), "knn3");
        assert_eq!(ClassifierKind::GaussianNb.name(), "nb");
        assert_eq!(ClassifierKind::DecisionTree { max_depth: None }.name(), "dt");
        assert_eq!(ClassifierKind::RandomForest { trees: 100 }.name(), "rf");
    }
}
