//! k-nearest-neighbors classifier with z-score feature standardization.

use ndarray::{Array1, Array2, ArrayView1, ArrayView2};

use crate::error::{Error, Result};
use crate::classifiers::{Dataset, FittedModel, ModelInner};

#[derive(Debug, Clone)]
pub(crate) struct KnnModel {
    neighbors: usize,
    means: Array1<f64>,
    scales: Array1<f64>,
    train: Array2<f64>,
    train_classes: Vec<usize>,
    num_classes: usize,
}

/// Fits a k-NN model: memorizes the training set after standardizing each
/// feature to zero mean and unit variance (a zero-variance feature keeps
/// divisor 1, which leaves it constant and harmless under the distance).
pub fn fit_knn(train: &Dataset, k_neighbors: usize) -> Result<FittedModel> {
    if k_neighbors == 0 {
        return Err(Error::InvalidParameter("k_neighbors must be >= 1".into()));
    }
    if k_neighbors > train.num_instances() {
        return Err(Error::InvalidParameter(format!(
            "k_neighbors = {} exceeds {} training instances",
            k_neighbors,
            train.num_instances()
        )));
    }
    let features = train.features();
    let n = features.nrows() as f64;
    let means = features.mean_axis(ndarray::Axis(0)).expect("nonempty");
    let mut scales = Array1::<f64>::zeros(features.ncols());
    for j in 0..features.ncols() {
        let var = features
            .column(j)
            .iter()
            .map(|x| (x - means[j]).powi(2))
            .sum::<f64>()
            / n;
        scales[j] = if var > 0.0 { var.sqrt() } else { 1.0 };
    }
    let mut standardized = features.to_owned();
    for mut row in standardized.rows_mut() {
        for j in 0..row.len() {
            row[j] = (row[j] - means[j]) / scales[j];
        }
    }
    Ok(FittedModel::new(
        train.encoding().clone(),
        ModelInner::Knn(KnnModel {
            neighbors: k_neighbors,
            means,
            scales,
            train: standardized,
            train_classes: train.class_indices(),
            num_classes: train.num_classes(),
        }),
    ))
}

impl KnnModel {
    pub(crate) fn num_features(&self) -> usize {
        self.train.ncols()
    }

    pub(crate) fn predict_proba(&self, features: ArrayView2<'_, f64>) -> Array2<f64> {
        let mut out = Array2::<f64>::zeros((features.nrows(), self.num_classes));
        for (i, row) in features.rows().into_iter().enumerate() {
            let votes = self.vote(row);
            for (j, v) in votes.into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        out
    }

    fn vote(&self, query: ArrayView1<'_, f64>) -> Vec<f64> {
        let mut ranked: Vec<(f64, usize)> = self
            .train
            .rows()
            .into_iter()
            .enumerate()
            .map(|(idx, train_row)| {
                let mut dist = 0.0;
                for (j, x) in query.iter().enumerate() {
                    let z = (x - self.means[j]) / self.scales[j];
                    let diff = z - train_row[j];
                    dist += diff * diff;
                }
                (dist, idx)
            })
            .collect();
        // Equal distances resolve by lowest training index.
        ranked.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite distance").then(a.1.cmp(&b.1)));

        let mut counts = vec![0usize; self.num_classes];
        for &(_, idx) in ranked.iter().take(self.neighbors) {
            counts[self.train_classes[idx]] += 1;
        }
        counts
            .into_iter()
            .map(|c| c as f64 / self.neighbors as f64)
            .collect()
    }
}
