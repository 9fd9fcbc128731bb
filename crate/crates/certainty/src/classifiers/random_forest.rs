//! Bagged ensemble of fully grown CART trees with feature subsampling.

use ndarray::{Array2, ArrayView2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classifiers::decision_tree::{grow_tree, DecisionTreeModel, TreeParams};
use crate::classifiers::{Dataset, FittedModel, ModelInner};
use crate::error::{Error, Result};

/// Random-forest hyperparameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomForestConfig {
    pub num_trees: usize,
    pub seed: u64,
    /// Draw a size-n bootstrap sample per tree; disable to train every tree
    /// on the full training set.
    pub bootstrap: bool,
    /// Candidate features per split; `None` means `ceil(sqrt(m))`.
    pub candidate_features: Option<usize>,
}

impl Default for RandomForestConfig {
    fn default() -> Self {
        Self {
            num_trees: 100,
            seed: 42,
            bootstrap: true,
            candidate_features: None,
        }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct RandomForestModel {
    trees: Vec<DecisionTreeModel>,
    num_classes: usize,
    num_features: usize,
}

/// Fits `num_trees` fully grown trees, each on its own bootstrap sample
/// with `ceil(sqrt(m))` candidate features per split (unless overridden).
/// The whole ensemble is a pure function of `(train, config)`.
pub fn fit_random_forest(train: &Dataset, config: &RandomForestConfig) -> Result<FittedModel> {
    if config.num_trees == 0 {
        return Err(Error::InvalidParameter("num_trees must be >= 1".into()));
    }
    let n = train.num_instances();
    let m = train.num_features();
    let candidate_features = config
        .candidate_features
        .unwrap_or_else(|| (m as f64).sqrt().ceil() as usize)
        .clamp(1, m);
    let params = TreeParams {
        max_depth: None,
        candidate_features,
    };
    let classes = train.class_indices();

    let mut master = ChaCha8Rng::seed_from_u64(config.seed);
    let mut trees = Vec::with_capacity(config.num_trees);
    for _ in 0..config.num_trees {
        let mut tree_rng = ChaCha8Rng::seed_from_u64(master.random());
        let indices: Vec<usize> = if config.bootstrap {
            (0..n).map(|_| tree_rng.random_range(0..n)).collect()
        } else {
            (0..n).collect()
        };
        trees.push(grow_tree(
            train.features(),
            &classes,
            train.num_classes(),
            indices,
            &params,
            Some(&mut tree_rng),
        ));
    }

    Ok(FittedModel::new(
        train.encoding().clone(),
        ModelInner::RandomForest(RandomForestModel {
            trees,
            num_classes: train.num_classes(),
            num_features: m,
        }),
    ))
}

impl RandomForestModel {
    pub(crate) fn num_features(&self) -> usize {
        self.num_features
    }

    /// Unweighted mean of the trees' leaf-frequency vectors.
    pub(crate) fn predict_proba(&self, features: ArrayView2<'_, f64>) -> Array2<f64> {
        let mut out = Array2::<f64>::zeros((features.nrows(), self.num_classes));
        let weight = 1.0 / self.trees.len() as f64;
        for (i, row) in features.rows().into_iter().enumerate() {
            let row = row.to_vec();
            for tree in &self.trees {
                for (j, p) in tree.leaf_probabilities(&row).iter().enumerate() {
                    out[(i, j)] += p * weight;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifiers::fit_decision_tree;
    use ndarray::array;

    fn blobs() -> Dataset {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 30;
        let mut feats = Array2::<f64>::zeros((n, 2));
        let mut labels = Vec::new();
        for i in 0..n {
            let c = i % 3;
            feats[(i, 0)] = c as f64 * 2.0 + rng.random_range(-1.2..1.2);
            feats[(i, 1)] = -(c as f64) + rng.random_range(-1.2..1.2);
            labels.push(format!("c{c}"));
        }
        Dataset::new(feats, labels, None).unwrap()
    }

    #[test]
    fn degenerate_forest_equals_single_tree() {
        let ds = blobs();
        let config = RandomForestConfig {
            num_trees: 1,
            seed: 7,
            bootstrap: false,
            candidate_features: Some(ds.num_features()),
        };
        let forest = fit_random_forest(&ds, &config).unwrap();
        let tree = fit_decision_tree(&ds, None).unwrap();

        let queries = array![[0.1, 0.2], [2.2, -1.1], [4.0, -2.0], [1.0, -0.5]];
        let qf = forest.predict_proba(queries.view()).unwrap();
        let qt = tree.predict_proba(queries.view()).unwrap();
        assert_eq!(qf.values(), qt.values());
    }

    #[test]
    fn fixed_seed_is_bit_reproducible() {
        let ds = blobs();
        let config = RandomForestConfig {
            num_trees: 25,
            seed: 11,
            ..RandomForestConfig::default()
        };
        let a = fit_random_forest(&ds, &config).unwrap();
        let b = fit_random_forest(&ds, &config).unwrap();
        let queries = array![[0.0, 0.0], [1.7, -0.8], [3.9, -2.2]];
        let qa = a.predict_proba(queries.view()).unwrap();
        let qb = b.predict_proba(queries.view()).unwrap();
        assert_eq!(qa.values(), qb.values());
    }

    #[test]
    fn averaged_rows_stay_valid_probability_rows() {
        let ds = blobs();
        let config = RandomForestConfig {
            num_trees: 40,
            seed: 19,
            ..RandomForestConfig::default()
        };
        let forest = fit_random_forest(&ds, &config).unwrap();

        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut queries = Array2::<f64>::zeros((100, 2));
        for i in 0..100 {
            queries[(i, 0)] = rng.random_range(-2.0..6.0);
            queries[(i, 1)] = rng.random_range(-4.0..2.0);
        }
        let q = forest.predict_proba(queries.view()).unwrap();
        for row in q.values().rows() {
            assert!(row.iter().all(|&p| p >= 0.0));
            assert!((row.sum() - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn zero_trees_is_rejected() {
        let ds = blobs();
        let config = RandomForestConfig {
            num_trees: 0,
            ..RandomForestConfig::default()
        };
        assert!(fit_random_forest(&ds, &config).is_err());
    }
}
