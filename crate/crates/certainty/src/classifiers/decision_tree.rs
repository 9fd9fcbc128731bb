//! Binary CART trees: Gini impurity, axis-aligned midpoint thresholds,
//! grown until leaves are pure or unsplittable.

use ndarray::{Array2, ArrayView2};
use rand_chacha::ChaCha8Rng;

use crate::classifiers::{Dataset, FittedModel, ModelInner};
use crate::error::Result;

#[derive(Debug, Clone)]
pub(crate) enum TreeNode {
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
    Leaf {
        probabilities: Vec<f64>,
    },
}

#[derive(Debug, Clone)]
pub(crate) struct DecisionTreeModel {
    pub(crate) nodes: Vec<TreeNode>,
    num_classes: usize,
    num_features: usize,
}

pub(crate) struct TreeParams {
    pub max_depth: Option<usize>,
    /// Candidate features examined per split; values >= m mean all of them.
    pub candidate_features: usize,
}

/// Fits a single CART tree on the whole training set.
///
/// Splits minimize weighted Gini impurity over midpoints between
/// consecutive distinct sorted feature values; ties go to the lowest
/// feature index, then the lowest threshold. Without a depth limit the
/// tree grows until every leaf is pure or holds identical feature
/// vectors, so consistent training data yields one-hot leaf
/// probabilities.
pub fn fit_decision_tree(train: &Dataset, max_depth: Option<usize>) -> Result<FittedModel> {
    let params = TreeParams {
        max_depth,
        candidate_features: train.num_features(),
    };
    let indices: Vec<usize> = (0..train.num_instances()).collect();
    let model = grow_tree(
        train.features(),
        &train.class_indices(),
        train.num_classes(),
        indices,
        &params,
        None,
    );
    Ok(FittedModel::new(
        train.encoding().clone(),
        ModelInner::DecisionTree(model),
    ))
}

/// Grows a tree over `indices` (a multiset when bootstrapped). The RNG is
/// consulted only when `candidate_features` is below the feature count.
pub(crate) fn grow_tree(
    features: ArrayView2<'_, f64>,
    classes: &[usize],
    num_classes: usize,
    indices: Vec<usize>,
    params: &TreeParams,
    rng: Option<&mut ChaCha8Rng>,
) -> DecisionTreeModel {
    let mut grower = Grower {
        features,
        classes,
        num_classes,
        max_depth: params.max_depth,
        candidate_features: params.candidate_features.min(features.ncols()),
        rng,
        nodes: Vec::new(),
    };
    grower.grow(&indices, 0);
    DecisionTreeModel {
        nodes: grower.nodes,
        num_classes,
        num_features: features.ncols(),
    }
}

struct Grower<'a, 'r> {
    features: ArrayView2<'a, f64>,
    classes: &'a [usize],
    num_classes: usize,
    max_depth: Option<usize>,
    candidate_features: usize,
    rng: Option<&'r mut ChaCha8Rng>,
    nodes: Vec<TreeNode>,
}

impl Grower<'_, '_> {
    fn grow(&mut self, indices: &[usize], depth: usize) -> usize {
        let counts = self.class_counts(indices);
        let depth_capped = self.max_depth.is_some_and(|d| depth >= d);
        let pure = counts.iter().filter(|&&c| c > 0).count() <= 1;

        let split = if pure || depth_capped {
            None
        } else {
            self.best_split(indices)
        };

        match split {
            None => {
                let total = indices.len() as f64;
                let probabilities = counts.iter().map(|&c| c as f64 / total).collect();
                self.nodes.push(TreeNode::Leaf { probabilities });
                self.nodes.len() - 1
            }
            Some((feature, threshold)) => {
                let (left_idx, right_idx): (Vec<usize>, Vec<usize>) = indices
                    .iter()
                    .partition(|&&i| self.features[(i, feature)] <= threshold);
                let left = self.grow(&left_idx, depth + 1);
                let right = self.grow(&right_idx, depth + 1);
                self.nodes.push(TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                });
                self.nodes.len() - 1
            }
        }
    }

    fn class_counts(&self, indices: &[usize]) -> Vec<usize> {
        let mut counts = vec![0usize; self.num_classes];
        for &i in indices {
            counts[self.classes[i]] += 1;
        }
        counts
    }

    fn candidate_features(&mut self) -> Vec<usize> {
        let m = self.features.ncols();
        if self.candidate_features >= m {
            return (0..m).collect();
        }
        let rng = self
            .rng
            .as_deref_mut()
            .expect("feature subsampling requires an rng");
        let mut sampled = rand::seq::index::sample(rng, m, self.candidate_features).into_vec();
        sampled.sort_unstable();
        sampled
    }

    /// The (feature, threshold) pair minimizing weighted Gini impurity, or
    /// `None` when every candidate feature is constant within the node.
    fn best_split(&mut self, indices: &[usize]) -> Option<(usize, f64)> {
        let candidates = self.candidate_features();
        let total = indices.len();
        let mut best: Option<(f64, usize, f64)> = None;

        for feature in candidates {
            let mut ordered: Vec<(f64, usize)> = indices
                .iter()
                .map(|&i| (self.features[(i, feature)], self.classes[i]))
                .collect();
            ordered.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite feature"));

            let mut left_counts = vec![0usize; self.num_classes];
            let mut right_counts = self.class_counts(indices);
            for pos in 0..total - 1 {
                let (value, class) = ordered[pos];
                left_counts[class] += 1;
                right_counts[class] -= 1;
                let next_value = ordered[pos + 1].0;
                if value == next_value {
                    continue;
                }
                let mut threshold = 0.5 * (value + next_value);
                // A midpoint that rounds onto the upper value would send
                // everything left; fall back to the lower value.
                if threshold >= next_value {
                    threshold = value;
                }
                let left_n = (pos + 1) as f64;
                let right_n = (total - pos - 1) as f64;
                let weighted = (left_n * gini(&left_counts, left_n)
                    + right_n * gini(&right_counts, right_n))
                    / total as f64;
                if best.is_none_or(|(g, _, _)| weighted < g) {
                    best = Some((weighted, feature, threshold));
                }
            }
        }
        best.map(|(_, feature, threshold)| (feature, threshold))
    }
}

fn gini(counts: &[usize], total: f64) -> f64 {
    1.0 - counts
        .iter()
        .map(|&c| {
            let p = c as f64 / total;
            p * p
        })
        .sum::<f64>()
}

impl DecisionTreeModel {
    pub(crate) fn num_features(&self) -> usize {
        self.num_features
    }

    pub(crate) fn predict_proba(&self, features: ArrayView2<'_, f64>) -> Array2<f64> {
        let mut out = Array2::<f64>::zeros((features.nrows(), self.num_classes));
        for (i, row) in features.rows().into_iter().enumerate() {
            let leaf = self.leaf_probabilities(&row.to_vec());
            for (j, p) in leaf.iter().enumerate() {
                out[(i, j)] = *p;
            }
        }
        out
    }

    pub(crate) fn leaf_probabilities(&self, row: &[f64]) -> &[f64] {
        let mut node = self.nodes.len() - 1; // root is pushed last
        loop {
            match &self.nodes[node] {
                TreeNode::Leaf { probabilities } => return probabilities,
                TreeNode::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    node = if row[*feature] <= *threshold { *left } else { *right };
                }
            }
        }
    }
}
