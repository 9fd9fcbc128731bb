//! Stratified k-fold cross-validation with out-of-fold pooling.
//!
//! Every instance is predicted exactly once, by the model trained on the
//! folds it does not belong to. Pooling the out-of-fold rows yields one
//! probability matrix for the whole dataset, from which a single confusion
//! pair is computed.

use ndarray::{Array2, Axis};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classifiers::{ClassifierKind, Dataset};
use crate::error::{Error, Result};
use crate::matrices::{build_ground_truth, GroundTruthMatrix, ProbabilityMatrix};

/// Fold count and shuffling seed for the harness. Folds are always
/// stratified: within each class, instances are shuffled and dealt
/// round-robin, so per-fold class proportions match the global ones to
/// within one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossValidationPlan {
    pub folds: usize,
    pub seed: u64,
}

impl Default for CrossValidationPlan {
    fn default() -> Self {
        Self { folds: 10, seed: 42 }
    }
}

/// Assigns every instance index to exactly one test fold.
pub fn stratified_folds(data: &Dataset, plan: &CrossValidationPlan) -> Result<Vec<Vec<usize>>> {
    if plan.folds < 2 {
        return Err(Error::InvalidParameter(format!(
            "fold count must be >= 2, got {}",
            plan.folds
        )));
    }
    let classes = data.class_indices();
    let smallest = (0..data.num_classes())
        .map(|c| classes.iter().filter(|&&x| x == c).count())
        .min()
        .unwrap_or(0);
    if plan.folds > smallest {
        return Err(Error::Stratification {
            folds: plan.folds,
            smallest_class: smallest,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    let mut folds = vec![Vec::new(); plan.folds];
    for class in 0..data.num_classes() {
        let mut members: Vec<usize> = (0..data.num_instances())
            .filter(|&i| classes[i] == class)
            .collect();
        members.shuffle(&mut rng);
        for (pos, idx) in members.into_iter().enumerate() {
            folds[pos % plan.folds].push(idx);
        }
    }
    for fold in &mut folds {
        fold.sort_unstable();
    }
    Ok(folds)
}

/// Runs the full harness: fits the classifier once per fold and pools the
/// out-of-fold probability rows, row-aligned with the ground truth.
pub fn cross_validate(
    data: &Dataset,
    classifier: &ClassifierKind,
    plan: &CrossValidationPlan,
) -> Result<(ProbabilityMatrix, GroundTruthMatrix)> {
    let folds = stratified_folds(data, plan)?;
    let encoding = data.encoding();
    let n = data.num_instances();
    let mut pooled = Array2::<f64>::zeros((n, data.num_classes()));

    let mut in_fold = vec![false; n];
    for (fold_idx, test) in folds.iter().enumerate() {
        in_fold.iter_mut().for_each(|x| *x = false);
        for &i in test {
            in_fold[i] = true;
        }
        let train: Vec<usize> = (0..n).filter(|&i| !in_fold[i]).collect();
        let train_ds = data.subset(&train)?;

        let fold_seed = plan
            .seed
            .wrapping_add(0x9E37_79B9_7F4A_7C15u64.wrapping_mul(fold_idx as u64 + 1));
        let model = classifier.fit(&train_ds, fold_seed)?;

        // The fold model may order classes like the full dataset does, but
        // map columns by label anyway.
        let col_map: Vec<usize> = model
            .encoding()
            .classes()
            .iter()
            .map(|l| encoding.index_of(l).expect("train labels come from data"))
            .collect();

        let test_features = data.features().select(Axis(0), test);
        let q_fold = model.predict_proba(test_features.view())?;
        for (r, &orig) in test.iter().enumerate() {
            for (j_local, &j_global) in col_map.iter().enumerate() {
                pooled[(orig, j_global)] = q_fold.values()[(r, j_local)];
            }
        }
    }

    let q = ProbabilityMatrix::new(pooled)?;
    let t = build_ground_truth(data.labels(), encoding)?;
    Ok((q, t))
}
