//! Shared generators for the integration suites, built on the public API.

use certainty::{
    build_ground_truth, encode_labels, GroundTruthMatrix, LabelEncoding, ProbabilityMatrix,
};
use ndarray::Array2;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random labels over `k` classes with every class present at least once.
pub fn random_labels(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<String> {
    assert!(n >= k);
    let mut labels: Vec<String> = (0..n)
        .map(|i| {
            let class = if i < k { i } else { rng.random_range(0..k) };
            format!("c{class}")
        })
        .collect();
    // Shuffle class positions a little so class 0 is not always first.
    for i in (1..n).rev() {
        let j = rng.random_range(0..=i);
        labels.swap(i, j);
    }
    labels
}

/// A random aligned (T, Q) pair with its encoding.
pub fn random_pair(
    rng: &mut ChaCha8Rng,
    n: usize,
    k: usize,
) -> (GroundTruthMatrix, ProbabilityMatrix, LabelEncoding) {
    let labels = random_labels(rng, n, k);
    let encoding = encode_labels(&labels).unwrap();
    let truth = build_ground_truth(&labels, &encoding).unwrap();

    let mut q = Array2::<f64>::zeros((n, k));
    for i in 0..n {
        let mut sum = 0.0;
        for j in 0..k {
            let x: f64 = rng.random_range(0.0..1.0);
            q[(i, j)] = x;
            sum += x;
        }
        if sum == 0.0 {
            q[(i, 0)] = 1.0;
            sum = 1.0;
        }
        for j in 0..k {
            q[(i, j)] /= sum;
        }
    }
    (truth, ProbabilityMatrix::new(q).unwrap(), encoding)
}

/// A random aligned (T, Q) pair where Q is exactly one-hot.
pub fn random_one_hot_pair(
    rng: &mut ChaCha8Rng,
    n: usize,
    k: usize,
) -> (GroundTruthMatrix, ProbabilityMatrix) {
    let labels = random_labels(rng, n, k);
    let encoding = encode_labels(&labels).unwrap();
    let truth = build_ground_truth(&labels, &encoding).unwrap();

    let mut q = Array2::<f64>::zeros((n, k));
    for i in 0..n {
        q[(i, rng.random_range(0..k))] = 1.0;
    }
    (truth, ProbabilityMatrix::new(q).unwrap())
}
