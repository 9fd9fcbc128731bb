//! Ground-truth, prediction, and confusion matrices.
//!
//! The confusion matrix of a multiclass problem is the product `CM = Tᵀ·P`
//! of the one-hot ground-truth matrix `T` and the one-hot prediction matrix
//! `P`. Replacing `P` with the row-stochastic probability matrix `Q` yields
//! the probabilistic confusion matrix `CM★ = Tᵀ·Q`, which this module splits
//! further into a certainty part `V` (winning probabilities only) and an
//! uncertainty part `U` (everything else), with `CM★ = V + U`.

use ndarray::{Array2, ArrayView2};

use crate::error::{Error, Result};

/// Relative band around 1.0 inside which an ingested probability row is
/// renormalized; rows outside it are rejected.
pub const ROW_SUM_BAND: f64 = 1e-6;

/// Bijection between class labels and column indices.
///
/// Classes are kept in lexicographic order so the encoding is deterministic
/// for a given label set regardless of input order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelEncoding {
    classes: Vec<String>,
}

impl LabelEncoding {
    /// Builds the encoding from any sequence of observed labels.
    ///
    /// Fails with [`Error::DegenerateLabels`] when fewer than two distinct
    /// labels are present.
    pub fn from_labels<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut classes: Vec<String> = labels.into_iter().map(|s| s.as_ref().to_owned()).collect();
        classes.sort();
        classes.dedup();
        if classes.len() < 2 {
            return Err(Error::DegenerateLabels {
                distinct: classes.len(),
            });
        }
        Ok(Self { classes })
    }

    /// Number of classes `k`.
    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    /// Column index of a label, if it belongs to the encoding.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.classes.binary_search_by(|c| c.as_str().cmp(label)).ok()
    }

    /// Label at a column index.
    pub fn label(&self, index: usize) -> &str {
        &self.classes[index]
    }

    /// All labels in canonical (lexicographic) order.
    pub fn classes(&self) -> &[String] {
        &self.classes
    }
}

/// Sorted distinct labels with their column indices.
pub fn encode_labels<I, S>(labels: I) -> Result<LabelEncoding>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    LabelEncoding::from_labels(labels)
}

/// `n×k` one-hot matrix of true classes (`T`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroundTruthMatrix {
    values: Array2<u64>,
}

impl GroundTruthMatrix {
    pub fn values(&self) -> &Array2<u64> {
        &self.values
    }

    pub fn num_instances(&self) -> usize {
        self.values.nrows()
    }

    pub fn num_classes(&self) -> usize {
        self.values.ncols()
    }

    /// Instances per class, i.e. the column sums of `T`.
    pub fn class_counts(&self) -> Vec<u64> {
        (0..self.values.ncols())
            .map(|j| self.values.column(j).sum())
            .collect()
    }

    pub(crate) fn to_real(&self) -> Array2<f64> {
        self.values.mapv(|v| v as f64)
    }
}

/// `n×k` one-hot matrix of hard classifier decisions (`P`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardPredictionMatrix {
    values: Array2<u64>,
}

impl HardPredictionMatrix {
    pub fn values(&self) -> &Array2<u64> {
        &self.values
    }

    pub fn num_instances(&self) -> usize {
        self.values.nrows()
    }

    pub fn num_classes(&self) -> usize {
        self.values.ncols()
    }
}

/// `n×k` row-stochastic matrix of classifier output probabilities (`Q`).
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityMatrix {
    values: Array2<f64>,
}

impl ProbabilityMatrix {
    /// Validates and canonicalizes raw probability rows.
    ///
    /// Entries must be finite and non-negative, and every row sum must lie in
    /// `[1 - ROW_SUM_BAND, 1 + ROW_SUM_BAND]`; rows inside the band are
    /// renormalized to sum exactly 1. Row numbers in errors are 1-based.
    pub fn new(values: Array2<f64>) -> Result<Self> {
        if values.nrows() == 0 || values.ncols() == 0 {
            return Err(Error::EmptyInput("probability matrix".into()));
        }
        let mut values = values;
        for (i, mut row) in values.rows_mut().into_iter().enumerate() {
            let mut sum = 0.0;
            for &x in row.iter() {
                if !x.is_finite() || x < 0.0 {
                    return Err(Error::InvalidProbability {
                        row: i + 1,
                        reason: format!("entry {x} is not a probability"),
                    });
                }
                sum += x;
            }
            if (sum - 1.0).abs() > ROW_SUM_BAND {
                return Err(Error::InvalidProbability {
                    row: i + 1,
                    reason: format!("row sums to {sum}, outside [1-{ROW_SUM_BAND}, 1+{ROW_SUM_BAND}]"),
                });
            }
            row.mapv_inplace(|x| x / sum);
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn view(&self) -> ArrayView2<'_, f64> {
        self.values.view()
    }

    pub fn num_instances(&self) -> usize {
        self.values.nrows()
    }

    pub fn num_classes(&self) -> usize {
        self.values.ncols()
    }
}

/// `k×k` integer confusion matrix (`CM = Tᵀ·P`).
///
/// Held exactly as integers; never the rounding of a real-valued product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionMatrix {
    values: Array2<u64>,
    num_instances: usize,
}

impl ConfusionMatrix {
    pub fn values(&self) -> &Array2<u64> {
        &self.values
    }

    pub fn num_instances(&self) -> usize {
        self.num_instances
    }

    pub fn num_classes(&self) -> usize {
        self.values.nrows()
    }

    /// The same matrix with real entries, as consumed by measures.
    pub fn to_real(&self) -> Array2<f64> {
        self.values.mapv(|v| v as f64)
    }
}

/// `k×k` real-valued probabilistic confusion matrix (`CM★ = Tᵀ·Q`).
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilisticConfusionMatrix {
    values: Array2<f64>,
    num_instances: usize,
}

impl ProbabilisticConfusionMatrix {
    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn num_instances(&self) -> usize {
        self.num_instances
    }

    pub fn num_classes(&self) -> usize {
        self.values.nrows()
    }
}

/// Split of `CM★` into certainty (`V = Tᵀ·Q⁺`) and uncertainty
/// (`U = Tᵀ·Q⁻`) matrices, with `V + U = CM★`.
#[derive(Debug, Clone, PartialEq)]
pub struct CertaintyDecomposition {
    certainty: Array2<f64>,
    uncertainty: Array2<f64>,
    num_instances: usize,
}

impl CertaintyDecomposition {
    /// The certainty matrix `V`: per instance, only the winning probability
    /// lands here, in the row of the true class.
    pub fn certainty(&self) -> &Array2<f64> {
        &self.certainty
    }

    /// The uncertainty matrix `U`: all non-winning probability mass.
    pub fn uncertainty(&self) -> &Array2<f64> {
        &self.uncertainty
    }

    pub fn num_instances(&self) -> usize {
        self.num_instances
    }

    pub fn num_classes(&self) -> usize {
        self.certainty.nrows()
    }
}

/// `CM` and `CM★` for one evaluation, with the `V`/`U` decomposition.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfusionPair {
    cm: ConfusionMatrix,
    cm_star: ProbabilisticConfusionMatrix,
    decomposition: CertaintyDecomposition,
}

impl ConfusionPair {
    /// Computes all four matrices from aligned truth and probabilities.
    pub fn compute(t: &GroundTruthMatrix, q: &ProbabilityMatrix) -> Result<Self> {
        let p = harden(q);
        let cm = confusion(t, &p)?;
        let cm_star = probabilistic_confusion(t, q)?;
        let decomposition = decompose(t, q)?;
        Ok(Self {
            cm,
            cm_star,
            decomposition,
        })
    }

    pub fn cm(&self) -> &ConfusionMatrix {
        &self.cm
    }

    pub fn cm_star(&self) -> &ProbabilisticConfusionMatrix {
        &self.cm_star
    }

    pub fn decomposition(&self) -> &CertaintyDecomposition {
        &self.decomposition
    }
}

/// One-hot encodes a label sequence against an encoding.
pub fn build_ground_truth<S: AsRef<str>>(
    labels: &[S],
    encoding: &LabelEncoding,
) -> Result<GroundTruthMatrix> {
    if labels.is_empty() {
        return Err(Error::EmptyInput("label sequence".into()));
    }
    let k = encoding.num_classes();
    let mut values = Array2::<u64>::zeros((labels.len(), k));
    for (i, label) in labels.iter().enumerate() {
        let j = encoding
            .index_of(label.as_ref())
            .ok_or_else(|| Error::UnknownLabel {
                label: label.as_ref().to_owned(),
            })?;
        values[(i, j)] = 1;
    }
    Ok(GroundTruthMatrix { values })
}

/// Index of the row maximum, ties broken toward the lowest column.
pub(crate) fn argmax_row(row: ndarray::ArrayView1<'_, f64>) -> usize {
    let mut best = 0;
    for (j, &x) in row.iter().enumerate().skip(1) {
        if x > row[best] {
            best = j;
        }
    }
    best
}

/// Binarizes `Q` into `P`: each row becomes one-hot at its argmax column.
pub fn harden(q: &ProbabilityMatrix) -> HardPredictionMatrix {
    let (n, k) = (q.num_instances(), q.num_classes());
    let mut values = Array2::<u64>::zeros((n, k));
    for (i, row) in q.values.rows().into_iter().enumerate() {
        values[(i, argmax_row(row))] = 1;
    }
    HardPredictionMatrix { values }
}

fn check_shapes(
    rows_a: usize,
    cols_a: usize,
    rows_b: usize,
    cols_b: usize,
) -> Result<()> {
    if rows_a != rows_b || cols_a != cols_b {
        return Err(Error::ShapeMismatch {
            expected_rows: rows_a,
            expected_cols: cols_a,
            rows: rows_b,
            cols: cols_b,
        });
    }
    Ok(())
}

/// `CM = Tᵀ·P`, an exact integer matrix product.
pub fn confusion(t: &GroundTruthMatrix, p: &HardPredictionMatrix) -> Result<ConfusionMatrix> {
    check_shapes(
        t.num_instances(),
        t.num_classes(),
        p.num_instances(),
        p.num_classes(),
    )?;
    let values = t.values.t().dot(&p.values);
    Ok(ConfusionMatrix {
        values,
        num_instances: t.num_instances(),
    })
}

/// `CM★ = Tᵀ·Q`; row `i` keeps the total mass of true-class-`i` instances.
pub fn probabilistic_confusion(
    t: &GroundTruthMatrix,
    q: &ProbabilityMatrix,
) -> Result<ProbabilisticConfusionMatrix> {
    check_shapes(
        t.num_instances(),
        t.num_classes(),
        q.num_instances(),
        q.num_classes(),
    )?;
    let values = t.to_real().t().dot(&q.values);
    Ok(ProbabilisticConfusionMatrix {
        values,
        num_instances: t.num_instances(),
    })
}

/// Splits `Q` into `Q⁺` (each row's winning probability only, argmax column,
/// ties toward the lowest index) and `Q⁻` (all remaining entries), so that
/// `Q⁺ + Q⁻ = Q` element-wise.
pub fn split_q(q: &ProbabilityMatrix) -> (Array2<f64>, Array2<f64>) {
    let (n, k) = (q.num_instances(), q.num_classes());
    let mut plus = Array2::<f64>::zeros((n, k));
    let mut minus = q.values.clone();
    for (i, row) in q.values.rows().into_iter().enumerate() {
        let j = argmax_row(row);
        plus[(i, j)] = row[j];
        minus[(i, j)] = 0.0;
    }
    (plus, minus)
}

/// `V = Tᵀ·Q⁺` and `U = Tᵀ·Q⁻`, the certainty/uncertainty split of `CM★`.
pub fn decompose(t: &GroundTruthMatrix, q: &ProbabilityMatrix) -> Result<CertaintyDecomposition> {
    check_shapes(
        t.num_instances(),
        t.num_classes(),
        q.num_instances(),
        q.num_classes(),
    )?;
    let (plus, minus) = split_q(q);
    let t_real = t.to_real();
    let certainty = t_real.t().dot(&plus);
    let uncertainty = t_real.t().dot(&minus);
    Ok(CertaintyDecomposition {
        certainty,
        uncertainty,
        num_instances: t.num_instances(),
    })
}


#[cfg(test)]
mod tests {
    use super::test_fixtures::{random_pair, toy_probabilities, toy_truth};
    use super::*;
    use ndarray::array;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "expected {expected}, got {actual}"
        );
    }

    #[test]
    fn encode_labels_sorts_and_dedups() {
        let enc = encode_labels(["B", "A", "A", "C"]).unwrap();
        assert_eq!(enc.classes(), ["A", "B", "C"]);
        assert_eq!(enc.num_classes(), 3);
        assert_eq!(enc.index_of("B"), Some(1));
        assert_eq!(enc.index_of("D"), None);
        assert_eq!(enc.label(2), "C");
    }

    #[test]
    fn encode_labels_toy_dataset() {
        let enc = encode_labels(["A", "A", "A", "B", "B", "C"]).unwrap();
        assert_eq!(enc.classes(), ["A", "B", "C"]);
    }

    #[test]
    fn encode_labels_rejects_single_class() {
        let err = encode_labels(["yes"]).unwrap_err();
        assert!(matches!(err, Error::DegenerateLabels { distinct: 1 }));
    }

    #[test]
    fn ground_truth_one_hot_rows() {
        let t = toy_truth();
        let expected = array![
            [1, 0, 0],
            [1, 0, 0],
            [1, 0, 0],
            [0, 1, 0],
            [0, 1, 0],
            [0, 0, 1],
        ];
        assert_eq!(t.values(), &expected);
        assert_eq!(t.class_counts(), vec![3, 2, 1]);
    }

    #[test]
    fn ground_truth_small_cases() {
        let enc = encode_labels(["A", "B"]).unwrap();
        let t = build_ground_truth(&["A"], &enc).unwrap();
        assert_eq!(t.values(), &array![[1, 0]]);

        let enc = encode_labels(["A", "B", "C"]).unwrap();
        let t = build_ground_truth(&["C", "A"], &enc).unwrap();
        assert_eq!(t.values(), &array![[0, 0, 1], [1, 0, 0]]);
    }

    #[test]
    fn ground_truth_rejects_unknown_label() {
        let enc = encode_labels(["A", "B"]).unwrap();
        let err = build_ground_truth(&["A", "X"], &enc).unwrap_err();
        match err {
            Error::UnknownLabel { label } => assert_eq!(label, "X"),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn probability_rows_renormalize_inside_band() {
        let q = ProbabilityMatrix::new(array![[0.5000001, 0.5], [0.25, 0.75]]).unwrap();
        for row in q.values().rows() {
            assert_close(row.sum(), 1.0, 1e-15);
        }
    }

    #[test]
    fn probability_rows_outside_band_rejected() {
        let err = ProbabilityMatrix::new(array![[0.5, 0.5], [0.4, 0.4]]).unwrap_err();
        match err {
            Error::InvalidProbability { row, .. } => assert_eq!(row, 2),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn probability_negative_entry_rejected() {
        let err = ProbabilityMatrix::new(array![[1.2, -0.2]]).unwrap_err();
        assert!(matches!(err, Error::InvalidProbability { row: 1, .. }));
    }

    #[test]
    fn harden_matches_toy_prediction_matrix() {
        let p = harden(&toy_probabilities());
        let expected = array![
            [1, 0, 0],
            [1, 0, 0],
            [1, 0, 0],
            [1, 0, 0],
            [0, 1, 0],
            [0, 1, 0],
        ];
        assert_eq!(p.values(), &expected);
    }

    #[test]
    fn harden_breaks_ties_toward_lowest_index() {
        let q = ProbabilityMatrix::new(array![[0.5, 0.5, 0.0]]).unwrap();
        assert_eq!(harden(&q).values(), &array![[1, 0, 0]]);
    }

    #[test]
    fn harden_fixes_one_hot_rows() {
        let q = ProbabilityMatrix::new(array![[0.0, 0.0, 1.0]]).unwrap();
        assert_eq!(harden(&q).values(), &array![[0, 0, 1]]);
    }

    #[test]
    fn non_standard_layout_input_is_handled() {
        // A transposed array has column-major strides.
        let raw = array![[0.2, 0.5], [0.8, 0.5]].reversed_axes();
        let q = ProbabilityMatrix::new(raw).unwrap();
        assert_eq!(harden(&q).values(), &array![[0, 1], [1, 0]]);
        let (plus, minus) = split_q(&q);
        assert_eq!(plus[(0, 1)], 0.8);
        assert_eq!(minus[(0, 0)], 0.2);
    }

    #[test]
    fn confusion_matches_toy_example() {
        let t = toy_truth();
        let p = harden(&toy_probabilities());
        let cm = confusion(&t, &p).unwrap();
        assert_eq!(cm.values(), &array![[3, 0, 0], [1, 1, 0], [0, 1, 0]]);
        assert_eq!(cm.num_instances(), 6);
    }

    #[test]
    fn confusion_of_perfect_predictor_is_diagonal() {
        let t = toy_truth();
        let p = HardPredictionMatrix {
            values: t.values().clone(),
        };
        let cm = confusion(&t, &p).unwrap();
        assert_eq!(cm.values(), &array![[3, 0, 0], [0, 2, 0], [0, 0, 1]]);
    }

    #[test]
    fn confusion_rejects_shape_mismatch() {
        let t = toy_truth();
        let enc = encode_labels(["A", "B"]).unwrap();
        let t2 = build_ground_truth(&["A", "B"], &enc).unwrap();
        let p = harden(&toy_probabilities());
        let err = confusion(&t2, &p).unwrap_err();
        assert!(matches!(err, Error::ShapeMismatch { .. }));
        drop(t);
    }

    #[test]
    fn probabilistic_confusion_matches_toy_example() {
        let cm_star = probabilistic_confusion(&toy_truth(), &toy_probabilities()).unwrap();
        let expected = array![[2.3, 0.2, 0.5], [0.5, 1.1, 0.4], [0.0, 0.9, 0.1]];
        for (a, e) in cm_star.values().iter().zip(expected.iter()) {
            assert_close(*a, *e, 1e-12);
        }
    }

    #[test]
    fn one_hot_q_gives_cm_star_equal_to_cm() {
        let t = toy_truth();
        let q = ProbabilityMatrix::new(array![
            [1.0, 0.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0],
        ])
        .unwrap();
        let cm = confusion(&t, &harden(&q)).unwrap();
        let cm_star = probabilistic_confusion(&t, &q).unwrap();
        for (a, b) in cm_star.values().iter().zip(cm.values().iter()) {
            assert_eq!(*a, *b as f64);
        }
    }

    #[test]
    fn split_q_matches_toy_example() {
        let (plus, minus) = split_q(&toy_probabilities());
        let winners = [0.9, 0.8, 0.6, 0.4, 0.8, 0.9];
        let cols = [0, 0, 0, 0, 1, 1];
        for i in 0..6 {
            for j in 0..3 {
                if j == cols[i] {
                    assert_close(plus[(i, j)], winners[i], 1e-12);
                    assert_eq!(minus[(i, j)], 0.0);
                } else {
                    assert_eq!(plus[(i, j)], 0.0);
                }
            }
        }
        let q = toy_probabilities();
        for ((a, b), c) in plus.iter().zip(minus.iter()).zip(q.values().iter()) {
            assert_close(a + b, *c, 1e-15);
        }
    }

    #[test]
    fn split_q_one_hot_leaves_nothing_behind() {
        let q = ProbabilityMatrix::new(array![[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let (plus, minus) = split_q(&q);
        assert_eq!(&plus, q.values());
        assert!(minus.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn split_q_tie_break_is_consistent_with_harden() {
        let q = ProbabilityMatrix::new(array![[0.4, 0.4, 0.2]]).unwrap();
        let (plus, minus) = split_q(&q);
        assert_close(plus[(0, 0)], 0.4, 1e-12);
        assert_eq!(plus[(0, 1)], 0.0);
        assert_close(minus[(0, 1)], 0.4, 1e-12);
        assert_close(minus[(0, 2)], 0.2, 1e-12);
    }

    #[test]
    fn decompose_matches_toy_example() {
        let d = decompose(&toy_truth(), &toy_probabilities()).unwrap();
        let v_expected = array![[2.3, 0.0, 0.0], [0.4, 0.8, 0.0], [0.0, 0.9, 0.0]];
        let u_expected = array![[0.0, 0.2, 0.5], [0.1, 0.3, 0.4], [0.0, 0.0, 0.1]];
        for (a, e) in d.certainty().iter().zip(v_expected.iter()) {
            assert_close(*a, *e, 1e-12);
        }
        for (a, e) in d.uncertainty().iter().zip(u_expected.iter()) {
            assert_close(*a, *e, 1e-12);
        }
    }

    #[test]
    fn decompose_one_hot_q_gives_zero_uncertainty() {
        let t = toy_truth();
        let q = ProbabilityMatrix::new(array![
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
        ])
        .unwrap();
        let d = decompose(&t, &q).unwrap();
        assert!(d.uncertainty().iter().all(|&x| x == 0.0));
        let cm = confusion(&t, &harden(&q)).unwrap();
        for (v, c) in d.certainty().iter().zip(cm.values().iter()) {
            assert_eq!(*v, *c as f64);
        }
    }

    #[test]
    fn confusion_agrees_with_tally_oracle_on_random_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let (t, q) = random_pair(&mut rng, 30, 4);
        let p = harden(&q);
        let cm = confusion(&t, &p).unwrap();

        // Oracle: walk instances, incrementing cell (true class, predicted).
        let mut tally = Array2::<u64>::zeros((4, 4));
        for i in 0..30 {
            let true_j = (0..4).find(|&j| t.values()[(i, j)] == 1).unwrap();
            let pred_j = (0..4).find(|&j| p.values()[(i, j)] == 1).unwrap();
            tally[(true_j, pred_j)] += 1;
        }
        assert_eq!(cm.values(), &tally);
    }

    #[test]
    fn probabilistic_confusion_agrees_with_accumulation_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let (t, q) = random_pair(&mut rng, 30, 4);
        let cm_star = probabilistic_confusion(&t, &q).unwrap();

        // Oracle: add each probability row into its true-class row.
        let mut acc = Array2::<f64>::zeros((4, 4));
        for i in 0..30 {
            let true_j = (0..4).find(|&j| t.values()[(i, j)] == 1).unwrap();
            for j in 0..4 {
                acc[(true_j, j)] += q.values()[(i, j)];
            }
        }
        for (a, b) in cm_star.values().iter().zip(acc.iter()) {
            assert_close(*a, *b, 1e-9);
        }
    }

    #[test]
    fn decomposition_reassembles_cm_star_on_random_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(44);
        let (t, q) = random_pair(&mut rng, 25, 5);
        let cm_star = probabilistic_confusion(&t, &q).unwrap();
        let d = decompose(&t, &q).unwrap();
        for ((v, u), s) in d
            .certainty()
            .iter()
            .zip(d.uncertainty().iter())
            .zip(cm_star.values().iter())
        {
            assert_close(v + u, *s, 1e-9);
        }
    }

    #[test]
    fn confusion_pair_bundles_consistent_matrices() {
        let pair = ConfusionPair::compute(&toy_truth(), &toy_probabilities()).unwrap();
        assert_eq!(pair.cm().num_instances(), 6);
        assert_eq!(pair.cm_star().num_instances(), 6);
        let total: f64 = pair.cm_star().values().sum();
        assert_close(total, 6.0, 1e-9);
        for ((v, u), s) in pair
            .decomposition()
            .certainty()
            .iter()
            .zip(pair.decomposition().uncertainty().iter())
            .zip(pair.cm_star().values().iter())
        {
            assert_close(v + u, *s, 1e-12);
        }
    }
}
