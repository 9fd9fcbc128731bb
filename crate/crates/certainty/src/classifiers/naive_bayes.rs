//! Gaussian naive Bayes with class priors and log-sum-exp normalization.

use ndarray::{Array2, ArrayView1, ArrayView2};

use crate::classifiers::{Dataset, FittedModel, ModelInner};
use crate::error::Result;

const LN_2PI: f64 = 1.8378770664093453;

#[derive(Debug, Clone)]
pub(crate) struct GaussianNbModel {
    log_priors: Vec<f64>,
    means: Array2<f64>,
    variances: Array2<f64>,
}

/// Fits per-class, per-feature Gaussian likelihoods with class-frequency
/// priors. Variances are floored at `1e-9` times the largest per-feature
/// variance of the training set, which keeps constant features from
/// collapsing the likelihood.
pub fn fit_gaussian_nb(train: &Dataset) -> Result<FittedModel> {
    let features = train.features();
    let classes = train.class_indices();
    let (n, m) = (features.nrows(), features.ncols());
    let k = train.num_classes();

    let global_means = features.mean_axis(ndarray::Axis(0)).expect("nonempty");
    let mut max_var: f64 = 0.0;
    for j in 0..m {
        let var = features
            .column(j)
            .iter()
            .map(|x| (x - global_means[j]).powi(2))
            .sum::<f64>()
            / n as f64;
        max_var = max_var.max(var);
    }
    let floor = if max_var > 0.0 { 1e-9 * max_var } else { 1e-9 };

    let mut counts = vec![0usize; k];
    let mut means = Array2::<f64>::zeros((k, m));
    for (i, &c) in classes.iter().enumerate() {
        counts[c] += 1;
        for j in 0..m {
            means[(c, j)] += features[(i, j)];
        }
    }
    for c in 0..k {
        for j in 0..m {
            means[(c, j)] /= counts[c] as f64;
        }
    }
    let mut variances = Array2::<f64>::zeros((k, m));
    for (i, &c) in classes.iter().enumerate() {
        for j in 0..m {
            let d = features[(i, j)] - means[(c, j)];
            variances[(c, j)] += d * d;
        }
    }
    for c in 0..k {
        for j in 0..m {
            variances[(c, j)] = (variances[(c, j)] / counts[c] as f64).max(floor);
        }
    }

    let log_priors = counts
        .iter()
        .map(|&c| (c as f64 / n as f64).ln())
        .collect();

    Ok(FittedModel::new(
        train.encoding().clone(),
        ModelInner::GaussianNb(GaussianNbModel {
            log_priors,
            means,
            variances,
        }),
    ))
}

fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    max + values.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}

impl GaussianNbModel {
    pub(crate) fn num_features(&self) -> usize {
        self.means.ncols()
    }

    pub(crate) fn predict_proba(&self, features: ArrayView2<'_, f64>) -> Array2<f64> {
        let k = self.log_priors.len();
        let mut out = Array2::<f64>::zeros((features.nrows(), k));
        for (i, row) in features.rows().into_iter().enumerate() {
            let joint = self.log_joint(row);
            let norm = log_sum_exp(&joint);
            for (j, lj) in joint.into_iter().enumerate() {
                out[(i, j)] = (lj - norm).exp();
            }
        }
        out
    }

    fn log_joint(&self, query: ArrayView1<'_, f64>) -> Vec<f64> {
        (0..self.log_priors.len())
            .map(|c| {
                let mut ll = self.log_priors[c];
                for (j, &x) in query.iter().enumerate() {
                    let var = self.variances[(c, j)];
                    let diff = x - self.means[(c, j)];
                    ll += -0.5 * (LN_2PI + var.ln()) - diff * diff / (2.0 * var);
                }
                ll
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn well_separated_classes_give_confident_posterior() {
        let ds = Dataset::new(
            array![[0.0], [0.1], [-0.1], [100.0], [100.1], [99.9]],
            vec!["lo".into(), "lo".into(), "lo".into(), "hi".into(), "hi".into(), "hi".into()],
            None,
        )
        .unwrap();
        let model = fit_gaussian_nb(&ds).unwrap();
        let q = model.predict_proba(array![[0.0]].view()).unwrap();
        // encoding order: hi, lo
        assert!(q.values()[(0, 1)] > 0.99);
    }

    #[test]
    fn midpoint_of_symmetric_classes_is_even_money() {
        let ds = Dataset::new(
            array![[-2.0], [-1.0], [-3.0], [2.0], [1.0], [3.0]],
            vec!["a".into(), "a".into(), "a".into(), "b".into(), "b".into(), "b".into()],
            None,
        )
        .unwrap();
        let model = fit_gaussian_nb(&ds).unwrap();
        let q = model.predict_proba(array![[0.0]].view()).unwrap();
        assert!((q.values()[(0, 0)] - 0.5).abs() < 1e-6);
        assert!((q.values()[(0, 1)] - 0.5).abs() < 1e-6);
    }

    #[test]
    fn posterior_matches_direct_density_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 30;
        let mut feats = Array2::<f64>::zeros((n, 2));
        let mut labels = Vec::new();
        for i in 0..n {
            let c = i % 3;
            let center = c as f64 * 2.0;
            feats[(i, 0)] = center + rng.random_range(-1.0..1.0);
            feats[(i, 1)] = -center + rng.random_range(-1.0..1.0);
            labels.push(format!("c{c}"));
        }
        let ds = Dataset::new(feats.clone(), labels.clone(), None).unwrap();
        let model = fit_gaussian_nb(&ds).unwrap();
        let queries = array![[0.5, -0.5], [2.0, -2.0], [4.5, -3.9]];
        let got = model.predict_proba(queries.view()).unwrap();

        // Oracle: plain-space Gaussian densities, no log trick.
        let density = |x: f64, mean: f64, var: f64| {
            (-((x - mean) * (x - mean)) / (2.0 * var)).exp()
                / (2.0 * std::f64::consts::PI * var).sqrt()
        };
        for (qi, query) in queries.rows().into_iter().enumerate() {
            let mut joint = [0.0; 3];
            for c in 0..3 {
                let rows: Vec<usize> =
                    (0..n).filter(|&i| labels[i] == format!("c{c}")).collect();
                let prior = rows.len() as f64 / n as f64;
                let mut p = prior;
                for j in 0..2 {
                    let mean =
                        rows.iter().map(|&i| feats[(i, j)]).sum::<f64>() / rows.len() as f64;
                    let var = rows
                        .iter()
                        .map(|&i| (feats[(i, j)] - mean).powi(2))
                        .sum::<f64>()
                        / rows.len() as f64;
                    p *= density(query[j], mean, var);
                }
                joint[c] = p;
            }
            let total: f64 = joint.iter().sum();
            for c in 0..3 {
                assert!(
                    (got.values()[(qi, c)] - joint[c] / total).abs() < 1e-9,
                    "query {qi} class {c}"
                );
            }
        }
    }

    #[test]
    fn constant_features_stay_finite() {
        let ds = Dataset::new(
            array![[1.0, 5.0], [1.0, 5.0], [1.0, 5.0], [1.0, 5.0]],
            vec!["a".into(), "a".into(), "b".into(), "b".into()],
            None,
        )
        .unwrap();
        let model = fit_gaussian_nb(&ds).unwrap();
        let q = model.predict_proba(array![[1.0, 5.0]].view()).unwrap();
        assert!(q.values().iter().all(|x| x.is_finite()));
        assert!((q.values().row(0).sum() - 1.0).abs() < 1e-9);
    }
}
