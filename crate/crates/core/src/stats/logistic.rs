use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogisticConfig {
    pub l2: f64,
    pub learning_rate: f64,
    pub tolerance: f64,
    pub max_iter: usize,
}

impl Default for LogisticConfig {
    fn default() -> Self {
        Self {
            l2: 1e-4,
            learning_rate: 0.1,
            tolerance: 1e-8,
            max_iter: 10_000,
        }
    }
}

/// Binary logistic model trained on z-scored features.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classifier<T> {
    /// Coefficients on standardized features, followed by the bias.
    pub weights: Vec<T>,
    pub feature_mean: Vec<T>,
    pub feature_scale: Vec<T>,
    pub iterations: usize,
    pub final_loss: T,
}

impl<T: Real> Classifier<T> {
    pub fn n_features(&self) -> usize {
        self.feature_mean.len()
    }

    pub fn bias(&self) -> T {
        self.weights[self.n_features()]
    }

    fn logit(&self, x: &[T]) -> T {
        let k = self.n_features();
        self.weights[..k]
            .iter()
            .zip(x)
            .zip(self.feature_mean.iter().zip(&self.feature_scale))
            .map(|((&w, &v), (&m, &s))| w * (v - m) / s)
            .sum::<T>()
            + self.weights[k]
    }

    /// Probability of the positive class.
    pub fn predict_proba(&self, x: &[T]) -> T {
        sigmoid(self.logit(x))
    }

    pub fn predict(&self, x: &[T]) -> bool {
        self.predict_proba(x) >= T::lit(0.5)
    }
}

fn sigmoid<T: Real>(z: T) -> T {
    if z >= T::zero() {
        T::one() / (T::one() + (-z).exp())
    } else {
        let e = z.exp();
        e / (T::one() + e)
    }
}

/// `ln(1 + e^z)` without overflow.
fn softplus<T: Real>(z: T) -> T {
    z.max(T::zero()) + (-z.abs()).exp().ln_1p()
}

/// Full-batch gradient descent on L2-regularized mean log loss.
///
/// Features are standardized per column (constant columns are only centered);
/// weights start at zero and the bias is not penalized.
pub fn fit_logistic<T: Real>(
    features: &[Vec<T>],
    labels: &[bool],
    cfg: &LogisticConfig,
) -> Result<Classifier<T>> {
    if features.len() != labels.len() {
        return Err(Error::InvalidArgument(format!(
            "{} feature rows for {} labels",
            features.len(),
            labels.len()
        )));
    }
    let pos = labels.iter().filter(|&&l| l).count();
    let neg = labels.len() - pos;
    if pos < 2 || neg < 2 {
        return Err(Error::InsufficientGroups { valid: pos, invalid: neg, needed: 2 });
    }
    let k = features[0].len();
    if features.iter().any(|f| f.len() != k) {
        return Err(Error::InvalidArgument("ragged feature rows".into()));
    }
    if features.iter().flatten().any(|x| !x.is_finite()) {
        return Err(Error::InvalidArgument("non-finite feature value".into()));
    }

    let n = T::from_usize_lossy(features.len());
    let feature_mean: Vec<T> = (0..k)
        .map(|j| features.iter().map(|f| f[j]).sum::<T>() / n)
        .collect();
    let feature_scale: Vec<T> = (0..k)
        .map(|j| {
            let var = features.iter().map(|f| (f[j] - feature_mean[j]).powi(2)).sum::<T>() / n;
            let sd = var.sqrt();
            if sd > T::epsilon() {
                sd
            } else {
                T::one()
            }
        })
        .collect();
    let z: Vec<Vec<T>> = features
        .iter()
        .map(|f| (0..k).map(|j| (f[j] - feature_mean[j]) / feature_scale[j]).collect())
        .collect();
    let y: Vec<T> = labels.iter().map(|&l| if l { T::one() } else { T::zero() }).collect();

    let l2 = T::lit(cfg.l2);
    let lr = T::lit(cfg.learning_rate);
    let tol = T::lit(cfg.tolerance);
    let mut w = vec![T::zero(); k + 1];
    let mut grad = vec![T::zero(); k + 1];
    let mut iterations = 0;
    while iterations < cfg.max_iter {
        grad.iter_mut().for_each(|g| *g = T::zero());
        for (row, &target) in z.iter().zip(&y) {
            let s = linear(&w, row);
            let r = sigmoid(s) - target;
            for (g, &x) in grad.iter_mut().zip(row) {
                *g = *g + r * x;
            }
            grad[k] = grad[k] + r;
        }
        for (j, g) in grad.iter_mut().enumerate() {
            *g = *g / n;
            if j < k {
                *g = *g + l2 * w[j];
            }
        }
        let gnorm = grad.iter().map(|g| *g * *g).sum::<T>().sqrt();
        if gnorm < tol {
            break;
        }
        for (wj, &g) in w.iter_mut().zip(&grad) {
            *wj = *wj - lr * g;
        }
        iterations += 1;
    }

    let data_loss = z
        .iter()
        .zip(&y)
        .map(|(row, &target)| {
            let s = linear(&w, row);
            softplus(s) - target * s
        })
        .sum::<T>()
        / n;
    let penalty = T::lit(0.5) * l2 * w[..k].iter().map(|x| *x * *x).sum::<T>();
    Ok(Classifier {
        weights: w,
        feature_mean,
        feature_scale,
        iterations,
        final_loss: data_loss + penalty,
    })
}

fn linear<T: Real>(w: &[T], row: &[T]) -> T {
    let k = row.len();
    w[..k].iter().zip(row).map(|(&a, &b)| a * b).sum::<T>() + w[k]
}
