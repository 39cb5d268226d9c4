//! Hypothesis tests, effect sizes, MANOVA, logistic classification,
//! classification metrics and power-law fitting for cohort analysis.

mod complexity;
mod logistic;
mod manova;
mod report;
pub mod special;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{mean, sample_variance};
use crate::scalar::Real;

pub use complexity::complexity_fit;
pub use logistic::{fit_logistic, Classifier, LogisticConfig};
pub use manova::{manova_two_group, ManovaResult};
pub use report::{classification_report, ClassMetrics, ClassificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TTestResult<T> {
    pub t: T,
    /// Two-sided p-value.
    pub p: T,
    /// Welch–Satterthwaite degrees of freedom.
    pub df: T,
}

/// Welch's unequal-variance two-sample t-test; `t` is positive when `mean(a) > mean(b)`.
pub fn welch_t_test<T: Real>(a: &[T], b: &[T]) -> Result<TTestResult<T>> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::Degenerate(format!(
            "t-test needs at least 2 samples per group (got {} and {})",
            a.len(),
            b.len()
        )));
    }
    let na = T::from_usize_lossy(a.len());
    let nb = T::from_usize_lossy(b.len());
    let va = sample_variance(a) / na;
    let vb = sample_variance(b) / nb;
    let se2 = va + vb;
    if se2 <= T::zero() {
        return Err(Error::Degenerate("t-test with zero variance in both groups".into()));
    }
    let diff = mean(a) - mean(b);
    let t = diff / se2.sqrt();
    let df = se2 * se2 / (va * va / (na - T::one()) + vb * vb / (nb - T::one()));
    Ok(TTestResult {
        t,
        p: special::student_t_two_sided(t, df),
        df,
    })
}

/// Standardized mean difference `(mean a - mean b) / pooled sd`.
pub fn cohens_d<T: Real>(a: &[T], b: &[T]) -> Result<T> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::Degenerate("Cohen's d needs at least 2 samples per group".into()));
    }
    let na = T::from_usize_lossy(a.len());
    let nb = T::from_usize_lossy(b.len());
    let two = T::lit(2.0);
    let pooled = ((na - T::one()) * sample_variance(a) + (nb - T::one()) * sample_variance(b))
        / (na + nb - two);
    if pooled <= T::zero() {
        return Err(Error::Degenerate("zero pooled standard deviation".into()));
    }
    Ok((mean(a) - mean(b)) / pooled.sqrt())
}

/// Pearson product-moment correlation.
pub fn pearson_correlation<T: Real>(a: &[T], b: &[T]) -> Result<T> {
    if a.len() != b.len() || a.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "correlation needs two equal-length samples of size >= 2 (got {} and {})",
            a.len(),
            b.len()
        )));
    }
    let ma = mean(a);
    let mb = mean(b);
    let (mut sab, mut saa, mut sbb) = (T::zero(), T::zero(), T::zero());
    for (&x, &y) in a.iter().zip(b) {
        let dx = x - ma;
        let dy = y - mb;
        sab = sab + dx * dy;
        saa = saa + dx * dx;
        sbb = sbb + dy * dy;
    }
    if saa <= T::zero() || sbb <= T::zero() {
        return Err(Error::Degenerate("correlation with zero variance".into()));
    }
    Ok((sab / (saa * sbb).sqrt()).max(-T::one()).min(T::one()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn welch_fixture_pair() {
        let r = welch_t_test(&[1.0f64, 2.0, 3.0, 4.0, 5.0], &[2.0, 3.0, 4.0, 5.0, 6.0]).unwrap();
        assert!((r.t + 1.0).abs() < 1e-12);
        assert!((r.df - 8.0).abs() < 1e-12);
        assert!((r.p - 0.346_593_507_087_334_3).abs() < 1e-10);
    }

    #[test]
    fn welch_identical_groups() {
        let a = [0.3f64, 1.2, -0.4, 2.2];
        let r = welch_t_test(&a, &a).unwrap();
        assert_eq!(r.t, 0.0);
        assert!((r.p - 1.0).abs() < 1e-15);
    }

    #[test]
    fn welch_antisymmetry() {
        let a = [1.0, 2.5, 3.1, 0.2];
        let b = [4.0, 2.2, 5.5, 3.3, 6.1];
        let ab = welch_t_test(&a, &b).unwrap();
        let ba = welch_t_test(&b, &a).unwrap();
        assert_eq!(ab.t, -ba.t);
        assert_eq!(ab.p, ba.p);
    }

    #[test]
    fn welch_degenerate_inputs() {
        assert!(welch_t_test(&[1.0], &[1.0, 2.0]).is_err());
        assert!(welch_t_test(&[1.0, 1.0], &[2.0, 2.0]).is_err());
        // One constant group is fine.
        assert!(welch_t_test(&[1.0, 1.0], &[2.0, 3.0]).is_ok());
    }

    #[test]
    fn cohens_d_examples() {
        assert_eq!(cohens_d(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap(), 0.0);
        // both groups have sd 1, means differ by 1
        let a = [1.0f64, 2.0, 3.0];
        let b = [0.0f64, 1.0, 2.0];
        assert!((cohens_d(&a, &b).unwrap() - 1.0).abs() < 1e-15);
        assert!((cohens_d(&b, &a).unwrap() + 1.0).abs() < 1e-15);
        assert!(cohens_d(&[1.0, 1.0], &[1.0, 1.0]).is_err());
    }

    #[test]
    fn pearson_examples() {
        let a = [1.0, -1.0, 1.0, -1.0];
        let b = [1.0, 1.0, -1.0, -1.0];
        assert_eq!(pearson_correlation(&a, &b).unwrap(), 0.0);
        let x = [0.5, 1.5, 2.0, 7.0];
        let lin: Vec<f64> = x.iter().map(|v| 2.0 * v + 3.0).collect();
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((pearson_correlation(&x, &lin).unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson_correlation(&x, &neg).unwrap() + 1.0).abs() < 1e-15);
        assert!(pearson_correlation(&x, &[1.0; 4]).is_err());
        assert!(pearson_correlation(&x, &[1.0; 3]).is_err());
    }
}
