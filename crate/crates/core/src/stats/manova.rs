use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{determinant, inverse, mat_mul};
use crate::scalar::Real;

use super::special::f_survival;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ManovaResult<T> {
    pub wilks_lambda: T,
    pub pillai: T,
    /// Rao's F, exact for two groups.
    pub f_approx: T,
    pub df1: T,
    pub df2: T,
    pub p: T,
}

/// One-way MANOVA between two groups (`labels[i]` selects the group).
///
/// Builds the within-group scatter `E` and between-group scatter `H`, then
/// `Λ = det E / det(E + H)` and Pillai's trace `tr(H (E + H)^-1)`. For two
/// groups Rao's F is exact: `F = (1 - Λ)/Λ · (N - p - 1)/p` on `(p, N - p - 1)`.
pub fn manova_two_group<T: Real>(features: &[Vec<T>], labels: &[bool]) -> Result<ManovaResult<T>> {
    if features.len() != labels.len() {
        return Err(Error::InvalidArgument(format!(
            "{} feature rows for {} labels",
            features.len(),
            labels.len()
        )));
    }
    let p = features.first().map_or(0, Vec::len);
    if p == 0 || features.iter().any(|f| f.len() != p) {
        return Err(Error::InvalidArgument("MANOVA features must share one non-zero dimension".into()));
    }
    let n1 = labels.iter().filter(|&&l| l).count();
    let n0 = labels.len() - n1;
    if n0 < 4 || n1 < 4 {
        return Err(Error::InsufficientGroups { valid: n1, invalid: n0, needed: 4 });
    }
    let n = labels.len();
    if n < p + 2 {
        return Err(Error::Degenerate(format!("{n} samples too few for {p} variables")));
    }

    let group_mean = |flag: bool| {
        let mut m = vec![T::zero(); p];
        let mut count = T::zero();
        for (f, _) in features.iter().zip(labels).filter(|(_, &l)| l == flag) {
            for (a, &x) in m.iter_mut().zip(f) {
                *a = *a + x;
            }
            count = count + T::one();
        }
        m.into_iter().map(|a| a / count).collect::<Vec<T>>()
    };
    let means = [group_mean(false), group_mean(true)];
    let grand: Vec<T> = {
        let nt = T::from_usize_lossy(n);
        let w0 = T::from_usize_lossy(n0) / nt;
        let w1 = T::from_usize_lossy(n1) / nt;
        (0..p).map(|j| w0 * means[0][j] + w1 * means[1][j]).collect()
    };

    let mut within = vec![vec![T::zero(); p]; p];
    for (f, &l) in features.iter().zip(labels) {
        let m = &means[usize::from(l)];
        for i in 0..p {
            for j in 0..p {
                within[i][j] = within[i][j] + (f[i] - m[i]) * (f[j] - m[j]);
            }
        }
    }
    let mut between = vec![vec![T::zero(); p]; p];
    for (g, count) in [(0usize, n0), (1, n1)] {
        let w = T::from_usize_lossy(count);
        for i in 0..p {
            for j in 0..p {
                between[i][j] =
                    between[i][j] + w * (means[g][i] - grand[i]) * (means[g][j] - grand[j]);
            }
        }
    }
    let total: Vec<Vec<T>> = within
        .iter()
        .zip(&between)
        .map(|(e, h)| e.iter().zip(h).map(|(&a, &b)| a + b).collect())
        .collect();

    let singular = || Error::Singular("within-group scatter matrix".into());
    let det_e = determinant(&within).ok_or_else(singular)?;
    let det_t = determinant(&total).ok_or_else(singular)?;
    let wilks = (det_e / det_t).min(T::one());
    let total_inv = inverse(&total).ok_or_else(singular)?;
    let ht = mat_mul(&between, &total_inv);
    let pillai = (0..p).map(|i| ht[i][i]).sum::<T>();

    let df1 = T::from_usize_lossy(p);
    let df2 = T::from_usize_lossy(n - p - 1);
    let f_approx = (T::one() - wilks) / wilks * df2 / df1;
    Ok(ManovaResult {
        wilks_lambda: wilks,
        pillai,
        f_approx,
        df1,
        df2,
        p: f_survival(f_approx, df1, df2),
    })
}
