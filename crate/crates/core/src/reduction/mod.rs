//! Principal component analysis over the pooled step vectors of a cohort.

#![allow(clippy::needless_range_loop)]

mod eigen;

use serde::{Deserialize, Serialize};

use crate::chain::{ChainDataset, EmbeddedChain, Label};
use crate::error::{Error, Result};
use crate::geometry::{smoothness, trajectory_length};
use crate::linalg::dot;
use crate::scalar::Real;

pub use eigen::{symmetric_eigen, SymmetricEigen};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PcaModel<T> {
    pub mean: Vec<T>,
    /// Unit principal axes, strongest first. Each axis has its
    /// largest-magnitude entry positive.
    pub components: Vec<Vec<T>>,
    pub explained_variance: Vec<T>,
    pub total_variance: T,
}

/// A chain expressed in principal-component coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectedChain<T> {
    pub id: String,
    pub label: Label,
    pub steps: Vec<Vec<T>>,
    pub reference: Vec<T>,
}

/// Fits on every step of every chain. Reference vectors are not used.
pub fn fit_pca<T: Real>(dataset: &ChainDataset<T>, k: usize) -> Result<PcaModel<T>> {
    let points: Vec<&[T]> = dataset
        .iter()
        .flat_map(|c| c.steps().iter().map(Vec::as_slice))
        .collect();
    fit_pca_points(&points, k)
}

/// Fits on an arbitrary set of equal-length points (population covariance).
pub fn fit_pca_points<T: Real>(points: &[&[T]], k: usize) -> Result<PcaModel<T>> {
    if points.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "PCA needs at least 2 samples, got {}",
            points.len()
        )));
    }
    let d = points[0].len();
    if points.iter().any(|p| p.len() != d) {
        return Err(Error::InvalidArgument("PCA samples differ in dimension".into()));
    }
    if k == 0 || k > d || k > points.len() {
        return Err(Error::InvalidArgument(format!(
            "PCA target dimension {k} outside 1..={}",
            d.min(points.len())
        )));
    }

    let n = T::from_usize_lossy(points.len());
    let mut mean = vec![T::zero(); d];
    for p in points {
        for (m, &x) in mean.iter_mut().zip(p.iter()) {
            *m = *m + x;
        }
    }
    mean.iter_mut().for_each(|m| *m = *m / n);

    let mut cov = vec![vec![T::zero(); d]; d];
    let mut centered = vec![T::zero(); d];
    for p in points {
        for (c, (&x, &m)) in centered.iter_mut().zip(p.iter().zip(&mean)) {
            *c = x - m;
        }
        for i in 0..d {
            let ci = centered[i];
            for j in 0..=i {
                cov[i][j] = cov[i][j] + ci * centered[j];
            }
        }
    }
    for i in 0..d {
        for j in 0..=i {
            let v = cov[i][j] / n;
            cov[i][j] = v;
            cov[j][i] = v;
        }
    }
    let total_variance = (0..d).map(|i| cov[i][i]).sum::<T>();

    let eig = symmetric_eigen(&cov)?;
    let components = eig
        .vectors
        .into_iter()
        .take(k)
        .map(fix_sign)
        .collect();
    let explained_variance = eig
        .values
        .into_iter()
        .take(k)
        .map(|v| v.max(T::zero()))
        .collect();
    Ok(PcaModel {
        mean,
        components,
        explained_variance,
        total_variance,
    })
}

fn fix_sign<T: Real>(v: Vec<T>) -> Vec<T> {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v[best] < T::zero() {
        v.into_iter().map(|x| -x).collect()
    } else {
        v
    }
}

impl<T: Real> PcaModel<T> {
    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn dimension(&self) -> usize {
        self.mean.len()
    }

    /// Keeps only the leading `k` components.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.k() {
            return Err(Error::InvalidArgument(format!(
                "cannot keep {k} of {} components",
                self.k()
            )));
        }
        Ok(Self {
            mean: self.mean.clone(),
            components: self.components[..k].to_vec(),
            explained_variance: self.explained_variance[..k].to_vec(),
            total_variance: self.total_variance,
        })
    }

    pub fn project(&self, x: &[T]) -> Vec<T> {
        let centered: Vec<T> = x.iter().zip(&self.mean).map(|(&a, &m)| a - m).collect();
        self.components.iter().map(|c| dot(c, &centered)).collect()
    }

    pub fn reconstruct(&self, coords: &[T]) -> Vec<T> {
        let mut out = self.mean.clone();
        for (c, &w) in self.components.iter().zip(coords) {
            for (o, &x) in out.iter_mut().zip(c) {
                *o = *o + w * x;
            }
        }
        out
    }

    fn check_dimension(&self, chain: &EmbeddedChain<T>) -> Result<()> {
        if chain.dimension() != self.dimension() {
            return Err(Error::DimensionMismatch {
                chain_id: chain.id().to_string(),
                expected: self.dimension(),
                found: chain.dimension(),
            });
        }
        Ok(())
    }

    pub fn project_chain(&self, chain: &EmbeddedChain<T>) -> Result<ProjectedChain<T>> {
        self.check_dimension(chain)?;
        Ok(ProjectedChain {
            id: chain.id().to_string(),
            label: chain.label(),
            steps: chain.steps().iter().map(|s| self.project(s)).collect(),
            reference: self.project(chain.reference()),
        })
    }

    pub fn to_json(&self) -> String
    where
        T: Serialize,
    {
        serde_json::to_string_pretty(self).expect("PCA model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self>
    where
        T: for<'de> Deserialize<'de>,
    {
        let model: Self = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let d = model.mean.len();
        let k = model.components.len();
        if k == 0 || model.components.iter().any(|c| c.len() != d) || model.explained_variance.len() != k {
            return Err(Error::InvalidArgument("inconsistent PCA model shapes".into()));
        }
        Ok(model)
    }
}

pub fn project_chain<T: Real>(model: &PcaModel<T>, chain: &EmbeddedChain<T>) -> Result<ProjectedChain<T>> {
    model.project_chain(chain)
}

/// Classifier features: mean projected coordinates (k values), then the
/// native trajectory length and smoothness.
pub fn chain_summary_features<T: Real>(model: &PcaModel<T>, chain: &EmbeddedChain<T>) -> Result<Vec<T>> {
    if model.k() < 2 {
        return Err(Error::InvalidArgument("summary features need at least 2 components".into()));
    }
    let projected = model.project_chain(chain)?;
    let m = T::from_usize_lossy(projected.steps.len());
    let mut features: Vec<T> = (0..model.k())
        .map(|j| projected.steps.iter().map(|s| s[j]).sum::<T>() / m)
        .collect();
    features.push(trajectory_length(chain.steps()));
    features.push(smoothness(chain.steps()));
    Ok(features)
}
