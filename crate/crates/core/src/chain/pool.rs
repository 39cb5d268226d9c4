use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Contextual token embeddings for one text span, one row per token.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenMatrix<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Real> TokenMatrix<T> {
    pub fn new(rows: Vec<Vec<T>>) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::InvalidArgument("empty token matrix".into()))?;
        let d = first.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::InvalidArgument("ragged token matrix".into()));
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument("non-finite token embedding".into()));
        }
        Ok(Self { rows })
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PoolingMode {
    #[default]
    Mean,
    Max,
    /// The first token, e.g. a `[CLS]` position.
    First,
}

impl FromStr for PoolingMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mean" => Ok(Self::Mean),
            "max" => Ok(Self::Max),
            "first" => Ok(Self::First),
            other => Err(Error::InvalidArgument(format!(
                "unknown pooling mode {other:?} (expected mean, max or first)"
            ))),
        }
    }
}

/// Collapses token embeddings into one state vector.
pub fn pool_tokens<T: Real>(tokens: &TokenMatrix<T>, mode: PoolingMode) -> Vec<T> {
    let rows = tokens.rows();
    match mode {
        PoolingMode::First => rows[0].clone(),
        PoolingMode::Mean => {
            let n = T::from_usize_lossy(rows.len());
            let mut acc = vec![T::zero(); rows[0].len()];
            for r in rows {
                for (a, &x) in acc.iter_mut().zip(r) {
                    *a = *a + x;
                }
            }
            acc.into_iter().map(|a| a / n).collect()
        }
        PoolingMode::Max => {
            let mut acc = rows[0].clone();
            for r in &rows[1..] {
                for (a, &x) in acc.iter_mut().zip(r) {
                    *a = a.max(x);
                }
            }
            acc
        }
    }
}
