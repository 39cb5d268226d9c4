//! Chain and dataset data model.
//!
//! A reasoning chain is an ordered list of step embeddings plus one reference
//! embedding (the question or the goal, whichever the producer chose). Every
//! constructor validates; a value of [`EmbeddedChain`] always satisfies:
//!
//! * at least two steps,
//! * one shared dimension `d >= 2` for all steps and the reference,
//! * finite components only,
//! * a reference with strictly positive norm.

mod io;
mod pool;
mod synth;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::norm;
use crate::scalar::Real;

pub use io::{load_dataset, parse_dataset, write_dataset, write_dataset_to};
pub use pool::{pool_tokens, PoolingMode, TokenMatrix};
pub use synth::{synth_dataset, SynthParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Valid,
    Invalid,
    Unknown,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Valid => "valid",
            Label::Invalid => "invalid",
            Label::Unknown => "unknown",
        }
    }

    /// Validity indicator (1 valid, 0 invalid); `None` when unlabeled.
    pub fn indicator(self) -> Option<u8> {
        match self {
            Label::Valid => Some(1),
            Label::Invalid => Some(0),
            Label::Unknown => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "valid" => Ok(Label::Valid),
            "invalid" => Ok(Label::Invalid),
            "unknown" => Ok(Label::Unknown),
            other => Err(Error::InvalidArgument(format!("unknown label {other:?}"))),
        }
    }
}

/// One reasoning chain as a discrete trajectory in embedding space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddedChain<T> {
    id: String,
    steps: Vec<Vec<T>>,
    reference: Vec<T>,
    label: Label,
    texts: Option<Vec<String>>,
}

impl<T: Real> EmbeddedChain<T> {
    pub fn new(
        id: impl Into<String>,
        steps: Vec<Vec<T>>,
        reference: Vec<T>,
        label: Label,
        texts: Option<Vec<String>>,
    ) -> Result<Self> {
        let id = id.into();
        if steps.len() < 2 {
            return Err(Error::TooFewSteps {
                chain_id: id,
                needed: 2,
                found: steps.len(),
            });
        }
        let d = reference.len();
        if d < 2 {
            return Err(Error::DimensionMismatch {
                chain_id: id,
                expected: 2,
                found: d,
            });
        }
        for step in &steps {
            if step.len() != d {
                return Err(Error::DimensionMismatch {
                    chain_id: id,
                    expected: d,
                    found: step.len(),
                });
            }
        }
        let finite = reference
            .iter()
            .chain(steps.iter().flatten())
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::NonFinite { chain_id: id });
        }
        if norm(&reference) <= T::zero() {
            return Err(Error::ZeroReference { chain_id: id });
        }
        if let Some(t) = &texts {
            if t.len() != steps.len() {
                return Err(Error::InvalidArgument(format!(
                    "chain {id}: {} texts for {} steps",
                    t.len(),
                    steps.len()
                )));
            }
        }
        Ok(Self {
            id,
            steps,
            reference,
            label,
            texts,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn steps(&self) -> &[Vec<T>] {
        &self.steps
    }

    pub fn reference(&self) -> &[T] {
        &self.reference
    }

    pub fn label(&self) -> Label {
        self.label
    }

    pub fn texts(&self) -> Option<&[String]> {
        self.texts.as_deref()
    }

    pub fn dimension(&self) -> usize {
        self.reference.len()
    }

    /// Number of steps `m`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn with_label(mut self, label: Label) -> Self {
        self.label = label;
        self
    }

    /// Converts every component to another scalar type.
    pub fn cast<U: Real>(&self) -> EmbeddedChain<U> {
        let conv = |v: &Vec<T>| v.iter().map(|x| U::lit(x.as_f64())).collect::<Vec<U>>();
        EmbeddedChain {
            id: self.id.clone(),
            steps: self.steps.iter().map(conv).collect(),
            reference: conv(&self.reference),
            label: self.label,
            texts: self.texts.clone(),
        }
    }

    /// Applies `f` to every step and to the reference, revalidating the result.
    pub fn map_vectors(&self, mut f: impl FnMut(&[T]) -> Vec<T>) -> Result<Self> {
        let steps = self.steps.iter().map(|s| f(s)).collect();
        let reference = f(&self.reference);
        Self::new(
            self.id.clone(),
            steps,
            reference,
            self.label,
            self.texts.clone(),
        )
    }
}

/// A validated cohort of chains sharing one embedding dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainDataset<T> {
    chains: Vec<EmbeddedChain<T>>,
    dimension: Option<usize>,
    provenance: String,
    ids: HashSet<String>,
}

impl<T: Real> ChainDataset<T> {
    pub fn new(chains: Vec<EmbeddedChain<T>>, provenance: impl Into<String>) -> Result<Self> {
        let mut ds = Self::empty(provenance);
        for c in chains {
            ds.push(c)?;
        }
        Ok(ds)
    }

    pub fn empty(provenance: impl Into<String>) -> Self {
        Self {
            chains: Vec::new(),
            dimension: None,
            provenance: provenance.into(),
            ids: HashSet::new(),
        }
    }

    pub fn push(&mut self, chain: EmbeddedChain<T>) -> Result<()> {
        match self.dimension {
            Some(d) if d != chain.dimension() => {
                return Err(Error::DimensionMismatch {
                    found: chain.dimension(),
                    chain_id: chain.id,
                    expected: d,
                })
            }
            _ => {}
        }
        if !self.ids.insert(chain.id.clone()) {
            return Err(Error::DuplicateId(chain.id));
        }
        self.dimension = Some(chain.dimension());
        self.chains.push(chain);
        Ok(())
    }

    pub fn chains(&self) -> &[EmbeddedChain<T>] {
        &self.chains
    }

    pub fn iter(&self) -> std::slice::Iter<'_, EmbeddedChain<T>> {
        self.chains.iter()
    }

    /// Shared dimension; `None` until the first chain is added.
    pub fn dimension(&self) -> Option<usize> {
        self.dimension
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// Counts of (valid, invalid) chains.
    pub fn group_sizes(&self) -> (usize, usize) {
        self.chains.iter().fold((0, 0), |(v, i), c| match c.label {
            Label::Valid => (v + 1, i),
            Label::Invalid => (v, i + 1),
            Label::Unknown => (v, i),
        })
    }

    /// Errors unless both label groups hold at least `needed` chains.
    pub fn require_groups(&self, needed: usize) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyCohort);
        }
        let (valid, invalid) = self.group_sizes();
        if valid < needed || invalid < needed {
            return Err(Error::InsufficientGroups {
                valid,
                invalid,
                needed,
            });
        }
        Ok(())
    }

    pub fn cast<U: Real>(&self) -> ChainDataset<U> {
        ChainDataset {
            chains: self.chains.iter().map(EmbeddedChain::cast).collect(),
            dimension: self.dimension,
            provenance: self.provenance.clone(),
            ids: self.ids.clone(),
        }
    }

    pub fn map_chains(
        &self,
        f: impl FnMut(&EmbeddedChain<T>) -> Result<EmbeddedChain<T>>,
    ) -> Result<Self> {
        let chains = self.chains.iter().map(f).collect::<Result<Vec<_>>>()?;
        Self::new(chains, self.provenance.clone())
    }
}

impl<'a, T> IntoIterator for &'a ChainDataset<T> {
    type Item = &'a EmbeddedChain<T>;
    type IntoIter = std::slice::Iter<'a, EmbeddedChain<T>>;

    fn into_iter(self) -> Self::IntoIter {
        self.chains.iter()
    }
}
