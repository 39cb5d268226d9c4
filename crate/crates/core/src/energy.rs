//! Discrete reasoning Hamiltonian.
//!
//! For a chain `q_0 .. q_{m-1}` with reference `r`:
//!
//! * momentum `p_i = q_{i+1} - q_i`
//! * kinetic `T_i = ½‖p_i‖²`
//! * potential `V_i = -cos(q_i, r)`, evaluated where the transition starts
//! * Hamiltonian `H_i = T_i - V_i`
//!
//! giving `m - 1` aligned triples per chain.

use serde::{Deserialize, Serialize};

use crate::chain::{ChainDataset, EmbeddedChain, Label};
use crate::error::{Error, Result};
use crate::linalg::{cosine, mean, norm, norm_sq, pop_variance, sub};
use crate::scalar::Real;
use crate::stats::{pearson_correlation, welch_t_test, TTestResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyProfile<T> {
    pub chain_id: String,
    pub momenta: Vec<Vec<T>>,
    pub kinetic: Vec<T>,
    pub potential: Vec<T>,
    pub hamiltonian: Vec<T>,
    pub mean_h: T,
    pub conservation_score: T,
}

/// Differences between consecutive states.
pub fn momentum_sequence<T: Real>(steps: &[Vec<T>]) -> Vec<Vec<T>> {
    steps.windows(2).map(|w| sub(&w[1], &w[0])).collect()
}

pub fn kinetic_energy<T: Real>(p: &[T]) -> T {
    T::lit(0.5) * norm_sq(p)
}

/// Negative cosine similarity to the reference. A zero state has similarity 0.
pub fn potential_energy<T: Real>(q: &[T], reference: &[T]) -> Result<T> {
    if norm(reference) <= T::zero() {
        return Err(Error::InvalidArgument("reference vector has zero norm".into()));
    }
    Ok(cosine(q, reference).map_or(T::zero(), |c| -c))
}

/// Population std of `H` divided by `1 + |mean H|`; 0 iff all values are equal.
pub fn conservation_score<T: Real>(hamiltonian: &[T]) -> Result<T> {
    if hamiltonian.is_empty() {
        return Err(Error::InvalidArgument("empty Hamiltonian sequence".into()));
    }
    if hamiltonian.len() == 1 {
        return Ok(T::zero());
    }
    let m = mean(hamiltonian);
    Ok(pop_variance(hamiltonian).sqrt() / (T::one() + m.abs()))
}

pub fn energy_profile<T: Real>(chain: &EmbeddedChain<T>) -> EnergyProfile<T> {
    let momenta = momentum_sequence(chain.steps());
    let kinetic: Vec<T> = momenta.iter().map(|p| kinetic_energy(p)).collect();
    let potential: Vec<T> = chain.steps()[..momenta.len()]
        .iter()
        .map(|q| potential_energy(q, chain.reference()).expect("validated chain has nonzero reference"))
        .collect();
    let hamiltonian: Vec<T> = kinetic.iter().zip(&potential).map(|(&t, &v)| t - v).collect();
    let mean_h = mean(&hamiltonian);
    let conservation_score = conservation_score(&hamiltonian).expect("chain has at least one step");
    EnergyProfile {
        chain_id: chain.id().to_string(),
        momenta,
        kinetic,
        potential,
        hamiltonian,
        mean_h,
        conservation_score,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary<T> {
    pub n: usize,
    pub mean: T,
    pub std: T,
}

impl<T: Real> GroupSummary<T> {
    pub fn of(xs: &[T]) -> Self {
        Self {
            n: xs.len(),
            mean: mean(xs),
            std: crate::linalg::sample_variance(xs).sqrt(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CohortEnergyStats<T> {
    pub valid_mean_h: GroupSummary<T>,
    pub invalid_mean_h: GroupSummary<T>,
    /// Welch test of per-chain `mean_h`, valid minus invalid.
    pub t_test: TTestResult<T>,
    pub mean_conservation_score: T,
    /// Correlation of conservation score with validity (1 valid, 0 invalid);
    /// `None` if the scores have zero variance.
    pub conservation_validity_correlation: Option<T>,
}

pub fn cohort_energy_stats<T: Real>(dataset: &ChainDataset<T>) -> Result<CohortEnergyStats<T>> {
    dataset.require_groups(2)?;
    let profiles: Vec<(Label, EnergyProfile<T>)> =
        dataset.iter().map(|c| (c.label(), energy_profile(c))).collect();
    cohort_energy_stats_from(&profiles)
}

/// Same as [`cohort_energy_stats`] over precomputed profiles; unlabeled chains are ignored.
pub fn cohort_energy_stats_from<T: Real>(
    profiles: &[(Label, EnergyProfile<T>)],
) -> Result<CohortEnergyStats<T>> {
    let pick = |label: Label| {
        profiles
            .iter()
            .filter(|(l, _)| *l == label)
            .map(|(_, p)| p.mean_h)
            .collect::<Vec<T>>()
    };
    let valid = pick(Label::Valid);
    let invalid = pick(Label::Invalid);
    if valid.len() < 2 || invalid.len() < 2 {
        return Err(Error::InsufficientGroups {
            valid: valid.len(),
            invalid: invalid.len(),
            needed: 2,
        });
    }
    let t_test = welch_t_test(&valid, &invalid)?;
    let (scores, indicator): (Vec<T>, Vec<T>) = profiles
        .iter()
        .filter_map(|(l, p)| l.indicator().map(|i| (p.conservation_score, T::from_u8(i).unwrap())))
        .unzip();
    Ok(CohortEnergyStats {
        valid_mean_h: GroupSummary::of(&valid),
        invalid_mean_h: GroupSummary::of(&invalid),
        t_test,
        mean_conservation_score: mean(&scores),
        conservation_validity_correlation: pearson_correlation(&scores, &indicator).ok(),
    })
}
