//! Entropy of the step-size distribution and a free-energy summary.

use serde::{Deserialize, Serialize};

use crate::chain::EmbeddedChain;
use crate::energy::energy_profile;
use crate::error::{Error, Result};
use crate::geometry::step_magnitudes;
use crate::linalg::mean;
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatMechSummary<T> {
    pub chain_id: String,
    /// Nats.
    pub entropy: T,
    pub free_energy: T,
    pub temperature: T,
}

/// Shannon entropy of `w_i = v_i / Σ v_j` over the step magnitudes.
pub fn magnitude_entropy<T: Real>(magnitudes: &[T]) -> T {
    let total: T = magnitudes.iter().copied().sum();
    if total <= T::zero() {
        return T::zero();
    }
    magnitudes
        .iter()
        .filter(|&&v| v > T::zero())
        .map(|&v| {
            let w = v / total;
            -w * w.ln()
        })
        .sum::<T>()
        .max(T::zero())
}

pub fn trajectory_entropy<T: Real>(chain: &EmbeddedChain<T>) -> T {
    magnitude_entropy(&step_magnitudes(chain.steps()))
}

/// `F = mean(T_i + |V_i|) - temperature · S`.
pub fn free_energy<T: Real>(chain: &EmbeddedChain<T>, temperature: T) -> Result<T> {
    Ok(statmech_summary(chain, temperature)?.free_energy)
}

pub fn statmech_summary<T: Real>(chain: &EmbeddedChain<T>, temperature: T) -> Result<StatMechSummary<T>> {
    if temperature <= T::zero() || !temperature.is_finite() {
        return Err(Error::InvalidArgument(format!("temperature must be positive, got {temperature}")));
    }
    let profile = energy_profile(chain);
    let energies: Vec<T> = profile
        .kinetic
        .iter()
        .zip(&profile.potential)
        .map(|(&t, &v)| t + v.abs())
        .collect();
    let entropy = trajectory_entropy(chain);
    Ok(StatMechSummary {
        chain_id: chain.id().to_string(),
        entropy,
        free_energy: mean(&energies) - temperature * entropy,
        temperature,
    })
}
