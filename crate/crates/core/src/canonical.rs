//! Reduced phase space, the action-angle map and conservation diagnostics.
//!
//! A chain projected onto the leading principal axes gives phase points
//! `(q_i, p_i)` with `p_i = q_{i+1} - q_i`. The action-angle map acts on the
//! leading coordinate pair: `I = ½(q² + p²)`, `θ = atan2(p, q)`.

use serde::{Deserialize, Serialize};

use crate::chain::{ChainDataset, EmbeddedChain, Label};
use crate::energy::{energy_profile, momentum_sequence};
use crate::error::{Error, Result};
use crate::linalg::{mean, norm_sq, standard_error, sub};
use crate::reduction::PcaModel;
use crate::scalar::Real;
use crate::stats::{welch_t_test, TTestResult};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseTrajectory<T> {
    pub chain_id: String,
    /// `(q_i, p_i)` in reduced coordinates, one per momentum step.
    pub points: Vec<(Vec<T>, Vec<T>)>,
    pub actions: Vec<T>,
    /// Raw `atan2` angles in `(-π, π]`.
    pub angles: Vec<T>,
    pub mean_action: T,
    /// Spread of the unwrapped angle sequence.
    pub angle_range: T,
    /// `mean_action` divided by the chain's mean squared centered step norm
    /// in embedding space; 0 for a chain resting at the model mean.
    pub normalized_mean_action: T,
}

/// Polar map of one phase pair: `(I, θ)`.
pub fn action_angle<T: Real>(q: T, p: T) -> (T, T) {
    (T::lit(0.5) * (q * q + p * p), p.atan2(q))
}

/// Removes `2π` jumps so consecutive angles differ by at most `π`.
pub fn unwrap_angles<T: Real>(angles: &[T]) -> Vec<T> {
    let tau = T::TAU();
    let pi = T::PI();
    let mut out = Vec::with_capacity(angles.len());
    let mut offset = T::zero();
    for (i, &a) in angles.iter().enumerate() {
        if i > 0 {
            let prev = angles[i - 1];
            let delta = a - prev;
            if delta > pi {
                offset = offset - tau;
            } else if delta < -pi {
                offset = offset + tau;
            }
        }
        out.push(a + offset);
    }
    out
}

impl<T: Real> PhaseTrajectory<T> {
    /// Builds the action-angle description from reduced phase points.
    pub fn from_points(chain_id: impl Into<String>, points: Vec<(Vec<T>, Vec<T>)>, rms_sq: T) -> Self {
        let (actions, angles): (Vec<T>, Vec<T>) =
            points.iter().map(|(q, p)| action_angle(q[0], p[0])).unzip();
        let mean_action = if actions.is_empty() { T::zero() } else { mean(&actions) };
        let unwrapped = unwrap_angles(&angles);
        let angle_range = match (
            unwrapped.iter().copied().reduce(T::max),
            unwrapped.iter().copied().reduce(T::min),
        ) {
            (Some(hi), Some(lo)) => hi - lo,
            _ => T::zero(),
        };
        let normalized_mean_action = if rms_sq > T::zero() { mean_action / rms_sq } else { T::zero() };
        Self {
            chain_id: chain_id.into(),
            points,
            actions,
            angles,
            mean_action,
            angle_range,
            normalized_mean_action,
        }
    }
}

fn reduced_steps<T: Real>(model: &PcaModel<T>, chain: &EmbeddedChain<T>, k: usize) -> Result<Vec<Vec<T>>> {
    if model.k() < k {
        return Err(Error::InvalidArgument(format!(
            "model has {} components, {k} requested",
            model.k()
        )));
    }
    let projected = model.project_chain(chain)?;
    Ok(projected.steps.into_iter().map(|mut s| {
        s.truncate(k);
        s
    }).collect())
}

fn phase_points<T: Real>(steps: &[Vec<T>]) -> Vec<(Vec<T>, Vec<T>)> {
    steps
        .iter()
        .zip(momentum_sequence(steps))
        .map(|(q, p)| (q.clone(), p))
        .collect()
}

pub fn phase_trajectory<T: Real>(model: &PcaModel<T>, chain: &EmbeddedChain<T>, k: usize) -> Result<PhaseTrajectory<T>> {
    if !(1..=3).contains(&k) {
        return Err(Error::InvalidArgument(format!("phase-space dimension {k} not in 1..=3")));
    }
    let steps = reduced_steps(model, chain, k)?;
    let rms_sq = mean(
        &chain
            .steps()
            .iter()
            .map(|s| norm_sq(&sub(s, &model.mean)))
            .collect::<Vec<T>>(),
    );
    Ok(PhaseTrajectory::from_points(chain.id(), phase_points(&steps), rms_sq))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionAngleCohortTest<T> {
    pub valid_mean_action: T,
    pub invalid_mean_action: T,
    /// Welch test on per-chain mean action, valid minus invalid.
    pub action_t: TTestResult<T>,
    pub valid_angle_range: T,
    pub invalid_angle_range: T,
    pub angle_t: TTestResult<T>,
}

pub fn action_angle_cohort_test<T: Real>(dataset: &ChainDataset<T>, model: &PcaModel<T>) -> Result<ActionAngleCohortTest<T>> {
    dataset.require_groups(2)?;
    let trajectories = dataset
        .iter()
        .map(|c| Ok((c.label(), phase_trajectory(model, c, 1)?)))
        .collect::<Result<Vec<_>>>()?;
    action_angle_cohort_from(&trajectories)
}

/// Same as [`action_angle_cohort_test`] over precomputed trajectories.
pub fn action_angle_cohort_from<T: Real>(trajectories: &[(Label, PhaseTrajectory<T>)]) -> Result<ActionAngleCohortTest<T>> {
    let pick = |label: Label, f: fn(&PhaseTrajectory<T>) -> T| {
        trajectories
            .iter()
            .filter(|(l, _)| *l == label)
            .map(|(_, t)| f(t))
            .collect::<Vec<T>>()
    };
    let va = pick(Label::Valid, |t| t.mean_action);
    let ia = pick(Label::Invalid, |t| t.mean_action);
    if va.len() < 2 || ia.len() < 2 {
        return Err(Error::InsufficientGroups { valid: va.len(), invalid: ia.len(), needed: 2 });
    }
    let vr = pick(Label::Valid, |t| t.angle_range);
    let ir = pick(Label::Invalid, |t| t.angle_range);
    Ok(ActionAngleCohortTest {
        valid_mean_action: mean(&va),
        invalid_mean_action: mean(&ia),
        action_t: welch_t_test(&va, &ia)?,
        valid_angle_range: mean(&vr),
        invalid_angle_range: mean(&ir),
        angle_t: welch_t_test(&vr, &ir)?,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConservationReport<T> {
    pub chain_id: String,
    pub hamiltonian_se: T,
    pub angular_momentum_se: T,
    pub energy_like_se: T,
}

/// Standard errors of three stepwise series: the native Hamiltonian, the
/// planar angular momentum `L = q₀p₁ - q₁p₀`, and `E = ½‖p‖² + ½‖q‖²`, the
/// last two in the leading 2-D reduction.
pub fn conservation_report<T: Real>(model: &PcaModel<T>, chain: &EmbeddedChain<T>) -> Result<ConservationReport<T>> {
    if chain.len() < 3 {
        return Err(Error::TooFewSteps { chain_id: chain.id().to_string(), needed: 3, found: chain.len() });
    }
    let steps = reduced_steps(model, chain, 2)?;
    let points = phase_points(&steps);
    let half = T::lit(0.5);
    let angular: Vec<T> = points.iter().map(|(q, p)| q[0] * p[1] - q[1] * p[0]).collect();
    let energy_like: Vec<T> = points
        .iter()
        .map(|(q, p)| half * norm_sq(p) + half * norm_sq(q))
        .collect();
    Ok(ConservationReport {
        chain_id: chain.id().to_string(),
        hamiltonian_se: standard_error(&energy_profile(chain).hamiltonian),
        angular_momentum_se: standard_error(&angular),
        energy_like_se: standard_error(&energy_like),
    })
}
