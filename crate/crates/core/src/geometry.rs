//! Discrete differential geometry of chain trajectories.
//!
//! Steps are taken at unit parameter spacing: `γ'_i = p_i = q_{i+1} - q_i`
//! and `γ''_i = p_{i+1} - p_i`. Zero-length momenta give zero angle and
//! curvature instead of an error.

use serde::{Deserialize, Serialize};

use crate::energy::momentum_sequence;
use crate::error::{Error, Result};
use crate::linalg::{angle_between, cross3, dot, norm, sub, wedge_norm};
use crate::scalar::{eps, Real};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryProfile<T> {
    pub chain_id: String,
    pub length: T,
    pub smoothness: T,
    pub magnitudes: Vec<T>,
    pub angles: Vec<T>,
    pub curvatures: Vec<T>,
    /// Present only for three-dimensional trajectories.
    pub torsions: Vec<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrenetFrame<T> {
    pub t_vec: [T; 3],
    pub n_vec: [T; 3],
    pub b_vec: [T; 3],
    pub kappa: T,
    pub tau: T,
}

impl<T: Real> FrenetFrame<T> {
    /// Largest deviation from orthonormality and from `B = T × N`.
    pub fn orthonormality_residual(&self) -> T {
        let (t, n, b) = (&self.t_vec, &self.n_vec, &self.b_vec);
        let txn = cross3(t, n);
        [
            dot(t, n).abs(),
            dot(t, b).abs(),
            dot(n, b).abs(),
            (norm(t) - T::one()).abs(),
            (norm(n) - T::one()).abs(),
            (norm(b) - T::one()).abs(),
            norm(&sub(&txn, b)),
        ]
        .into_iter()
        .fold(T::zero(), T::max)
    }
}

/// Frames that could be built, plus the indices where the frame was degenerate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrenetFrames<T> {
    pub frames: Vec<(usize, FrenetFrame<T>)>,
    pub degenerate: Vec<usize>,
}

pub fn step_magnitudes<T: Real>(points: &[Vec<T>]) -> Vec<T> {
    momentum_sequence(points).iter().map(|p| norm(p)).collect()
}

/// Angle in `[0, π]` between consecutive momenta.
pub fn turning_angles<T: Real>(points: &[Vec<T>]) -> Vec<T> {
    let p = momentum_sequence(points);
    p.windows(2)
        .map(|w| angle_between(&w[0], &w[1]).unwrap_or(T::zero()))
        .collect()
}

/// `κ_i = |γ'' ∧ γ'| / |γ'|³`, valid in any dimension. Turns smaller than
/// `1e-12` relative to `|γ'|²` count as straight.
pub fn discrete_curvature<T: Real>(points: &[Vec<T>]) -> Vec<T> {
    let p = momentum_sequence(points);
    p.windows(2)
        .map(|w| {
            let speed = norm(&w[0]);
            if speed < eps() {
                return T::zero();
            }
            let accel = sub(&w[1], &w[0]);
            let turn = wedge_norm(&w[0], &accel);
            // below this the turn is rounding noise of a straight segment
            if turn < eps::<T>() * speed * speed {
                return T::zero();
            }
            turn / speed.powi(3)
        })
        .collect()
}

/// `τ_i = ((p_i × p_{i+1}) · p_{i+2}) / ‖p_i × p_{i+1}‖²` for a 3-D trajectory.
///
/// With unit parameter spacing the numerator and denominator both scale as the
/// sixth power of the step, so the ratio already estimates continuous torsion.
pub fn discrete_torsion<T: Real>(points: &[Vec<T>]) -> Result<Vec<T>> {
    require_3d(points)?;
    let p = momentum_sequence(points);
    Ok(p.windows(3)
        .map(|w| {
            let c = cross3(&w[0], &w[1]);
            let c2 = dot(&c, &c);
            if c2.sqrt() < eps() {
                T::zero()
            } else {
                dot(&c, &w[2]) / c2
            }
        })
        .collect())
}

fn require_3d<T>(points: &[Vec<T>]) -> Result<()> {
    match points.iter().find(|p| p.len() != 3) {
        Some(p) => Err(Error::InvalidArgument(format!(
            "torsion and Frenet frames need a 3-D trajectory, got dimension {}",
            p.len()
        ))),
        None => Ok(()),
    }
}

/// Frenet frames at each step whose successor momentum exists.
///
/// `T_i = p_i/‖p_i‖`, `N_i` is the normalized part of `T_{i+1} - T_i`
/// orthogonal to `T_i`, `B_i = T_i × N_i`. The torsion attached to frame `i`
/// is `τ_i`, or the last available estimate for the final frame.
pub fn frenet_frames<T: Real>(points: &[Vec<T>]) -> Result<FrenetFrames<T>> {
    require_3d(points)?;
    let p = momentum_sequence(points);
    let kappa = discrete_curvature(points);
    let tau = discrete_torsion(points)?;
    let unit = |v: &[T]| {
        let n = norm(v);
        (n >= eps()).then(|| [v[0] / n, v[1] / n, v[2] / n])
    };

    let mut out = FrenetFrames { frames: Vec::new(), degenerate: Vec::new() };
    for i in 0..p.len().saturating_sub(1) {
        let frame = unit(&p[i]).zip(unit(&p[i + 1])).and_then(|(t, t_next)| {
            let dt = sub(&t_next, &t);
            let along = dot(&dt, &t);
            let raw: Vec<T> = dt.iter().zip(&t).map(|(&d, &x)| d - along * x).collect();
            let n_vec = unit(&raw)?;
            let b_vec = cross3(&t, &n_vec);
            let tau_i = tau.get(i).or_else(|| tau.last()).copied().unwrap_or(T::zero());
            Some(FrenetFrame { t_vec: t, n_vec, b_vec, kappa: kappa[i], tau: tau_i })
        });
        match frame {
            Some(f) => out.frames.push((i, f)),
            None => out.degenerate.push(i),
        }
    }
    Ok(out)
}

/// Pairs `(θ_i, κ_i · v_i · h)` with `h = 1`, for checking `dθ/dt = κ v`.
pub fn angle_rate_check<T: Real>(points: &[Vec<T>]) -> Vec<(T, T)> {
    let theta = turning_angles(points);
    let kappa = discrete_curvature(points);
    let v = step_magnitudes(points);
    theta
        .into_iter()
        .zip(kappa)
        .zip(v)
        .map(|((th, k), s)| (th, k * s))
        .collect()
}

pub fn trajectory_length<T: Real>(points: &[Vec<T>]) -> T {
    step_magnitudes(points).into_iter().sum()
}

/// `(1 + mean cos θ_i) / 2`; 1 when there is no turning to measure.
pub fn smoothness<T: Real>(points: &[Vec<T>]) -> T {
    let angles = turning_angles(points);
    if angles.is_empty() {
        return T::one();
    }
    let mean_cos = angles.iter().map(|a| a.cos()).sum::<T>() / T::from_usize_lossy(angles.len());
    ((T::one() + mean_cos) / T::lit(2.0)).max(T::zero()).min(T::one())
}

/// All descriptors for one trajectory. Torsion comes from `points3d` when
/// given, or from `points` if they are already three-dimensional.
pub fn geometry_profile<T: Real>(
    chain_id: &str,
    points: &[Vec<T>],
    points3d: Option<&[Vec<T>]>,
) -> Result<GeometryProfile<T>> {
    let magnitudes = step_magnitudes(points);
    let torsions = match points3d {
        Some(p3) => discrete_torsion(p3)?,
        None if points.first().is_some_and(|p| p.len() == 3) => discrete_torsion(points)?,
        None => Vec::new(),
    };
    Ok(GeometryProfile {
        chain_id: chain_id.to_string(),
        length: magnitudes.iter().copied().sum(),
        smoothness: smoothness(points),
        magnitudes,
        angles: turning_angles(points),
        curvatures: discrete_curvature(points),
        torsions,
    })
}
