//! Sampled analytic curves with known curvature and torsion.

use crate::scalar::Real;

/// `n` points evenly spaced around a full circle of radius `r` in the plane `z = z0`
/// (no repeated endpoint). Curvature `1/r`, torsion 0.
pub fn circle<T: Real>(r: T, n: usize, z0: T) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| {
            let t = T::TAU() * T::from_usize_lossy(i) / T::from_usize_lossy(n);
            vec![r * t.cos(), r * t.sin(), z0]
        })
        .collect()
}

/// `(r cos t, r sin t, c t)` for `n` samples of `t` spanning `[0, turns · 2π]`.
/// Curvature `r/(r² + c²)`, torsion `c/(r² + c²)`.
pub fn helix<T: Real>(r: T, c: T, n: usize, turns: T) -> Vec<Vec<T>> {
    let span = T::TAU() * turns;
    (0..n)
        .map(|i| {
            let t = span * T::from_usize_lossy(i) / T::from_usize_lossy(n - 1);
            vec![r * t.cos(), r * t.sin(), c * t]
        })
        .collect()
}

/// `n` points `origin + i · step`.
pub fn line<T: Real>(origin: &[T], step: &[T], n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| {
            let s = T::from_usize_lossy(i);
            origin.iter().zip(step).map(|(&o, &d)| o + s * d).collect()
        })
        .collect()
}
