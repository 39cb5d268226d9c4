use crate::error::{Error, Result};
use crate::scalar::Real;

/// Least-squares slope of `ln runtime` against `ln size`: the `a` in `runtime ∝ size^a`.
pub fn complexity_fit<T: Real>(sizes: &[T], runtimes: &[T]) -> Result<T> {
    if sizes.len() != runtimes.len() {
        return Err(Error::InvalidArgument("sizes and runtimes differ in length".into()));
    }
    if sizes.iter().chain(runtimes).any(|&v| v <= T::zero() || !v.is_finite()) {
        return Err(Error::InvalidArgument("sizes and runtimes must be positive".into()));
    }
    let mut distinct: Vec<T> = sizes.to_vec();
    distinct.sort_by(|a, b| a.partial_cmp(b).unwrap());
    distinct.dedup();
    if distinct.len() < 3 {
        return Err(Error::InvalidArgument("complexity fit needs at least 3 distinct sizes".into()));
    }
    let x: Vec<T> = sizes.iter().map(|s| s.ln()).collect();
    let y: Vec<T> = runtimes.iter().map(|r| r.ln()).collect();
    let n = T::from_usize_lossy(x.len());
    let mx = x.iter().copied().sum::<T>() / n;
    let my = y.iter().copied().sum::<T>() / n;
    let sxy = x.iter().zip(&y).map(|(&a, &b)| (a - mx) * (b - my)).sum::<T>();
    let sxx = x.iter().map(|&a| (a - mx).powi(2)).sum::<T>();
    Ok(sxy / sxx)
}
