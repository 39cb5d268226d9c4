//! Small dense vector helpers over plain slices.

#![allow(clippy::needless_range_loop)]

use crate::scalar::Real;

pub fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn norm_sq<T: Real>(a: &[T]) -> T {
    dot(a, a)
}

pub fn norm<T: Real>(a: &[T]) -> T {
    norm_sq(a).sqrt()
}

pub fn sub<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, &y)| x - y).collect()
}

pub fn scale<T: Real>(a: &[T], s: T) -> Vec<T> {
    a.iter().map(|&x| x * s).collect()
}

pub fn cross3<T: Real>(a: &[T], b: &[T]) -> [T; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Magnitude of the wedge product `|a ∧ b|`, equal to `|a × b|` in three dimensions.
///
/// Computed as `|a| · |b - proj_a b|`, which stays accurate for nearly parallel inputs.
pub fn wedge_norm<T: Real>(a: &[T], b: &[T]) -> T {
    let aa = norm_sq(a);
    if aa == T::zero() {
        return T::zero();
    }
    let k = dot(a, b) / aa;
    let perp = a.iter().zip(b).map(|(&x, &y)| (y - k * x).powi(2)).sum::<T>();
    aa.sqrt() * perp.sqrt()
}

/// Angle in `[0, π]` between `a` and `b`, or `None` when either is zero.
pub fn angle_between<T: Real>(a: &[T], b: &[T]) -> Option<T> {
    if norm_sq(a) == T::zero() || norm_sq(b) == T::zero() {
        return None;
    }
    Some(wedge_norm(a, b).atan2(dot(a, b)))
}

/// Cosine of the angle between `a` and `b`, or `None` when either is zero.
pub fn cosine<T: Real>(a: &[T], b: &[T]) -> Option<T> {
    let na = norm(a);
    let nb = norm(b);
    if na == T::zero() || nb == T::zero() {
        return None;
    }
    Some((dot(a, b) / (na * nb)).max(-T::one()).min(T::one()))
}

pub fn mean<T: Real>(xs: &[T]) -> T {
    xs.iter().copied().sum::<T>() / T::from_usize_lossy(xs.len())
}

/// Population variance (divides by n).
pub fn pop_variance<T: Real>(xs: &[T]) -> T {
    let m = mean(xs);
    xs.iter().map(|&x| (x - m).powi(2)).sum::<T>() / T::from_usize_lossy(xs.len())
}

/// Unbiased sample variance (divides by n - 1).
pub fn sample_variance<T: Real>(xs: &[T]) -> T {
    let m = mean(xs);
    xs.iter().map(|&x| (x - m).powi(2)).sum::<T>() / T::from_usize_lossy(xs.len() - 1)
}

/// Standard error of the mean, `s / sqrt(n)`; zero for fewer than two values.
pub fn standard_error<T: Real>(xs: &[T]) -> T {
    if xs.len() < 2 {
        return T::zero();
    }
    (sample_variance(xs) / T::from_usize_lossy(xs.len())).sqrt()
}

/// LU factorization with partial pivoting of a square matrix, in place.
/// Returns the row-swap parity and pivot rows, or `None` when a pivot vanishes
/// relative to `tol * max|entry|`.
fn lu_in_place<T: Real>(a: &mut [Vec<T>], tol: T) -> Option<(bool, Vec<usize>)> {
    let n = a.len();
    let scale = a
        .iter()
        .flatten()
        .fold(T::zero(), |acc, &x| acc.max(x.abs()));
    if scale == T::zero() {
        return None;
    }
    let mut odd = false;
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap())
            .unwrap();
        if a[piv][col].abs() <= tol * scale {
            return None;
        }
        if piv != col {
            a.swap(piv, col);
            perm.swap(piv, col);
            odd = !odd;
        }
        for row in col + 1..n {
            let f = a[row][col] / a[col][col];
            a[row][col] = f;
            for k in col + 1..n {
                let v = a[col][k];
                a[row][k] = a[row][k] - f * v;
            }
        }
    }
    Some((odd, perm))
}

/// Determinant of a square matrix; `None` if numerically singular.
pub fn determinant<T: Real>(m: &[Vec<T>]) -> Option<T> {
    let mut a = m.to_vec();
    let (odd, _) = lu_in_place(&mut a, T::epsilon() * T::lit(64.0))?;
    let det = (0..a.len()).fold(T::one(), |acc, i| acc * a[i][i]);
    Some(if odd { -det } else { det })
}

/// Inverse of a square matrix; `None` if numerically singular.
pub fn inverse<T: Real>(m: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = m.len();
    let mut lu = m.to_vec();
    let (_, perm) = lu_in_place(&mut lu, T::epsilon() * T::lit(64.0))?;
    let mut inv = vec![vec![T::zero(); n]; n];
    for col in 0..n {
        // solve L U x = P e_col
        let mut x: Vec<T> = perm.iter().map(|&p| if p == col { T::one() } else { T::zero() }).collect();
        for i in 0..n {
            for k in 0..i {
                x[i] = x[i] - lu[i][k] * x[k];
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                x[i] = x[i] - lu[i][k] * x[k];
            }
            x[i] = x[i] / lu[i][i];
        }
        for (row, v) in x.into_iter().enumerate() {
            inv[row][col] = v;
        }
    }
    Some(inv)
}

pub fn mat_mul<T: Real>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}
