//! Eigenpairs of a symmetric tridiagonal matrix with constant off-diagonal,
//! the shape produced by a three-point Laplacian plus a diagonal potential.
//!
//! Eigenvalues come from Sturm-sequence bisection, eigenvectors from shifted
//! inverse iteration with a deterministic start, and both are finished with a
//! Rayleigh-quotient polish so the reported energy is limited by the matrix,
//! not by the bisection width.

use crate::error::{Error, Result};
use crate::real::Real;

/// Number of pivots of the LDL^T factorization of (A - lambda) that are
/// negative, which equals the number of eigenvalues below `lambda`.
fn count_below<T: Real>(diag: &[T], off: T, lambda: T) -> usize {
    let b2 = off * off;
    let tiny = T::rf(1e-300);
    // Seeding the pivot at infinity makes the b^2/d correction vanish for
    // the first row, which has no predecessor.
    let mut d = T::infinity();
    let mut count = 0;
    for &a in diag {
        d = a - lambda - b2 / d;
        if d.abs() < tiny {
            // A vanishing pivot means lambda sits on an eigenvalue of a
            // leading principal minor; push it infinitesimally negative so
            // the count stays well defined.
            d = -tiny;
        }
        if d < T::zero() {
            count += 1;
        }
    }
    count
}

/// Bisect the Gershgorin interval down to the k-th eigenvalue (0-based).
fn bisect_eigenvalue<T: Real>(diag: &[T], off: T, k: usize) -> T {
    let two_b = T::rf(2.0) * off.abs();
    let mut lo = diag.iter().fold(T::infinity(), |m, &a| m.min(a)) - two_b;
    let mut hi = diag.iter().fold(T::neg_infinity(), |m, &a| m.max(a)) + two_b;
    // The Gershgorin span is dominated by the kinetic scale hbar^2/dx^2, so
    // drive the width down to a fixed multiple of the eigenvalue itself, not
    // of the span: inverse iteration only needs the shift to fall closer to
    // level k than to its neighbours.
    for _ in 0..200 {
        let mid = (lo + hi) / T::rf(2.0);
        if count_below(diag, off, mid) <= k {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= T::rf(1e-13) * hi.abs().max(lo.abs()).max(T::one()) {
            break;
        }
    }
    (lo + hi) / T::rf(2.0)
}

/// Solve (A - sigma) y = rhs in place by the Thomas algorithm.
///
/// The system is intentionally near-singular (sigma sits next to an
/// eigenvalue); the growth this causes lies along the eigenvector, which is
/// exactly what inverse iteration wants.
fn shifted_solve<T: Real>(diag: &[T], off: T, sigma: T, y: &mut [T], scratch: &mut [T]) {
    let m = diag.len();
    let tiny = T::rf(1e-300);
    let mut piv = diag[0] - sigma;
    if piv.abs() < tiny {
        piv = tiny;
    }
    scratch[0] = off / piv;
    y[0] = y[0] / piv;
    for i in 1..m {
        let mut d = diag[i] - sigma - off * scratch[i - 1];
        if d.abs() < tiny {
            d = tiny;
        }
        scratch[i] = off / d;
        y[i] = (y[i] - off * y[i - 1]) / d;
    }
    for i in (0..m - 1).rev() {
        y[i] = y[i] - scratch[i] * y[i + 1];
    }
}

fn norm2<T: Real>(y: &[T]) -> T {
    y.iter().map(|&v| v * v).sum::<T>().sqrt()
}

/// y <- y / |y|, returning the norm before scaling.
fn normalize<T: Real>(y: &mut [T]) -> T {
    let n = norm2(y);
    if n > T::zero() {
        for v in y.iter_mut() {
            *v = *v / n;
        }
    }
    n
}

/// Remove the projections of `y` onto each row of `basis`.
fn orthogonalize<T: Real>(y: &mut [T], basis: &[Vec<T>]) {
    for q in basis {
        let dot: T = q.iter().zip(y.iter()).map(|(&a, &b)| a * b).sum();
        for (v, &qv) in y.iter_mut().zip(q.iter()) {
            *v = *v - dot * qv;
        }
    }
}

/// Rayleigh quotient y^T A y for unit y.
fn rayleigh<T: Real>(diag: &[T], off: T, y: &[T]) -> T {
    let m = diag.len();
    let mut acc = T::zero();
    for i in 0..m {
        let mut row = diag[i] * y[i];
        if i > 0 {
            row += off * y[i - 1];
        }
        if i + 1 < m {
            row += off * y[i + 1];
        }
        acc += y[i] * row;
    }
    acc
}

/// Max-norm of (A - lambda) y for unit y.
fn residual<T: Real>(diag: &[T], off: T, lambda: T, y: &[T]) -> T {
    let m = diag.len();
    let mut worst = T::zero();
    for i in 0..m {
        let mut row = (diag[i] - lambda) * y[i];
        if i > 0 {
            row += off * y[i - 1];
        }
        if i + 1 < m {
            row += off * y[i + 1];
        }
        worst = worst.max(row.abs());
    }
    worst
}

/// The `nstates` lowest eigenpairs, eigenvectors unit in the 2-norm and
/// mutually orthogonal, each eigenvalue polished to the Rayleigh quotient of
/// its vector.
pub(crate) fn lowest_eigenpairs<T: Real>(
    diag: &[T],
    off: T,
    nstates: usize,
) -> Result<Vec<(T, Vec<T>)>> {
    let m = diag.len();
    if nstates == 0 || nstates > m {
        return Err(Error::config(format!(
            "requested {nstates} eigenpairs of a {m} point grid"
        )));
    }
    let scale = diag.iter().fold(T::zero(), |s, &a| s.max(a.abs())) + T::rf(2.0) * off.abs();
    let mut pairs: Vec<(T, Vec<T>)> = Vec::with_capacity(nstates);
    let mut scratch = vec![T::zero(); m];
    let mut vectors: Vec<Vec<T>> = Vec::with_capacity(nstates);
    for k in 0..nstates {
        let est = bisect_eigenvalue(diag, off, k);
        // Shift sits just off the eigenvalue so the Thomas pivots stay
        // representable while the solve still amplifies mode k strongly.
        let sigma = est * (T::one() + T::rf(1e-13)) + T::rf(1e-300);
        // Box mode k+1 is a deterministic start with O(1) overlap on the
        // k-th bound state.
        let mut y: Vec<T> = (0..m)
            .map(|i| {
                let arg = T::rf((k + 1) as f64) * T::PI() * T::rf((i + 1) as f64)
                    / T::rf((m + 1) as f64);
                arg.sin()
            })
            .collect();
        normalize(&mut y);
        for _ in 0..4 {
            shifted_solve(diag, off, sigma, &mut y, &mut scratch);
            orthogonalize(&mut y, &vectors);
            if normalize(&mut y) == T::zero() {
                return Err(Error::no_convergence(format!(
                    "inverse iteration start collapsed for level {k}"
                )));
            }
        }
        let lambda = rayleigh(diag, off, &y);
        let res = residual(diag, off, lambda, &y);
        if res > T::rf(1e-9) * scale {
            return Err(Error::no_convergence(format!(
                "eigenpair {k} stalled: residual {:e} against scale {:e}",
                res.lower(),
                scale.lower()
            )));
        }
        vectors.push(y.clone());
        pairs.push((lambda, y));
    }
    for k in 1..nstates {
        if pairs[k].0 < pairs[k - 1].0 {
            return Err(Error::no_convergence(format!(
                "eigenvalues out of order at level {k}"
            )));
        }
    }
    Ok(pairs)
}
