//! Scalar root finding: bracket scanning, bisection, Brent.

use crate::error::{Error, Result};
use crate::real::Real;

/// Subdivide `[a, b]` into `n` equal panels and return every sign-change
/// bracket `(lo, hi)`, in order. Exact zeros at panel edges are captured by
/// the adjacent panel (sign treats 0 as non-negative).
pub fn bracket_scan<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, n: usize) -> Vec<(T, T)> {
    let mut out = Vec::new();
    if n == 0 || !(a < b) {
        return out;
    }
    let width = (b - a) / T::rf(n as f64);
    let mut x_prev = a;
    let mut f_prev = f(a);
    for i in 1..=n {
        let x = if i == n { b } else { a + width * T::rf(i as f64) };
        let fx = f(x);
        if (f_prev < T::zero()) != (fx < T::zero()) {
            out.push((x_prev, x));
        }
        x_prev = x;
        f_prev = fx;
    }
    out
}

/// Plain bisection on a bracketing interval; returns the midpoint of the
/// final bracket once it is narrower than `tol_x`.
pub fn bisect<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, tol_x: T) -> Result<T> {
    let mut lo = a;
    let mut hi = b;
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == T::zero() {
        return Ok(lo);
    }
    if fhi == T::zero() {
        return Ok(hi);
    }
    if (flo < T::zero()) == (fhi < T::zero()) {
        return Err(Error::config("bisect: endpoints do not bracket a root"));
    }
    for _ in 0..200 {
        let mid = (lo + hi) * T::rf(0.5);
        if (hi - lo).abs() <= tol_x || mid <= lo.min(hi) || mid >= lo.max(hi) {
            return Ok(mid);
        }
        let fm = f(mid);
        if fm == T::zero() {
            return Ok(mid);
        }
        if (fm < T::zero()) == (flo < T::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Err(Error::no_convergence("bisect: iteration budget exhausted"))
}

/// Brent's method: inverse quadratic interpolation with bisection fallback.
/// Converges to `tol_x` in absolute position.
pub fn brent<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, tol_x: T) -> Result<T> {
    let two = T::rf(2.0);
    let three = T::rf(3.0);
    let half = T::rf(0.5);
    let mut xa = a;
    let mut xb = b;
    let mut fa = f(xa);
    let mut fb = f(xb);
    if fa == T::zero() {
        return Ok(xa);
    }
    if fb == T::zero() {
        return Ok(xb);
    }
    if (fa < T::zero()) == (fb < T::zero()) {
        return Err(Error::config("brent: endpoints do not bracket a root"));
    }
    let mut xc = xa;
    let mut fc = fa;
    let mut d = xb - xa;
    let mut e = d;
    for _ in 0..200 {
        if fb.abs() > fc.abs() {
            // Keep b the best estimate, c on the other side.
            xa = xb;
            xb = xc;
            xc = xa;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = T::rf(2.0) * T::epsilon() * xb.abs() + half * tol_x;
        let xm = half * (xc - xb);
        if xm.abs() <= tol1 || fb == T::zero() {
            return Ok(xb);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // Attempt interpolation: secant if two points, inverse quadratic
            // if three distinct ones.
            let s = fb / fa;
            let (mut p, mut q) = if xa == xc {
                (two * xm * s, T::one() - s)
            } else {
                let q0 = fa / fc;
                let r = fb / fc;
                (
                    s * (two * xm * q0 * (q0 - r) - (xb - xa) * (r - T::one())),
                    (q0 - T::one()) * (r - T::one()) * (s - T::one()),
                )
            };
            if p > T::zero() {
                q = -q;
            }
            p = p.abs();
            let accept = two * p < (three * xm * q - (tol1 * q).abs()).min((e * q).abs());
            if accept {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        xa = xb;
        fa = fb;
        xb = xb + if d.abs() > tol1 {
            d
        } else if xm > T::zero() {
            tol1
        } else {
            -tol1
        };
        fb = f(xb);
        if (fb < T::zero()) == (fc < T::zero()) {
            xc = xa;
            fc = fa;
            d = xb - xa;
            e = d;
        }
    }
    Err(Error::no_convergence("brent: iteration budget exhausted"))
}
