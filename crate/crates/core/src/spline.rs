//! Natural cubic spline interpolation for tabulated potentials.

use crate::error::{Error, Result};
use crate::real::Real;

/// Natural cubic spline through strictly increasing abscissae. Outside the
/// data range the spline continues linearly with the boundary slope, so a
/// tabulated well never acquires spurious curvature beyond its last sample.
#[derive(Clone, Debug)]
pub struct CubicSpline<T> {
    x: Vec<T>,
    y: Vec<T>,
    /// Second derivatives at the nodes (natural: zero at both ends).
    m: Vec<T>,
}

impl<T: Real> CubicSpline<T> {
    pub fn new(x: Vec<T>, y: Vec<T>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::config("spline: x and y lengths differ"));
        }
        if x.len() < 3 {
            return Err(Error::config("spline: need at least 3 points"));
        }
        if x.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::config("spline: abscissae must increase strictly"));
        }
        let n = x.len();
        // Tridiagonal system for the interior second derivatives.
        let mut diag = vec![T::zero(); n];
        let mut rhs = vec![T::zero(); n];
        let mut upper = vec![T::zero(); n];
        let six = T::rf(6.0);
        let two = T::rf(2.0);
        for i in 1..n - 1 {
            let h0 = x[i] - x[i - 1];
            let h1 = x[i + 1] - x[i];
            diag[i] = two * (h0 + h1);
            upper[i] = h1;
            rhs[i] = six * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        }
        // Thomas sweep over rows 1..n-2; natural ends pin m[0] = m[n-1] = 0.
        let mut m = vec![T::zero(); n];
        for i in 2..n - 1 {
            let lower = x[i] - x[i - 1];
            let w = lower / diag[i - 1];
            diag[i] = diag[i] - w * upper[i - 1];
            rhs[i] = rhs[i] - w * rhs[i - 1];
        }
        for i in (1..n - 1).rev() {
            let carried = if i == n - 2 {
                T::zero()
            } else {
                upper[i] * m[i + 1]
            };
            m[i] = (rhs[i] - carried) / diag[i];
        }
        Ok(CubicSpline { x, y, m })
    }

    /// Index of the panel containing `x` (clamped to the end panels).
    fn panel(&self, x: T) -> usize {
        let n = self.x.len();
        match self.x.binary_search_by(|p| p.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(n - 2),
            Err(0) => 0,
            Err(i) => (i - 1).min(n - 2),
        }
    }

    pub fn eval(&self, xq: T) -> T {
        let n = self.x.len();
        let six = T::rf(6.0);
        if xq <= self.x[0] {
            return self.y[0] + self.boundary_slope(true) * (xq - self.x[0]);
        }
        if xq >= self.x[n - 1] {
            return self.y[n - 1] + self.boundary_slope(false) * (xq - self.x[n - 1]);
        }
        let i = self.panel(xq);
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - xq) / h;
        let b = (xq - self.x[i]) / h;
        a * self.y[i]
            + b * self.y[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / six
    }

    pub fn deriv(&self, xq: T) -> T {
        let n = self.x.len();
        let six = T::rf(6.0);
        let three = T::rf(3.0);
        if xq <= self.x[0] {
            return self.boundary_slope(true);
        }
        if xq >= self.x[n - 1] {
            return self.boundary_slope(false);
        }
        let i = self.panel(xq);
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - xq) / h;
        let b = (xq - self.x[i]) / h;
        (self.y[i + 1] - self.y[i]) / h
            + ((three * b * b - T::one()) * self.m[i + 1] - (three * a * a - T::one()) * self.m[i])
                * h
                / six
    }

    fn boundary_slope(&self, left: bool) -> T {
        let n = self.x.len();
        let six = T::rf(6.0);
        if left {
            let h = self.x[1] - self.x[0];
            (self.y[1] - self.y[0]) / h - h * self.m[1] / six
        } else {
            let h = self.x[n - 1] - self.x[n - 2];
            (self.y[n - 1] - self.y[n - 2]) / h + h * self.m[n - 2] / six
        }
    }

    pub fn x_min(&self) -> T {
        self.x[0]
    }

    pub fn x_max(&self) -> T {
        *self.x.last().unwrap()
    }
}
