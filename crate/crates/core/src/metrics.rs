//! Error measures between density profiles.
//!
//! The density measure eta is the mean absolute error per particle; the
//! kinetic measure eta_t is the absolute error integral relative to the
//! total kinetic energy. Both integrate with the trapezoid rule on the
//! common grid of the two profiles, so the profiles must be sampled on
//! identical grids with decayed tails; anything else is a configuration
//! error, not a number.

use crate::error::{Error, Result};
use crate::profile::{trapezoid, DensityProfile, Method, Observable};
use crate::real::Real;

/// Summary of one method-vs-reference comparison at fixed N.
#[derive(Clone, Debug)]
pub struct ErrorReport<T> {
    pub n: usize,
    /// Mean absolute density error per particle.
    pub eta: T,
    /// Integrated absolute kinetic-energy-density error over the total
    /// kinetic energy of the reference.
    pub eta_t: T,
    /// Integral of the first density profile.
    pub norm_a: T,
    /// Integral of the second density profile.
    pub norm_b: T,
    pub method_a: Method,
    pub method_b: Method,
}

fn check_comparable<T: Real>(
    a: &DensityProfile<T>,
    b: &DensityProfile<T>,
    observable: Observable,
) -> Result<()> {
    if a.observable != observable || b.observable != observable {
        return Err(Error::config(format!(
            "profiles hold {} and {}, expected {}",
            a.observable.token(),
            b.observable.token(),
            observable.token()
        )));
    }
    if a.n != b.n {
        return Err(Error::config(format!(
            "particle numbers differ: {} vs {}",
            a.n, b.n
        )));
    }
    if a.grid.len() != b.grid.len()
        || a.grid.iter().zip(b.grid.iter()).any(|(x, y)| x != y)
    {
        return Err(Error::config(
            "profiles sampled on different grids; resample onto a common grid first".to_string(),
        ));
    }
    for p in [a, b] {
        let peak = p.values.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
        if peak == T::zero() {
            continue;
        }
        let edge = p.values[0].abs().max(p.values[p.values.len() - 1].abs());
        if edge > T::rf(1e-10) * peak {
            return Err(Error::config(format!(
                "{} profile has not decayed at the grid edge ({:.1e} of its peak): widen the grid",
                p.method.token(),
                (edge / peak).lower()
            )));
        }
    }
    Ok(())
}

/// Mean absolute density error per particle between two profiles on one
/// grid: `(1/N) integral |n_a - n_b|`.
pub fn eta<T: Real>(a: &DensityProfile<T>, b: &DensityProfile<T>) -> Result<T> {
    check_comparable(a, b, Observable::Number)?;
    let diff: Vec<T> = a
        .values
        .iter()
        .zip(b.values.iter())
        .map(|(&x, &y)| (x - y).abs())
        .collect();
    Ok(trapezoid(&a.grid, &diff) / T::rf(a.n as f64))
}

/// Integrated absolute kinetic-energy-density error, relative to the total
/// kinetic energy of the reference profile `b_exact`:
/// `integral |t_a - t_ex| / |integral t_ex|`.
pub fn eta_t<T: Real>(a: &DensityProfile<T>, b_exact: &DensityProfile<T>) -> Result<T> {
    check_comparable(a, b_exact, Observable::Kinetic)?;
    let total = b_exact.integrate();
    if total == T::zero() {
        return Err(Error::config(
            "reference kinetic energy integrates to zero".to_string(),
        ));
    }
    let diff: Vec<T> = a
        .values
        .iter()
        .zip(b_exact.values.iter())
        .map(|(&x, &y)| (x - y).abs())
        .collect();
    Ok(trapezoid(&a.grid, &diff) / total.abs())
}

/// Bundle the density and kinetic comparisons of one method (profiles `a`)
/// against a reference (profiles `b`) into a report.
pub fn error_report<T: Real>(
    n_a: &DensityProfile<T>,
    n_b: &DensityProfile<T>,
    t_a: &DensityProfile<T>,
    t_b: &DensityProfile<T>,
) -> Result<ErrorReport<T>> {
    if n_a.method != t_a.method || n_b.method != t_b.method {
        return Err(Error::config(
            "density and kinetic profiles of one side must come from one method".to_string(),
        ));
    }
    Ok(ErrorReport {
        n: n_a.n,
        eta: eta(n_a, n_b)?,
        eta_t: eta_t(t_a, t_b)?,
        norm_a: n_a.integrate(),
        norm_b: n_b.integrate(),
        method_a: n_a.method,
        method_b: n_b.method,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian_profile(
        scale: f64,
        width: f64,
        m: usize,
        observable: Observable,
        method: Method,
    ) -> DensityProfile<f64> {
        let grid: Vec<f64> = (0..m).map(|i| -10.0 + 20.0 * i as f64 / (m as f64 - 1.0)).collect();
        let values = grid
            .iter()
            .map(|&x| scale * (-x * x / (width * width)).exp())
            .collect();
        DensityProfile {
            grid,
            values,
            observable,
            method,
            n: 2,
            hbar: 1.0,
            potential: "test".to_string(),
        }
    }

    #[test]
    fn eta_vanishes_on_identical_profiles_and_obeys_the_triangle_inequality() {
        let a = gaussian_profile(1.0, 1.5, 801, Observable::Number, Method::Uniform);
        let b = gaussian_profile(0.9, 1.4, 801, Observable::Number, Method::Tf);
        let c = gaussian_profile(1.1, 1.7, 801, Observable::Number, Method::Exact);
        assert_eq!(eta(&a, &a).unwrap(), 0.0);
        let ab = eta(&a, &b).unwrap();
        let bc = eta(&b, &c).unwrap();
        let ac = eta(&a, &c).unwrap();
        assert!(ac <= ab + bc + 1e-15);
        assert!(ab > 0.0);
        // Symmetry.
        assert!((eta(&b, &a).unwrap() - ab).abs() < 1e-16);
    }

    #[test]
    fn eta_is_stable_under_grid_refinement() {
        let coarse_a = gaussian_profile(1.0, 1.5, 1001, Observable::Number, Method::Uniform);
        let coarse_b = gaussian_profile(0.9, 1.4, 1001, Observable::Number, Method::Exact);
        let fine_a = gaussian_profile(1.0, 1.5, 2001, Observable::Number, Method::Uniform);
        let fine_b = gaussian_profile(0.9, 1.4, 2001, Observable::Number, Method::Exact);
        let coarse = eta(&coarse_a, &coarse_b).unwrap();
        let fine = eta(&fine_a, &fine_b).unwrap();
        assert!(
            (coarse - fine).abs() < 0.01 * fine,
            "coarse {coarse:.6e} vs fine {fine:.6e}"
        );
    }

    #[test]
    fn eta_t_is_relative_to_the_reference_energy() {
        let a = gaussian_profile(1.0, 1.5, 801, Observable::Kinetic, Method::Uniform);
        let b = gaussian_profile(0.8, 1.5, 801, Observable::Kinetic, Method::Exact);
        // Same shape: |t_a - t_ex| = 0.25 |t_ex| pointwise, so eta_t = 0.25.
        let got = eta_t(&a, &b).unwrap();
        assert!((got - 0.25).abs() < 1e-12, "eta_t {got}");
    }

    #[test]
    fn mismatched_inputs_are_rejected() {
        let n = gaussian_profile(1.0, 1.5, 801, Observable::Number, Method::Uniform);
        let t = gaussian_profile(1.0, 1.5, 801, Observable::Kinetic, Method::Uniform);
        assert!(eta(&n, &t).is_err());
        assert!(eta_t(&n, &t).is_err());
        let other_grid = gaussian_profile(1.0, 1.5, 802, Observable::Number, Method::Tf);
        assert!(eta(&n, &other_grid).is_err());
        let mut other_n = gaussian_profile(1.0, 1.5, 801, Observable::Number, Method::Tf);
        other_n.n = 3;
        assert!(eta(&n, &other_n).is_err());
    }

    #[test]
    fn undecayed_tails_are_rejected() {
        // Width 8 leaves e^(-100/64) ~ 0.2 of the peak at the edges.
        let wide = gaussian_profile(1.0, 8.0, 801, Observable::Number, Method::Uniform);
        let narrow = gaussian_profile(1.0, 1.5, 801, Observable::Number, Method::Exact);
        let err = eta(&wide, &narrow).unwrap_err();
        assert!(matches!(err, Error::Config(_)));
        // An identically zero profile is fine (a limit outside its region).
        let mut zero = gaussian_profile(0.0, 1.5, 801, Observable::Number, Method::EvanescentLimit);
        zero.values.iter_mut().for_each(|v| *v = 0.0);
        assert!(eta(&narrow, &zero).is_ok());
    }

    #[test]
    fn reports_carry_norms_and_methods() {
        let n_a = gaussian_profile(1.0, 1.5, 801, Observable::Number, Method::Uniform);
        let n_b = gaussian_profile(0.9, 1.4, 801, Observable::Number, Method::Exact);
        let t_a = gaussian_profile(0.5, 1.5, 801, Observable::Kinetic, Method::Uniform);
        let t_b = gaussian_profile(0.6, 1.4, 801, Observable::Kinetic, Method::Exact);
        let rep = error_report(&n_a, &n_b, &t_a, &t_b).unwrap();
        assert_eq!(rep.method_a, Method::Uniform);
        assert_eq!(rep.method_b, Method::Exact);
        assert_eq!(rep.n, 2);
        assert!((rep.norm_a - n_a.integrate()).abs() < 1e-16);
        assert!(rep.eta > 0.0 && rep.eta_t > 0.0);
        let mismatched = error_report(&n_a, &n_b, &t_b, &t_b);
        assert!(mismatched.is_err());
    }
}
