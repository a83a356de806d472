//! Semiclassical quantization: bound levels from the action condition
//! S_total(E) = pi hbar (lambda + 1/2), the well capacity, and the Fermi
//! level data for an N-particle system.

use crate::classical::{period_frequency, total_action};
use crate::error::{Error, Result};
use crate::potential::Potential;
use crate::real::Real;

/// Levels and Fermi-point data for N noninteracting fermions.
#[derive(Clone, Debug)]
pub struct SpectrumResult<T> {
    /// Quantized levels j = 0..N-1, ascending.
    pub levels: Vec<T>,
    /// Fermi level: the energy whose total action is N pi hbar, sitting
    /// between the highest occupied and lowest empty level.
    pub e_f: T,
    /// Classical angular frequency at the Fermi level.
    pub omega_f: T,
    /// Classical period at the Fermi level.
    pub t_f: T,
    pub n: usize,
    pub hbar: T,
}

/// How much a well can hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WellCapacity {
    /// Number of quantized levels below the well edge.
    pub bound_levels: usize,
    /// Largest N whose Fermi level still fits below the edge. One less
    /// than `bound_levels` when the last level sits in the top half
    /// action-wise, as for a Morse well near dissociation.
    pub max_particles: usize,
}

/// Energy of the level with quantum number `lambda` (integer for actual
/// levels; the half-integer `N - 1/2` yields the Fermi level).
///
/// Bisects S_total(E) = pi hbar (lambda + 1/2) over [v_min + eps,
/// edge - eps] with eps = 1e-9 of the well depth, to an energy window of
/// 1e-11 max(1, |E|). The lower bracket endpoint is taken as below-target
/// without evaluation: S vanishes at the well bottom, and the action at
/// v_min + eps is far below pi hbar / 2 for any hbar this library is used
/// with.
pub fn wkb_level<T: Real>(pot: &Potential<T>, lambda: T, hbar: T) -> Result<T> {
    if lambda < -T::rf(0.49) {
        return Err(Error::config(format!("quantum number {} below 0", lambda.lower())));
    }
    let (_, vmin) = pot.well_minimum();
    let edge = pot.edge_energy();
    let scale = edge - vmin;
    if scale <= T::zero() {
        return Err(Error::config("well edge at or below the minimum".to_string()));
    }
    let eps = T::rf(1e-9) * scale;
    let target = T::PI() * hbar * (lambda + T::rf(0.5));
    let mut lo = vmin + eps;
    let mut hi = edge - eps;
    let s_max = total_action(pot, hi)?;
    if s_max <= target {
        let cap = capacity_from_action(s_max, hbar);
        return Err(Error::Capacity {
            requested: (lambda + T::rf(0.5)).ceil().lower() as usize,
            available: cap.bound_levels,
        });
    }
    for _ in 0..200 {
        let mid = (lo + hi) / T::rf(2.0);
        if total_action(pot, mid)? < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= T::rf(1e-11) * hi.abs().max(T::one()) {
            break;
        }
    }
    Ok((lo + hi) / T::rf(2.0))
}

fn capacity_from_action<T: Real>(s_max: T, hbar: T) -> WellCapacity {
    let units = (s_max / (T::PI() * hbar)).lower();
    let bound_levels = if units > 0.5 { (units - 0.5).floor() as usize + 1 } else { 0 };
    let max_particles = if units > 1.0 { units.ceil() as usize - 1 } else { 0 };
    WellCapacity { bound_levels, max_particles }
}

/// Count how many levels the well binds and how many particles it can hold.
pub fn capacity<T: Real>(pot: &Potential<T>, hbar: T) -> Result<WellCapacity> {
    let (_, vmin) = pot.well_minimum();
    let edge = pot.edge_energy();
    let eps = T::rf(1e-9) * (edge - vmin);
    let s_max = total_action(pot, edge - eps)?;
    Ok(capacity_from_action(s_max, hbar))
}

/// Quantize the lowest N levels and the Fermi data for N particles.
pub fn spectrum<T: Real>(pot: &Potential<T>, n: usize, hbar: T) -> Result<SpectrumResult<T>> {
    if n == 0 {
        return Err(Error::config("particle number must be at least 1".to_string()));
    }
    let cap = capacity(pot, hbar)?;
    if n > cap.max_particles {
        return Err(Error::Capacity { requested: n, available: cap.max_particles });
    }
    let mut levels = Vec::with_capacity(n);
    for j in 0..n {
        levels.push(wkb_level(pot, T::rf(j as f64), hbar)?);
    }
    let e_f = wkb_level(pot, T::rf(n as f64) - T::rf(0.5), hbar)?;
    let (t_f, omega_f) = period_frequency(pot, e_f)?;
    Ok(SpectrumResult { levels, e_f, omega_f, t_f, n, hbar })
}
