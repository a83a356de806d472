//! Exact reference data from direct grid diagonalization.
//!
//! The solver discretizes `-(hbar^2/2) d^2/dx^2 + v(x)` with the three-point
//! Laplacian on a uniform grid, hard walls at the box edges, and extracts the
//! lowest eigenpairs of the resulting symmetric tridiagonal matrix. Wall
//! placement is checked after the fact: every requested orbital must have
//! decayed to below 1e-8 of its peak by the walls, so the box never leaks
//! into the answers at the accuracy this crate works to.
//!
//! The module is independent of the semiclassical machinery it is used to
//! validate. The one crossover is [`solve_box_auto`], which places walls and
//! picks the grid step from quantized estimates; that choice affects cost,
//! not the converged values.

mod eigen;

use crate::classical::{action, find_turning_points, Side};
use crate::error::{Error, Result};
use crate::potential::{Form, Potential};
use crate::profile::{DensityProfile, Method, Observable};
use crate::real::Real;
use crate::rootfind::brent;
use crate::quantize::wkb_level;

/// Converged orbitals of a boxed well on a uniform interior grid.
///
/// The grid excludes the walls (the orbitals vanish there by construction),
/// and orbitals are normalized so the trapezoid integral of `phi^2` over the
/// box is 1.
#[derive(Clone, Debug)]
pub struct BoundStateSet<T> {
    /// Interior grid points, uniformly spaced.
    pub grid: Vec<T>,
    /// `orbitals[j][i]` is `phi_j(grid[i])`, trapezoid-normalized.
    pub orbitals: Vec<Vec<T>>,
    /// Eigenvalues, ascending.
    pub energies: Vec<T>,
    /// Wall positions `(lo, hi)`.
    pub bounds: (T, T),
    /// Grid step.
    pub spacing: T,
    pub hbar: T,
    /// Label of the potential that was solved.
    pub potential: String,
}

/// Diagonalize the boxed well on `npoints` interior grid points.
///
/// Errors: `Config` for under-resolved input (`npoints < 500`), walls below
/// a requested energy, or more states than the grid supports;
/// `NonConvergence` when an orbital has not decayed at the walls (the box is
/// too small) or the eigensolver stalls.
pub fn solve_box<T: Real>(
    pot: &Potential<T>,
    bounds: (T, T),
    npoints: usize,
    nstates: usize,
    hbar: T,
) -> Result<BoundStateSet<T>> {
    let (lo, hi) = bounds;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::config(format!(
            "box [{}, {}] is not a finite interval",
            lo.lower(),
            hi.lower()
        )));
    }
    if npoints < 500 {
        return Err(Error::config(format!(
            "{npoints} grid points cannot resolve a well to tolerance; use at least 500"
        )));
    }
    if nstates == 0 {
        return Err(Error::config("at least one state must be requested".to_string()));
    }
    let delta = (hi - lo) / T::rf(npoints as f64 + 1.0);
    let grid: Vec<T> = (0..npoints).map(|i| lo + delta * T::rf(i as f64 + 1.0)).collect();
    let kin = hbar * hbar / (delta * delta);
    let diag: Vec<T> = grid.iter().map(|&x| kin + pot.v(x)).collect();
    let off = -kin / T::rf(2.0);
    let pairs = eigen::lowest_eigenpairs(&diag, off, nstates)?;

    let e_wall = pot.v(lo).min(pot.v(hi));
    for (k, (e, _)) in pairs.iter().enumerate() {
        if *e >= e_wall {
            return Err(Error::config(format!(
                "level {k} at {:.6e} sits above the lower wall value {:.6e}: the boxed well does not bind {nstates} states",
                e.lower(),
                e_wall.lower()
            )));
        }
    }

    let tail_limit = T::rf(1e-8);
    let scale = T::one() / delta.sqrt();
    let mut orbitals = Vec::with_capacity(nstates);
    let mut energies = Vec::with_capacity(nstates);
    for (k, (e, y)) in pairs.into_iter().enumerate() {
        let peak = y.iter().fold(T::zero(), |m, &v| m.max(v.abs()));
        let tail = y[0].abs().max(y[npoints - 1].abs());
        if tail > tail_limit * peak {
            return Err(Error::no_convergence(format!(
                "wall tail of level {k} is {:.1e} of its peak (limit 1e-8): enlarge the box",
                (tail / peak).lower()
            )));
        }
        // Deterministic sign: positive at the first point that carries
        // appreciable amplitude.
        let flip = y
            .iter()
            .find(|v| v.abs() > T::rf(1e-3) * peak)
            .map_or(false, |v| *v < T::zero());
        let phi: Vec<T> = y
            .into_iter()
            .map(|v| if flip { -v * scale } else { v * scale })
            .collect();
        orbitals.push(phi);
        energies.push(e);
    }

    Ok(BoundStateSet {
        grid,
        orbitals,
        energies,
        bounds,
        spacing: delta,
        hbar,
        potential: pot.label().to_string(),
    })
}

/// Walk outward from a turning point until the forbidden action reaches
/// `target`, then refine the crossing. Clamped to the potential's window.
fn wall_position<T: Real>(
    pot: &Potential<T>,
    e: T,
    side: Side,
    tp_x: T,
    span: T,
    target: T,
) -> Result<T> {
    let (wlo, whi) = pot.window();
    let (dir, edge) = match side {
        Side::Left => (-T::one(), wlo),
        Side::Right => (T::one(), whi),
    };
    let mut step = T::rf(0.25) * span;
    let mut prev = tp_x;
    for _ in 0..80 {
        let mut x = tp_x + dir * step;
        let clamped = (x - edge) * dir >= T::zero();
        if clamped {
            x = edge;
        }
        let s = action(pot, e, side, x)?;
        if s >= target {
            let f = |xx: T| action(pot, e, side, xx).map_or(T::infinity(), |v| v - target);
            return brent(f, prev, x, T::rf(1e-3) * span);
        }
        if clamped {
            // The window ends before the action target; the wall-tail check
            // in solve_box has the final word on whether this is far enough.
            return Ok(edge);
        }
        prev = x;
        step = step * T::rf(2.0);
    }
    Err(Error::no_convergence(
        "forbidden action never reached the wall target".to_string(),
    ))
}

/// Diagonalize with automatic box and grid-step selection.
///
/// Walls go where the one-sided forbidden action at the top requested level
/// reaches `20 hbar`, so even the slowest-decaying orbital is down by
/// `e^-20` there. The step targets an absolute eigenvalue error of
/// `1e-6 (E_top - v_min)` through the leading finite-difference error model
/// `dE = -delta^2 <p^4> / (24 hbar^2)`, with `<p^4>` bounded by its
/// classical maximum. If the wall-tail check still fails the box is widened,
/// at most four times.
pub fn solve_box_auto<T: Real>(
    pot: &Potential<T>,
    nstates: usize,
    hbar: T,
) -> Result<BoundStateSet<T>> {
    if nstates == 0 {
        return Err(Error::config("at least one state must be requested".to_string()));
    }
    let e_top = wkb_level(pot, T::rf(nstates as f64 - 1.0), hbar)?;
    let tp = find_turning_points(pot, e_top)?;
    let span = tp.x_plus - tp.x_minus;
    let target = T::rf(20.0) * hbar;
    let lo0 = wall_position(pot, e_top, Side::Left, tp.x_minus, span, target)?;
    let hi0 = wall_position(pot, e_top, Side::Right, tp.x_plus, span, target)?;
    let (_, vmin) = pot.well_minimum();
    let p2max = T::rf(2.0) * (e_top - vmin);
    let etol = T::rf(1e-6) * (e_top - vmin);
    let delta = T::rf(0.7) * hbar * (T::rf(24.0) * etol).sqrt() / p2max;

    let (wlo, whi) = pot.window();
    let mut last = Error::no_convergence("box sizing never ran".to_string());
    for attempt in 0..5u32 {
        let grow = T::rf(f64::from(1u32 << attempt));
        let lo = (tp.x_minus - grow * (tp.x_minus - lo0)).max(wlo);
        let hi = (tp.x_plus + grow * (hi0 - tp.x_plus)).min(whi);
        let width = hi - lo;
        let npoints = ((width / delta).lower().ceil() as usize).max(501) - 1;
        if npoints > 200_000 {
            return Err(Error::config(format!(
                "automatic grid for {nstates} states needs {npoints} points; solve a truncated box explicitly"
            )));
        }
        match solve_box(pot, (lo, hi), npoints, nstates, hbar) {
            Ok(states) => return Ok(states),
            Err(Error::NonConvergence(msg)) if msg.contains("wall tail") => {
                last = Error::NonConvergence(msg);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

fn check_occupation<T>(states: &BoundStateSet<T>, n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::config("particle number must be at least 1".to_string()));
    }
    if n > states.energies.len() {
        return Err(Error::config(format!(
            "{n} occupied orbitals requested but the solve holds {}",
            states.energies.len()
        )));
    }
    Ok(())
}

/// Particle density of the N lowest orbitals: `sum_j phi_j^2`.
///
/// The result integrates to N on its own grid; a deviation beyond 1e-8
/// relative is reported as `NonConvergence` since it can only come from a
/// broken solve.
pub fn exact_density<T: Real>(states: &BoundStateSet<T>, n: usize) -> Result<DensityProfile<T>> {
    check_occupation(states, n)?;
    let m = states.grid.len();
    let mut values = vec![T::zero(); m];
    for phi in states.orbitals.iter().take(n) {
        for (v, &p) in values.iter_mut().zip(phi.iter()) {
            *v += p * p;
        }
    }
    let profile = DensityProfile {
        grid: states.grid.clone(),
        values,
        observable: Observable::Number,
        method: Method::Exact,
        n,
        hbar: states.hbar,
        potential: states.potential.clone(),
    };
    let total = profile.integrate();
    let want = T::rf(n as f64);
    if (total - want).abs() > T::rf(1e-8) * want {
        return Err(Error::no_convergence(format!(
            "density of {n} orbitals integrates to {:.12e}",
            total.lower()
        )));
    }
    Ok(profile)
}

/// Kinetic energy density of the N lowest orbitals in the local-momentum
/// form `sum_j (E_j - v) phi_j^2`.
///
/// This gauge integrates to the total kinetic energy and is the one the
/// semiclassical expressions approximate; it goes negative in the
/// classically forbidden tails where `E_j < v`.
pub fn exact_ked<T: Real>(
    states: &BoundStateSet<T>,
    pot: &Potential<T>,
    n: usize,
) -> Result<DensityProfile<T>> {
    check_occupation(states, n)?;
    let m = states.grid.len();
    let mut values = vec![T::zero(); m];
    for (phi, &e) in states.orbitals.iter().zip(states.energies.iter()).take(n) {
        for ((v, &p), &x) in values.iter_mut().zip(phi.iter()).zip(states.grid.iter()) {
            *v += (e - pot.v(x)) * p * p;
        }
    }
    Ok(DensityProfile {
        grid: states.grid.clone(),
        values,
        observable: Observable::Kinetic,
        method: Method::Exact,
        n,
        hbar: states.hbar,
        potential: pot.label().to_string(),
    })
}

/// Wells whose spectrum has a closed form, for cross-checking the solvers.
#[derive(Clone, Copy, Debug)]
pub enum ReferenceFamily<T> {
    Morse { d: T, a: T },
    Harmonic { k: T },
}

impl<T: Real> ReferenceFamily<T> {
    /// The family of `pot`, when its spectrum has a closed form.
    pub fn of(pot: &Potential<T>) -> Option<Self> {
        match pot.form() {
            Form::Morse { d, a } => Some(ReferenceFamily::Morse { d: *d, a: *a }),
            Form::Harmonic { k } => Some(ReferenceFamily::Harmonic { k: *k }),
            _ => None,
        }
    }
}

/// The lowest `nlevels` eigenvalues in closed form.
///
/// Harmonic: `hbar sqrt(k) (j + 1/2)`. Morse: the terminating anharmonic
/// series `-D + hbar a sqrt(2D) (j + 1/2) - hbar^2 a^2 (j + 1/2)^2 / 2`,
/// valid while `j + 1/2 < sqrt(2D) / (hbar a)`; asking past that bound is a
/// capacity error.
pub fn analytic_levels<T: Real>(
    family: ReferenceFamily<T>,
    nlevels: usize,
    hbar: T,
) -> Result<Vec<T>> {
    let half = T::rf(0.5);
    match family {
        ReferenceFamily::Harmonic { k } => Ok((0..nlevels)
            .map(|j| hbar * k.sqrt() * (T::rf(j as f64) + half))
            .collect()),
        ReferenceFamily::Morse { d, a } => {
            let lam_max = (T::rf(2.0) * d).sqrt() / (hbar * a);
            let bound = if lam_max > half {
                (lam_max - half).lower().floor() as usize + 1
            } else {
                0
            };
            if nlevels > bound {
                return Err(Error::Capacity { requested: nlevels, available: bound });
            }
            Ok((0..nlevels)
                .map(|j| {
                    let lam = T::rf(j as f64) + half;
                    let harm = hbar * a * (T::rf(2.0) * d).sqrt() * lam;
                    -d + harm - hbar * hbar * a * a * lam * lam / T::rf(2.0)
                })
                .collect())
        }
    }
}
