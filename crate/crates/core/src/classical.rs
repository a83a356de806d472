//! Classical mechanics of a particle in a well: turning points, abbreviated
//! actions, the period, and the phase variables entering the semiclassical
//! density expressions.
//!
//! Action-type integrals all run in the substituted variable u = sqrt(|x -
//! x_tp|), which absorbs the square-root branch point at the turning point:
//! near the turning point |E - v| ~ |v'| u^2, so the transformed integrands
//! are smooth and the adaptive quadrature converges at full order.

use crate::error::{Error, Result};
use crate::potential::Potential;
use crate::quad::integrate;
use crate::real::Real;
use crate::rootfind::{bracket_scan, brent};

/// The two classical turning points of a well at a given energy.
#[derive(Clone, Copy, Debug)]
pub struct TurningPoints<T> {
    pub x_minus: T,
    pub x_plus: T,
    pub energy: T,
}

/// Which turning point anchors a one-sided quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Where a point sits relative to the turning points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Allowed,
    ForbiddenLeft,
    ForbiddenRight,
}

/// Everything the density expressions need to know about one point.
#[derive(Clone, Copy, Debug)]
pub struct PhaseData<T> {
    pub x: T,
    pub region: Region,
    /// Turning point that anchors `s_abs`, `z` and `alpha`: the left one
    /// for `x <= x_m`, the right one otherwise.
    pub nearest_tp: Side,
    /// |p| = sqrt(2 |E_F - v|).
    pub p_abs: T,
    /// |S|, the unsigned action from the nearest turning point to `x`.
    pub s_abs: T,
    /// Signed Airy coordinate: (3S/2hbar)^(2/3), negative in the forbidden
    /// regions. Grows linearly near the turning point.
    pub z: T,
    /// omega_F times the classical time from the nearest turning point. In
    /// the forbidden regions the traversal time is imaginary and this field
    /// holds its magnitude theta, with `alpha_imaginary` set.
    pub alpha: T,
    pub alpha_imaginary: bool,
    pub omega_f: T,
    pub e_f: T,
    /// v' at the nearest turning point (negative at the left one).
    pub tp_slope: T,
}

/// Locate the two turning points v(x) = E inside the search window.
///
/// Scans 512 panels for sign changes of v - E, then polishes each root.
/// Errors if the well is not a plain two-turning-point well at this energy,
/// or if a turning point is nearly critical (|v'| too small for the
/// square-root structure the rest of the library assumes).
pub fn find_turning_points<T: Real>(pot: &Potential<T>, e: T) -> Result<TurningPoints<T>> {
    let (lo, hi) = pot.window();
    let (_, vmin) = pot.well_minimum();
    let edge = pot.edge_energy();
    if e <= vmin || e >= edge {
        return Err(Error::config(format!(
            "energy {} outside the well (minimum {}, edge {})",
            e.lower(),
            vmin.lower(),
            edge.lower()
        )));
    }
    let f = |x: T| pot.v(x) - e;
    let brackets = bracket_scan(&f, lo, hi, 512);
    if brackets.len() != 2 {
        return Err(Error::config(format!(
            "expected a two-turning-point well, found {} crossings of E = {}",
            brackets.len(),
            e.lower()
        )));
    }
    let span = hi - lo;
    let tol_x = T::rf(1e-14) * span;
    let x_minus = brent(&f, brackets[0].0, brackets[0].1, tol_x)?;
    let x_plus = brent(&f, brackets[1].0, brackets[1].1, tol_x)?;
    let escale = (edge - vmin).max(T::rf(1e-300));
    for (x, want_negative) in [(x_minus, true), (x_plus, false)] {
        let slope = pot.v_prime(x);
        if slope.abs() < T::rf(1e-8) * escale / span {
            return Err(Error::domain(format!(
                "turning point at {} is nearly critical (v' = {})",
                x.lower(),
                slope.lower()
            )));
        }
        if (slope < T::zero()) != want_negative {
            return Err(Error::config(format!(
                "turning point at {} has the wrong orientation for a single well",
                x.lower()
            )));
        }
        if (pot.v(x) - e).abs() > T::rf(1e-12) * escale {
            return Err(Error::no_convergence(format!(
                "turning point residual {} at {}",
                (pot.v(x) - e).lower().abs(),
                x.lower()
            )));
        }
    }
    Ok(TurningPoints { x_minus, x_plus, energy: e })
}

fn anchor_of<T: Real>(tps: &TurningPoints<T>, side: Side) -> T {
    match side {
        Side::Left => tps.x_minus,
        Side::Right => tps.x_plus,
    }
}

/// Is the straight path from the side's turning point to x classically
/// allowed? Errors if the path would cross the opposite turning point.
fn path_is_allowed<T: Real>(tps: &TurningPoints<T>, side: Side, x: T) -> Result<bool> {
    match side {
        Side::Left if x < tps.x_minus => Ok(false),
        Side::Left if x <= tps.x_plus => Ok(true),
        Side::Right if x > tps.x_plus => Ok(false),
        Side::Right if x >= tps.x_minus => Ok(true),
        _ => Err(Error::config(
            "action path crosses the opposite turning point".to_string(),
        )),
    }
}

fn action_from<T: Real>(pot: &Potential<T>, tps: &TurningPoints<T>, side: Side, x: T) -> Result<T> {
    let anchor = anchor_of(tps, side);
    let allowed = path_is_allowed(tps, side, x)?;
    if x == anchor {
        return Ok(T::zero());
    }
    let dir = if x > anchor { T::one() } else { -T::one() };
    let dv = near_anchor_difference(pot, anchor);
    let two = T::rf(2.0);
    let f = |u: T| {
        let q = if allowed { dv(dir * u * u) } else { -dv(dir * u * u) };
        two * u * (two * q.max(T::zero())).sqrt()
    };
    let r = integrate(f, T::zero(), (x - anchor).abs().sqrt(), 1e-11, 1e-11)?;
    Ok(r.value)
}

/// The difference v(anchor) - v(anchor + delta), computed so that it stays
/// an exact multiple of delta as delta crosses float resolution.
///
/// Two rounding problems live at a polished turning point: the anchor's
/// residual (~1e-13) would flip the sign of E - v arbitrarily close to it,
/// so the difference is referenced to v(anchor) rather than E; and below
/// |delta| ~ 1e-8 the subtraction itself degenerates into a float
/// staircase, so the slope takes over there. Both replacements sit far
/// below the quadrature tolerance of the integrals built on this.
fn near_anchor_difference<T: Real>(pot: &Potential<T>, anchor: T) -> impl Fn(T) -> T + '_ {
    let v_anchor = pot.v(anchor);
    let slope = pot.v_prime(anchor);
    let cut = T::rf(1e-8) * (T::one() + anchor.abs());
    move |delta: T| {
        if delta.abs() < cut {
            -slope * delta
        } else {
            v_anchor - pot.v(anchor + delta)
        }
    }
}

/// Unsigned action |S| = integral of |p| from the chosen turning point to x.
///
/// Accurate to ~1e-10 * max(1, |S|). The path from the turning point to x
/// must stay on one side of the well: reaching past the opposite turning
/// point is rejected.
pub fn action<T: Real>(pot: &Potential<T>, e: T, side: Side, x: T) -> Result<T> {
    let tps = find_turning_points(pot, e)?;
    action_from(pot, &tps, side, x)
}

/// Full action integral between the turning points at energy E.
pub fn total_action<T: Real>(pot: &Potential<T>, e: T) -> Result<T> {
    let tps = find_turning_points(pot, e)?;
    action_from(pot, &tps, Side::Left, tps.x_plus)
}

/// Classical traversal time from the side's turning point to x; in the
/// forbidden region, the magnitude of the imaginary traversal time.
fn time_from<T: Real>(pot: &Potential<T>, tps: &TurningPoints<T>, side: Side, x: T) -> Result<T> {
    let anchor = anchor_of(tps, side);
    let allowed = path_is_allowed(tps, side, x)?;
    if x == anchor {
        return Ok(T::zero());
    }
    let dir = if x > anchor { T::one() } else { -T::one() };
    let dv = near_anchor_difference(pot, anchor);
    let two = T::rf(2.0);
    let f = |u: T| {
        let q = if allowed { dv(dir * u * u) } else { -dv(dir * u * u) };
        // The clamp only matters at u = 0, which the quadrature nodes never
        // hit; the transformed integrand tends to sqrt(2/|v'|) there.
        two * u / (two * q.max(T::zero())).sqrt().max(T::rf(1e-300))
    };
    let r = integrate(f, T::zero(), (x - anchor).abs().sqrt(), 1e-11, 1e-11)?;
    Ok(r.value)
}

/// Period T of the classical orbit at energy E and the angular frequency
/// omega = 2 pi / T.
pub fn period_frequency<T: Real>(pot: &Potential<T>, e: T) -> Result<(T, T)> {
    let tps = find_turning_points(pot, e)?;
    let mid = (tps.x_minus + tps.x_plus) / T::rf(2.0);
    let tau = time_from(pot, &tps, Side::Left, mid)? + time_from(pot, &tps, Side::Right, mid)?;
    let t = T::rf(2.0) * tau;
    Ok((t, T::rf(2.0) * T::PI() / t))
}

/// Assemble the phase variables at one point for a Fermi level `e_f`.
///
/// `omega_f` is the classical frequency at `e_f` and `x_m` the phase
/// midpoint, both computed once per system and passed in. Errors if `x_m`
/// is not strictly inside the well.
pub fn phase_data<T: Real>(
    pot: &Potential<T>,
    e_f: T,
    omega_f: T,
    x_m: T,
    x: T,
    hbar: T,
) -> Result<PhaseData<T>> {
    let tps = find_turning_points(pot, e_f)?;
    if !(x_m > tps.x_minus && x_m < tps.x_plus) {
        return Err(Error::config(format!(
            "phase midpoint {} outside the well [{}, {}]",
            x_m.lower(),
            tps.x_minus.lower(),
            tps.x_plus.lower()
        )));
    }
    let region = if x < tps.x_minus {
        Region::ForbiddenLeft
    } else if x > tps.x_plus {
        Region::ForbiddenRight
    } else {
        Region::Allowed
    };
    let nearest_tp = match region {
        Region::ForbiddenLeft => Side::Left,
        Region::ForbiddenRight => Side::Right,
        Region::Allowed => {
            if x <= x_m {
                Side::Left
            } else {
                Side::Right
            }
        }
    };
    let p_abs = (T::rf(2.0) * (e_f - pot.v(x)).abs()).sqrt();
    let s_abs = action_from(pot, &tps, nearest_tp, x)?;
    let zmag = (T::rf(1.5) * s_abs / hbar).powf(T::rf(2.0) / T::rf(3.0));
    let z = if region == Region::Allowed { zmag } else { -zmag };
    let alpha = omega_f * time_from(pot, &tps, nearest_tp, x)?;
    if region == Region::Allowed && !(alpha >= T::zero() && alpha < T::PI()) {
        return Err(Error::domain(format!(
            "allowed-region phase alpha = {} fell outside [0, pi) at x = {}",
            alpha.lower(),
            x.lower()
        )));
    }
    Ok(PhaseData {
        x,
        region,
        nearest_tp,
        p_abs,
        s_abs,
        z,
        alpha,
        alpha_imaginary: region != Region::Allowed,
        omega_f,
        e_f,
        tp_slope: pot.v_prime(anchor_of(&tps, nearest_tp)),
    })
}

/// The phase midpoint x_m: where the action from the left turning point
/// reaches half the total, `S_left(x_m) = hbar N pi / 2`.
pub fn mid_phase_point<T: Real>(pot: &Potential<T>, e_f: T, n: usize, hbar: T) -> Result<T> {
    let tps = find_turning_points(pot, e_f)?;
    let target = hbar * T::rf(n as f64) * T::PI() / T::rf(2.0);
    let s_total = action_from(pot, &tps, Side::Left, tps.x_plus)?;
    if target <= T::zero() || target >= s_total {
        return Err(Error::config(format!(
            "phase midpoint target {} outside the well's total action {}",
            target.lower(),
            s_total.lower()
        )));
    }
    let g = |x: T| match action_from(pot, &tps, Side::Left, x) {
        Ok(s) => s - target,
        Err(_) => T::nan(),
    };
    let span = tps.x_plus - tps.x_minus;
    brent(&g, tps.x_minus, tps.x_plus, T::rf(1e-12) * span)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn harmonic() -> Potential<f64> {
        Potential::harmonic(1.0).unwrap()
    }

    fn morse() -> Potential<f64> {
        Potential::morse(15.0, 0.25).unwrap()
    }

    /// Closed form for the Morse total action at energy E < 0:
    /// S(E) = (pi sqrt(2 D) / a) (1 - sqrt(-E / D)).
    fn morse_action(e: f64) -> f64 {
        std::f64::consts::PI * (2.0 * 15.0f64).sqrt() / 0.25 * (1.0 - (-e / 15.0).sqrt())
    }

    #[test]
    fn harmonic_turning_points_are_analytic() {
        let pot = harmonic();
        for e in [0.5, 1.0, 2.0, 8.0] {
            let tps = find_turning_points(&pot, e).unwrap();
            let want = (2.0 * e).sqrt();
            assert!((tps.x_plus - want).abs() < 1e-10, "x_plus at E = {e}");
            assert!((tps.x_minus + want).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_degenerate_and_out_of_range_energies() {
        let pot = harmonic();
        assert!(find_turning_points(&pot, 0.0).is_err());
        assert!(find_turning_points(&pot, -1.0).is_err());
        assert!(find_turning_points(&pot, 1e6).is_err());
        // At E ~ 1e-16 the turning points sit where |v'| ~ 1.4e-8, below
        // the criticality guard for this window.
        assert!(matches!(
            find_turning_points(&pot, 1e-16),
            Err(crate::error::Error::Domain(_))
        ));
    }

    #[test]
    fn rejects_four_turning_points() {
        // A double well sampled onto a table: E in the gap has 4 crossings.
        let mut xs = Vec::new();
        let mut vs = Vec::new();
        for i in 0..=400 {
            let x = -2.0 + 4.0 * i as f64 / 400.0;
            xs.push(x);
            vs.push((x * x - 1.0) * (x * x - 1.0));
        }
        let pot = Potential::tabulated(xs, vs).unwrap();
        assert!(find_turning_points(&pot, 0.5).is_err());
    }

    #[test]
    fn morse_total_action_matches_closed_form() {
        let pot = morse();
        for e in [-14.0, -10.0, -5.0, -1.0] {
            let s = total_action(&pot, e).unwrap();
            let want = morse_action(e);
            assert!(
                (s - want).abs() < 1e-9 * want,
                "S({e}) = {s}, want {want}"
            );
        }
    }

    #[test]
    fn partial_actions_sum_to_the_total() {
        let pot = morse();
        let e = -8.0;
        let s_total = total_action(&pot, e).unwrap();
        let tps = find_turning_points(&pot, e).unwrap();
        for frac in [0.1, 0.35, 0.5, 0.82] {
            let x = tps.x_minus + frac * (tps.x_plus - tps.x_minus);
            let sl = action(&pot, e, Side::Left, x).unwrap();
            let sr = action(&pot, e, Side::Right, x).unwrap();
            assert!(
                (sl + sr - s_total).abs() < 1e-9 * s_total,
                "S_l + S_r vs S_total at frac {frac}: {:.2e}",
                (sl + sr - s_total).abs() / s_total
            );
        }
    }

    #[test]
    fn action_rejects_paths_through_the_well() {
        let pot = harmonic();
        let tps = find_turning_points(&pot, 2.0).unwrap();
        assert!(action(&pot, 2.0, Side::Left, tps.x_plus + 1.0).is_err());
        assert!(action(&pot, 2.0, Side::Right, tps.x_minus - 1.0).is_err());
        // One-sided forbidden reaches are fine.
        assert!(action(&pot, 2.0, Side::Left, tps.x_minus - 1.0).unwrap() > 0.0);
    }

    #[test]
    fn periods_match_closed_forms() {
        // Harmonic: T = 2 pi / sqrt(k) independent of E. Morse: from
        // differentiating the closed-form action, omega = a sqrt(-2E).
        let (t, om) = period_frequency(&harmonic(), 3.0).unwrap();
        assert!((t - 2.0 * std::f64::consts::PI).abs() < 1e-9);
        assert!((om - 1.0).abs() < 1e-10);
        for e in [-12.0, -5.0, -2.0] {
            let (_, om) = period_frequency(&morse(), e).unwrap();
            let want = 0.25 * (-2.0 * e).sqrt();
            assert!(
                (om - want).abs() < 1e-9 * want,
                "omega({e}) = {om}, want {want}"
            );
        }
    }

    #[test]
    fn harmonic_momentum_is_exact() {
        // With k = 1 and E_F = N, |p| = sqrt(2N - x^2) to rounding.
        let pot = harmonic();
        let n = 2;
        let e_f = 2.0;
        let (_, om) = period_frequency(&pot, e_f).unwrap();
        let x_m = mid_phase_point(&pot, e_f, n, 1.0).unwrap();
        for x in [-1.7, -0.4, 0.0, 1.1, 1.9] {
            let pd = phase_data(&pot, e_f, om, x_m, x, 1.0).unwrap();
            let want = (2.0 * e_f - x * x).sqrt();
            assert!((pd.p_abs - want).abs() < 1e-14, "p at {x}");
            assert_eq!(pd.region, Region::Allowed);
        }
    }

    #[test]
    fn phase_midpoint_is_central_for_symmetric_wells() {
        let pot = harmonic();
        for n in [1, 2, 5] {
            let e_f = n as f64;
            let x_m = mid_phase_point(&pot, e_f, n, 1.0).unwrap();
            assert!(x_m.abs() < 1e-9, "x_m for N = {n}: {x_m}");
            let s = action(&pot, e_f, Side::Left, x_m).unwrap();
            let target = n as f64 * std::f64::consts::PI / 2.0;
            assert!((s - target).abs() < 1e-10 * target.max(1.0));
        }
    }

    #[test]
    fn left_and_right_phases_meet_at_pi() {
        let pot = morse();
        let e_f = -12.386387212474169; // Fermi level for N = 2
        let (_, om) = period_frequency(&pot, e_f).unwrap();
        let x_m = mid_phase_point(&pot, e_f, 2, 1.0).unwrap();
        // Evaluate both one-sided phases at the same interior point by
        // steering the nearest-turning-point choice with the x_m argument.
        for x in [x_m, x_m - 0.2, x_m + 0.3] {
            let left = phase_data(&pot, e_f, om, x + 0.5, x, 1.0).unwrap();
            let right = phase_data(&pot, e_f, om, x - 0.5, x, 1.0).unwrap();
            assert_eq!(left.nearest_tp, Side::Left);
            assert_eq!(right.nearest_tp, Side::Right);
            let total = left.alpha + right.alpha;
            assert!(
                (total - std::f64::consts::PI).abs() < 1e-8,
                "alpha_l + alpha_r = {total} at x = {x}"
            );
        }
    }

    #[test]
    fn airy_coordinate_grows_linearly_off_the_turning_point() {
        let pot = morse();
        let e_f = -12.386387212474169;
        let (_, om) = period_frequency(&pot, e_f).unwrap();
        let x_m = mid_phase_point(&pot, e_f, 2, 1.0).unwrap();
        let tps = find_turning_points(&pot, e_f).unwrap();
        let kappa = (2.0 * pot.v_prime(tps.x_plus).abs()).cbrt();
        for dx in [1e-3, -1e-3, 5e-3] {
            let pd = phase_data(&pot, e_f, om, x_m, tps.x_plus + dx, 1.0).unwrap();
            // At the right turning point the allowed (z > 0) side is inward,
            // so z tracks -kappa (x - x_plus).
            let want = -kappa * dx;
            assert!(
                (pd.z - want).abs() < 0.01 * want.abs(),
                "z at dx = {dx}: {} vs {want}",
                pd.z
            );
            assert_eq!(pd.nearest_tp, Side::Right);
            assert_eq!(pd.alpha_imaginary, dx > 0.0);
        }
        // The slope recorded for the window model is v' at that turning point.
        let pd = phase_data(&pot, e_f, om, x_m, tps.x_plus + 1e-3, 1.0).unwrap();
        assert!((pd.tp_slope - pot.v_prime(tps.x_plus)).abs() < 1e-12);
    }
}
