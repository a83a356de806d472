//! Semiclassical particle and kinetic-energy densities.
//!
//! The central objects are the uniform expressions, built from Airy
//! functions of the phase coordinate z. They stay finite through the
//! turning points, reduce to the classical phase-space fill plus a Friedel
//! oscillation deep in the allowed region, and decay into the forbidden
//! regions. The classically forbidden branch is evaluated by analytic
//! continuation of the allowed-region formula: the momentum continues to
//! -i|p|, the time phase alpha to i theta, and the whole expression picks
//! up a single factor of -1; the result is real up to rounding, which
//! [`continuation_residual`] measures.
//!
//! Directly at a turning point the raw expression is a 0/0 balance between
//! the cosecant of the phase and the z^(-3/2) counterterm, so inside a
//! narrow window |z| < 0.02 the value is blended with the local linear-slope
//! model, which shares its first two derivatives there.

use num_complex::Complex;

use crate::classical::{action, find_turning_points, period_frequency, phase_data};
use crate::classical::{PhaseData, Region, Side};
use crate::error::{Error, Result};
use crate::potential::Potential;
use crate::quantize::wkb_level;
use crate::real::Real;
use crate::rootfind::brent;
use crate::special::{airy, bernoulli, tp_constants, AiryPair};

/// Half-width, in the Airy coordinate z, of the turning-point window inside
/// which the uniform expression is blended with the local model.
pub const Z_WINDOW: f64 = 0.02;

/// Below this |z| the blend weight of the raw expression is dropped
/// entirely; the raw formula divides by powers of z that are pure noise
/// this close to the turning point.
const Z_PURE_LOCAL: f64 = 1e-12;

/// Classical (Thomas-Fermi) particle density: `p / (pi hbar)` in the
/// allowed region, zero outside.
pub fn tf_density<T: Real>(ph: &PhaseData<T>, hbar: T) -> T {
    match ph.region {
        Region::Allowed => ph.p_abs / (hbar * T::PI()),
        _ => T::zero(),
    }
}

/// Classical kinetic-energy density: `p^3 / (6 pi hbar)` in the allowed
/// region, zero outside.
pub fn tf_ked<T: Real>(ph: &PhaseData<T>, hbar: T) -> T {
    match ph.region {
        Region::Allowed => ph.p_abs.powi(3) / (T::rf(6.0) * T::PI() * hbar),
        _ => T::zero(),
    }
}

/// The even and odd Airy combinations of the allowed region,
/// `g+- = sqrt(z) Ai(-z)^2 +- Ai'(-z)^2 / sqrt(z)`, for z > 0.
///
/// `pair` must hold the Airy values at argument -z.
pub fn g_plus_minus<T: Real>(z: T, pair: &AiryPair<T>) -> Result<(T, T)> {
    if !(z > T::zero()) {
        return Err(Error::domain(format!(
            "airy combinations need z > 0, got {}",
            z.lower()
        )));
    }
    if (pair.argument + z).abs() > T::rf(1e-12) * z.abs().max(T::one()) {
        return Err(Error::domain(format!(
            "airy pair evaluated at {} does not belong to z = {}",
            pair.argument.lower(),
            z.lower()
        )));
    }
    let sz = z.sqrt();
    let even = sz * pair.ai * pair.ai;
    let odd = pair.ai_prime * pair.ai_prime / sz;
    Ok((even + odd, even - odd))
}

/// Partial sum of the odd-cosecant defect series,
/// `csc(alpha) - 1/alpha = sum_k (-1)^(k-1) 2 (2^(2k-1) - 1) B_2k
/// alpha^(2k-1) / (2k)!`.
///
/// Valid for `0 < |alpha| < pi`; at the endpoints the series stops
/// converging. `terms` is capped at 30, the reach of the exact Bernoulli
/// table.
pub fn xi0_series<T: Real>(alpha: T, terms: usize) -> Result<T> {
    if !(alpha.abs() > T::zero() && alpha.abs() < T::PI()) {
        return Err(Error::domain(format!(
            "cosecant defect series needs 0 < |alpha| < pi, got {}",
            alpha.lower()
        )));
    }
    if terms == 0 || terms > 30 {
        return Err(Error::config(format!(
            "term count {terms} outside 1..=30"
        )));
    }
    let mut sum = T::zero();
    let mut sign = T::one();
    // alpha^(2k-1) and (2k)! carried incrementally.
    let mut alpha_pow = alpha;
    let alpha2 = alpha * alpha;
    let mut factorial = T::rf(2.0);
    let mut pow2 = T::rf(2.0); // 2^(2k-1)
    for k in 1..=terms {
        if k > 1 {
            let two_k = T::rf(2.0 * k as f64);
            factorial *= (two_k - T::one()) * two_k;
            alpha_pow *= alpha2;
            pow2 *= T::rf(4.0);
        }
        let b2k: T = bernoulli(2 * k)?;
        sum += sign * T::rf(2.0) * (pow2 - T::one()) * b2k * alpha_pow / factorial;
        sign = -sign;
    }
    Ok(sum)
}

/// Per-point inputs of the uniform expressions: the phase data and the Airy
/// values at -z, evaluated once and shared between density and kinetic
/// energy density.
#[derive(Clone, Debug)]
pub struct UniformInputs<T> {
    pub phase: PhaseData<T>,
    pub hbar: T,
    pub airy: AiryPair<T>,
}

impl<T: Real> UniformInputs<T> {
    pub fn new(phase: PhaseData<T>, hbar: T) -> Result<Self> {
        let pair = airy(-phase.z)?;
        Ok(UniformInputs { phase, hbar, airy: pair })
    }
}

/// The allowed-region uniform density, raw (no turning-point window).
fn raw_allowed_density<T: Real>(inp: &UniformInputs<T>) -> T {
    let ph = &inp.phase;
    let z = ph.z;
    let sz = z.sqrt();
    let ai = inp.airy.ai;
    let aip = inp.airy.ai_prime;
    let csc = T::one() / ph.alpha.sin();
    let corr = inp.hbar * ph.omega_f * csc / (ph.p_abs * ph.p_abs)
        - T::one() / (T::rf(2.0) * z * sz);
    (ph.p_abs / inp.hbar) * (sz * ai * ai + aip * aip / sz + corr * ai * aip)
}

/// Analytic continuation of the allowed-region density and kinetic energy
/// density into a forbidden region: p -> -i|p|, alpha -> i theta, z < 0,
/// with the principal square root. The physical values are minus the real
/// parts; the imaginary parts are rounding residue.
fn continued_pair<T: Real>(inp: &UniformInputs<T>) -> (Complex<T>, Complex<T>) {
    let ph = &inp.phase;
    let ai = inp.airy.ai;
    let aip = inp.airy.ai_prime;
    let zc = Complex::new(ph.z, T::zero());
    let sqrt_zc = zc.sqrt();
    let z32 = zc * sqrt_zc;
    let pc = Complex::new(T::zero(), -ph.p_abs);
    let alpha_c = Complex::new(T::zero(), ph.alpha);
    let sin_ac = alpha_c.sin();
    let one = Complex::new(T::one(), T::zero());
    let corr = (one / sin_ac) * (inp.hbar * ph.omega_f) / (pc * pc)
        - one / (z32 * T::rf(2.0));
    let bracket = sqrt_zc * (ai * ai) + (one / sqrt_zc) * (aip * aip) + corr * (ai * aip);
    let n_c = pc * bracket / inp.hbar;
    let t_c = pc * pc * n_c / T::rf(6.0)
        + (pc / sin_ac) * (ph.omega_f / T::rf(3.0)) * (ai * aip);
    (n_c, t_c)
}

/// The uniform density expression with no turning-point window: the
/// allowed-region form on one side, its analytic continuation on the other.
/// Catastrophic cancellation sets in as `z -> 0`; [`uniform_density`]
/// handles that window.
pub fn raw_density<T: Real>(inp: &UniformInputs<T>) -> T {
    match inp.phase.region {
        Region::Allowed => raw_allowed_density(inp),
        _ => -continued_pair(inp).0.re,
    }
}

/// The matching kinetic-energy expression, reusing the raw density value
/// `n_raw` for the same inputs. Same caveat near the turning points.
pub fn raw_ked<T: Real>(inp: &UniformInputs<T>, n_raw: T) -> T {
    let ph = &inp.phase;
    let ai_prod = inp.airy.ai * inp.airy.ai_prime;
    let p2_6 = ph.p_abs * ph.p_abs / T::rf(6.0);
    let third = ph.omega_f / T::rf(3.0);
    match ph.region {
        Region::Allowed => p2_6 * n_raw + ph.p_abs * third * ai_prod / ph.alpha.sin(),
        _ => -p2_6 * n_raw + ph.p_abs * third * ai_prod / ph.alpha.sinh(),
    }
}

/// Local linear-slope model at the nearest turning point, in the Airy
/// argument u = -z: density `kappa (Ai'^2 - u Ai^2)` and the matching
/// kinetic term, with `kappa = (2|v'| / hbar^2)^(1/3)`. This is what the
/// turning-point window blends toward as the raw expressions lose
/// precision.
pub fn local_pair<T: Real>(inp: &UniformInputs<T>) -> (T, T) {
    let u = -inp.phase.z;
    let vp = inp.phase.tp_slope.abs();
    let ai = inp.airy.ai;
    let aip = inp.airy.ai_prime;
    let kappa = (T::rf(2.0) * vp / (inp.hbar * inp.hbar)).powf(T::one() / T::rf(3.0));
    let n_loc = kappa * (aip * aip - u * ai * ai);
    let third = vp / T::rf(3.0);
    let t_loc = -(third * u / kappa) * n_loc + third * ai * aip;
    (n_loc, t_loc)
}

/// The uniform semiclassical particle density at one point.
///
/// Finite everywhere, including the turning points, where it approaches
/// `c0 hbar^(-2/3) |v'|^(1/3)`.
pub fn uniform_density<T: Real>(inp: &UniformInputs<T>) -> Result<T> {
    let w = inp.phase.z.abs();
    let window = T::rf(Z_WINDOW);
    if w < window {
        let (n_loc, _) = local_pair(inp);
        if w <= T::rf(Z_PURE_LOCAL) {
            return Ok(n_loc);
        }
        let f = w / window;
        Ok((T::one() - f) * n_loc + f * raw_density(inp))
    } else {
        Ok(raw_density(inp))
    }
}

/// The uniform semiclassical kinetic-energy density at one point.
///
/// `n_sc` is the value [`uniform_density`] produced for the same inputs;
/// outside the turning-point window the kinetic expression reuses it
/// directly. At a turning point the value approaches `-d0 |v'|`: the
/// kinetic energy density dips negative there.
pub fn uniform_ked<T: Real>(inp: &UniformInputs<T>, n_sc: T) -> Result<T> {
    let w = inp.phase.z.abs();
    let window = T::rf(Z_WINDOW);
    if w < window {
        let (_, t_loc) = local_pair(inp);
        if w <= T::rf(Z_PURE_LOCAL) {
            return Ok(t_loc);
        }
        // The blend must pair the raw kinetic term with the raw density,
        // not with the already blended n_sc.
        let n_raw = raw_density(inp);
        let f = w / window;
        Ok((T::one() - f) * t_loc + f * raw_ked(inp, n_raw))
    } else {
        Ok(raw_ked(inp, n_sc))
    }
}

/// Relative size of the imaginary residue the analytic continuation leaves
/// behind, maximized over the density and kinetic-energy expressions. Zero
/// in the allowed region, rounding-level in the forbidden ones.
pub fn continuation_residual<T: Real>(inp: &UniformInputs<T>) -> Result<T> {
    if inp.phase.region == Region::Allowed {
        return Ok(T::zero());
    }
    let (n_c, t_c) = continued_pair(inp);
    let rel = |c: Complex<T>| {
        if c.im == T::zero() {
            T::zero()
        } else {
            c.im.abs() / c.re.abs().max(T::rf(1e-300))
        }
    };
    Ok(rel(n_c).max(rel(t_c)))
}

/// Interior limit of the uniform density: the classical term plus the
/// Friedel oscillation `-omega cos(2S/hbar) / (2 pi p sin alpha)`.
pub fn allowed_limit_density<T: Real>(ph: &PhaseData<T>, hbar: T) -> Result<T> {
    if ph.region != Region::Allowed {
        return Err(Error::domain(
            "interior limit evaluated outside the allowed region".to_string(),
        ));
    }
    let osc = ph.omega_f * (T::rf(2.0) * ph.s_abs / hbar).cos()
        / (T::rf(2.0) * T::PI() * ph.p_abs * ph.alpha.sin());
    Ok(ph.p_abs / (hbar * T::PI()) - osc)
}

/// Deep-forbidden limit of the uniform density:
/// `[|p|/(3|S|) + omega/(|p| sinh theta)] e^(-2|S|/hbar) / (4 pi)`.
pub fn evanescent_limit_density<T: Real>(ph: &PhaseData<T>, hbar: T) -> Result<T> {
    if ph.region == Region::Allowed {
        return Err(Error::domain(
            "evanescent limit evaluated inside the allowed region".to_string(),
        ));
    }
    let decay = (-T::rf(2.0) * ph.s_abs / hbar).exp();
    let bracket = ph.p_abs / (T::rf(3.0) * ph.s_abs)
        + ph.omega_f / (ph.p_abs * ph.alpha.sinh());
    Ok(bracket * decay / (T::rf(4.0) * T::PI()))
}

/// Deep-forbidden limit of the uniform kinetic-energy density:
/// `[|p|^3/(3|S|) + 3 omega |p| / sinh theta] e^(-2|S|/hbar) / (24 pi)`.
pub fn evanescent_limit_ked<T: Real>(ph: &PhaseData<T>, hbar: T) -> Result<T> {
    if ph.region == Region::Allowed {
        return Err(Error::domain(
            "evanescent limit evaluated inside the allowed region".to_string(),
        ));
    }
    let decay = (-T::rf(2.0) * ph.s_abs / hbar).exp();
    let bracket = ph.p_abs.powi(3) / (T::rf(3.0) * ph.s_abs)
        + T::rf(3.0) * ph.omega_f * ph.p_abs / ph.alpha.sinh();
    Ok(bracket * decay / (T::rf(24.0) * T::PI()))
}

/// Density exactly at a turning point with local slope magnitude
/// `vprime_abs`: `c0 hbar^(-2/3) |v'|^(1/3)`.
pub fn turning_point_density<T: Real>(vprime_abs: T, hbar: T) -> Result<T> {
    if !(vprime_abs > T::zero()) {
        return Err(Error::domain("turning-point slope must be positive".to_string()));
    }
    let (c0, _) = tp_constants::<T>();
    Ok(c0 * hbar.powf(-T::rf(2.0) / T::rf(3.0)) * vprime_abs.powf(T::one() / T::rf(3.0)))
}

/// Kinetic-energy density exactly at a turning point: `-d0 |v'|`,
/// independent of hbar.
pub fn turning_point_ked<T: Real>(vprime_abs: T) -> Result<T> {
    if !(vprime_abs > T::zero()) {
        return Err(Error::domain("turning-point slope must be positive".to_string()));
    }
    let (_, d0) = tp_constants::<T>();
    Ok(-d0 * vprime_abs)
}

/// Turning-point-regularized WKB orbital for level j, sampled on `grid`:
/// `phi_j = sqrt(2 omega_j / p) |z|^(1/4) Ai(-z)`, with the phase variables
/// anchored at the turning point nearest each grid point. The half anchored
/// at the right turning point carries the relative sign (-1)^j that makes
/// the two interior representations agree (their phases add to the
/// quantized total).
///
/// Normalized to 1 up to semiclassical corrections, with exactly j interior
/// nodes.
pub fn langer_orbital<T: Real>(
    pot: &Potential<T>,
    j: usize,
    hbar: T,
    grid: &[T],
) -> Result<Vec<T>> {
    let e_j = wkb_level(pot, T::rf(j as f64), hbar)?;
    let (_, omega_j) = period_frequency(pot, e_j)?;
    let tps = find_turning_points(pot, e_j)?;
    let s_total = action(pot, e_j, Side::Left, tps.x_plus)?;
    let half = s_total / T::rf(2.0);
    let g = |x: T| match action(pot, e_j, Side::Left, x) {
        Ok(s) => s - half,
        Err(_) => T::nan(),
    };
    let span = tps.x_plus - tps.x_minus;
    let x_m = brent(&g, tps.x_minus, tps.x_plus, T::rf(1e-12) * span)?;
    let two_omega = T::rf(2.0) * omega_j;
    let parity = if j % 2 == 1 { -T::one() } else { T::one() };
    grid.iter()
        .map(|&x| {
            let ph = phase_data(pot, e_j, omega_j, x_m, x, hbar)?;
            let pair = airy(-ph.z)?;
            let sign = match ph.nearest_tp {
                Side::Left => T::one(),
                Side::Right => parity,
            };
            if ph.z.abs() < T::rf(1e-10) {
                // At the turning point |z|^(1/4)/sqrt(p) goes 0/0; its
                // limit is (kappa / (2|v'|))^(1/4).
                let vp = ph.tp_slope.abs();
                let kappa = (T::rf(2.0) * vp / (hbar * hbar)).powf(T::one() / T::rf(3.0));
                Ok(sign
                    * two_omega.sqrt()
                    * (kappa / (T::rf(2.0) * vp)).powf(T::rf(0.25))
                    * pair.ai)
            } else {
                Ok(sign * (two_omega / ph.p_abs).sqrt() * ph.z.abs().powf(T::rf(0.25)) * pair.ai)
            }
        })
        .collect()
}

/// The local (Thomas-Fermi form) kinetic-energy functional evaluated on a
/// density value: `pi^2 hbar^2 n^3 / 6`.
pub fn local_ked_functional<T: Real>(n: T, hbar: T) -> Result<T> {
    if n < T::zero() {
        return Err(Error::domain(format!(
            "densities are nonnegative, got {}",
            n.lower()
        )));
    }
    Ok(T::PI() * T::PI() * hbar * hbar * n.powi(3) / T::rf(6.0))
}
