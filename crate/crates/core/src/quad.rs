//! Adaptive Gauss-Kronrod quadrature.
//!
//! A 15-point Kronrod rule with embedded 7-point Gauss rule (the QUADPACK
//! dqk15 node set) drives a globally adaptive bisection: the panel with the
//! largest error estimate is split until the total estimated error meets the
//! requested tolerance. Callers are expected to hand in integrands that are
//! smooth on the closed interval; turning-point integrals get there via the
//! sqrt substitution in the classical-mechanics layer.

use crate::error::{Error, Result};
use crate::real::Real;

// QUADPACK dqk15 abscissae (positive half, descending) and weights.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Result of an adaptive integration.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult<T> {
    pub value: T,
    /// Estimated absolute error of `value`.
    pub abs_error: f64,
    /// Number of integrand evaluations spent.
    pub evaluations: usize,
}

/// One Kronrod panel: returns (integral, error estimate).
fn gk15<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, f64) {
    let half = T::rf(0.5);
    let centre = (a + b) * half;
    let hl = (b - a) * half;
    let fc = f(centre);
    let mut f_lo = [T::zero(); 7];
    let mut f_hi = [T::zero(); 7];
    let mut resk = fc * T::rf(WGK[7]);
    let mut resg = fc * T::rf(WG[3]);
    for j in 0..7 {
        let dx = hl * T::rf(XGK[j]);
        f_lo[j] = f(centre - dx);
        f_hi[j] = f(centre + dx);
        let pair = f_lo[j] + f_hi[j];
        resk += pair * T::rf(WGK[j]);
        if j % 2 == 1 {
            resg += pair * T::rf(WG[j / 2]);
        }
    }
    // QUADPACK-style error rescaling against the oscillation integral, which
    // keeps the estimate honest when the plain K-G difference is lucky.
    let reskh = resk * half;
    let mut resasc = T::rf(WGK[7]) * (fc - reskh).abs();
    for j in 0..7 {
        resasc += T::rf(WGK[j]) * ((f_lo[j] - reskh).abs() + (f_hi[j] - reskh).abs());
    }
    let resasc = (resasc * hl.abs()).lower();
    let mut err = ((resk - resg) * hl).abs().lower();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * 1.0f64.min((200.0 * err / resasc).powf(1.5));
    }
    ((resk * hl), err)
}

struct Panel<T> {
    a: T,
    b: T,
    value: T,
    err: f64,
}

const MAX_PANELS: usize = 4096;

/// Integrate `f` over `[a, b]` until the estimated error drops below
/// `max(abs_floor, rel_tol * |integral|)`.
pub fn integrate<T: Real, F: Fn(T) -> T>(
    f: F,
    a: T,
    b: T,
    rel_tol: f64,
    abs_floor: f64,
) -> Result<QuadResult<T>> {
    if a == b {
        return Ok(QuadResult {
            value: T::zero(),
            abs_error: 0.0,
            evaluations: 0,
        });
    }
    let (lo, hi, flip) = if a < b { (a, b, false) } else { (b, a, true) };
    let (v0, e0) = gk15(&f, lo, hi);
    let mut panels = vec![Panel {
        a: lo,
        b: hi,
        value: v0,
        err: e0,
    }];
    let mut evaluations = 15usize;
    loop {
        let mut total = T::zero();
        let mut total_err = 0.0f64;
        let mut worst = 0usize;
        for (i, p) in panels.iter().enumerate() {
            total += p.value;
            total_err += p.err;
            if p.err > panels[worst].err {
                worst = i;
            }
        }
        let target = abs_floor.max(rel_tol * total.abs().lower());
        if total_err <= target {
            let value = if flip { -total } else { total };
            return Ok(QuadResult {
                value,
                abs_error: total_err,
                evaluations,
            });
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::no_convergence(format!(
                "quadrature stalled at {} panels, err {:.3e} > target {:.3e}",
                panels.len(),
                total_err,
                target
            )));
        }
        let Panel { a: pa, b: pb, .. } = panels[worst];
        let mid = (pa + pb) * T::rf(0.5);
        if mid <= pa || mid >= pb {
            return Err(Error::no_convergence(
                "quadrature panel collapsed below floating-point resolution",
            ));
        }
        let (vl, el) = gk15(&f, pa, mid);
        let (vr, er) = gk15(&f, mid, pb);
        evaluations += 30;
        panels[worst] = Panel {
            a: pa,
            b: mid,
            value: vl,
            err: el,
        };
        panels.push(Panel {
            a: mid,
            b: pb,
            value: vr,
            err: er,
        });
    }
}
