//! Special functions: the Airy kernel, exact Bernoulli numbers, and the
//! constants fixing density and kinetic density at a classical turning point.

pub mod airy;
pub mod bernoulli;

pub use airy::{airy, AiryPair};
pub use bernoulli::{bernoulli, bernoulli_exact};

use crate::real::Real;

/// c0 = (2/9)^(1/3) / Gamma(1/3)^2. Equals 2^(1/3) Ai'(0)^2, the
/// dimensionless density right at a turning point.
const C0: f64 = 0.084_398_940_893_490_02;

/// d0 = sqrt(3) / (18 pi) = 1 / (9 Gamma(1/3) Gamma(2/3)). Equals
/// -Ai(0) Ai'(0) / 3, fixing the kinetic density at a turning point.
const D0: f64 = 0.030_629_383_078_988_447;

/// The pair (c0, d0) of turning-point constants.
///
/// At a turning point where the potential has slope v', the particle
/// density is c0 * hbar^(-2/3) * |v'|^(1/3) and the kinetic energy density
/// is -d0 * |v'|, independent of everything else about the well.
pub fn tp_constants<T: Real>() -> (T, T) {
    (T::rf(C0), T::rf(D0))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Lanczos approximation for Gamma (g = 7, 9 terms), an oracle
    /// independent of the hardcoded constants above.
    fn gamma(x: f64) -> f64 {
        const G: [f64; 9] = [
            0.999_999_999_999_809_93,
            676.520_368_121_885_1,
            -1259.139_216_722_402_8,
            771.323_428_777_653_13,
            -176.615_029_162_140_59,
            12.507_343_278_686_905,
            -0.138_571_095_265_720_12,
            9.984_369_578_019_571_6e-6,
            1.505_632_735_149_311_6e-7,
        ];
        if x < 0.5 {
            return std::f64::consts::PI / ((std::f64::consts::PI * x).sin() * gamma(1.0 - x));
        }
        let x = x - 1.0;
        let mut a = G[0];
        for (i, &c) in G.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        let t = x + 7.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
    }

    #[test]
    fn constants_match_their_closed_forms() {
        let (c0, d0): (f64, f64) = tp_constants();
        let g13 = gamma(1.0 / 3.0);
        let c0_ref = (2.0f64 / 9.0).cbrt() / (g13 * g13);
        assert!((c0 - c0_ref).abs() < 1e-14 * c0_ref, "c0 vs Gamma form: {c0} {c0_ref}");
        let d0_ref = 3.0f64.sqrt() / (18.0 * std::f64::consts::PI);
        assert!((d0 - d0_ref).abs() < 1e-16);
        // Reflection: Gamma(1/3) Gamma(2/3) = 2 pi / sqrt(3), so d0 is also
        // 1 / (9 Gamma(1/3) Gamma(2/3)).
        let d0_alt = 1.0 / (9.0 * g13 * gamma(2.0 / 3.0));
        assert!((d0 - d0_alt).abs() < 1e-14 * d0);
    }

    #[test]
    fn constants_match_airy_values_at_zero() {
        let p = airy(0.0f64).unwrap();
        let (c0, d0): (f64, f64) = tp_constants();
        // c0 = 2^(1/3) Ai'(0)^2 and d0 = -Ai(0) Ai'(0) / 3: the forms the
        // turning-point limits of the density expressions actually take.
        assert!((c0 - 2.0f64.cbrt() * p.ai_prime * p.ai_prime).abs() < 1e-15);
        assert!((d0 + p.ai * p.ai_prime / 3.0).abs() < 1e-15);
    }
}
