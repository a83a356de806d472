//! Exact Bernoulli numbers.
//!
//! The cosecant-correction series needs Bernoulli numbers up to B_50; they
//! grow fast and alternate, so they are generated once, exactly, as big
//! rationals from the defining recurrence sum_k C(m+1, k) B_k = 0 and cached.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::real::Real;

/// Largest even index served. B_60 has a ~35-digit numerator; the f64
/// conversion is still exact to 1 ulp, and nothing downstream needs more.
pub const MAX_EVEN: usize = 60;

static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();

fn table() -> &'static [BigRational] {
    TABLE.get_or_init(|| {
        let mut b: Vec<BigRational> = Vec::with_capacity(MAX_EVEN + 1);
        b.push(BigRational::one());
        for m in 1..=MAX_EVEN {
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one();
            for (k, bk) in b.iter().enumerate() {
                acc += bk * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b
    })
}

/// Exact Bernoulli number B_n for even n in [2, 60].
pub fn bernoulli_exact(n: usize) -> Result<&'static BigRational> {
    if n < 2 || n > MAX_EVEN || n % 2 != 0 {
        return Err(Error::config(format!(
            "Bernoulli index must be even and in [2, {MAX_EVEN}], got {n}"
        )));
    }
    Ok(&table()[n])
}

/// B_n rounded to the requested float width.
pub fn bernoulli<T: Real>(n: usize) -> Result<T> {
    let b = bernoulli_exact(n)?;
    let f = b
        .to_f64()
        .ok_or_else(|| Error::no_convergence(format!("B_{n} does not fit in f64")))?;
    Ok(T::rf(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn frac(num: i64, den: i64) -> BigRational {
        BigRational::new(num.into(), den.into())
    }

    #[test]
    fn small_values_are_exact() {
        assert_eq!(*bernoulli_exact(2).unwrap(), frac(1, 6));
        assert_eq!(*bernoulli_exact(4).unwrap(), frac(-1, 30));
        assert_eq!(*bernoulli_exact(6).unwrap(), frac(1, 42));
        assert_eq!(*bernoulli_exact(8).unwrap(), frac(-1, 30));
        assert_eq!(*bernoulli_exact(10).unwrap(), frac(5, 66));
        assert_eq!(*bernoulli_exact(12).unwrap(), frac(-691, 2730));
        assert_eq!(*bernoulli_exact(30).unwrap(), frac(8_615_841_276_005, 14322));
    }

    #[test]
    fn odd_entries_vanish_internally() {
        let t = table();
        for n in (3..MAX_EVEN).step_by(2) {
            assert!(t[n].is_zero(), "B_{n} should vanish");
        }
    }

    #[test]
    fn matches_zeta_identity() {
        // |B_2k| = 2 (2k)! zeta(2k) / (2 pi)^(2k); zeta by direct summation
        // plus the integral tail (the remainder beyond M = 400 is ~M^-(n+3)).
        for k in 1..=15usize {
            let n = 2 * k;
            const M: u64 = 400;
            let mut zeta = 0.0f64;
            for m in 1..M {
                zeta += (m as f64).powi(-(n as i32));
            }
            let mf = M as f64;
            let nf = n as f64;
            zeta += mf.powi(1 - n as i32) / (nf - 1.0)
                + 0.5 * mf.powi(-(n as i32))
                + nf / 12.0 * mf.powi(-(n as i32) - 1);
            let mut fact = 1.0f64;
            for j in 2..=n {
                fact *= j as f64;
            }
            let expected = 2.0 * fact * zeta / (2.0 * std::f64::consts::PI).powi(n as i32);
            let got = bernoulli::<f64>(n).unwrap().abs();
            let rel = (got - expected).abs() / expected;
            assert!(rel < 1e-13, "B_{n} vs zeta identity: rel {rel:.2e}");
        }
    }

    #[test]
    fn signs_alternate() {
        for k in 1..=MAX_EVEN / 2 {
            let b = bernoulli_exact(2 * k).unwrap();
            assert_eq!(b.is_positive(), k % 2 == 1, "sign of B_{}", 2 * k);
        }
    }

    #[test]
    fn rejects_out_of_range_indices() {
        assert!(bernoulli_exact(0).is_err());
        assert!(bernoulli_exact(3).is_err());
        assert!(bernoulli_exact(62).is_err());
    }
}
