//! Signed log-domain numbers.
//!
//! Quantities like `[e^{-x^2/2}/zeta(x)]^{n+1}` or `P_n(x)/n!` overflow `f64`
//! long before the interesting range of `n` is reached, so every large-`n`
//! value in this crate is carried as a sign together with the natural log of
//! its magnitude. Multiplication adds logs and multiplies signs; addition is
//! a signed log-sum-exp pivoted on the larger magnitude.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

/// Two opposite-signed magnitudes whose logs agree this closely (relative to
/// the log scale) cancel to an exact zero instead of producing noise.
const CANCEL_EPS: f64 = 1e-14;

/// A number represented as `sign * exp(log_magnitude)`.
///
/// `sign == 0` is the exact zero; its `log_magnitude` is the
/// `NEG_INFINITY` sentinel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    sign: i8,
    log_magnitude: f64,
}

impl LogValue {
    pub fn new(sign: i8, log_magnitude: f64) -> Self {
        assert!(
            sign == -1 || sign == 0 || sign == 1,
            "sign must be -1, 0 or +1"
        );
        if sign == 0 {
            Self::zero()
        } else {
            LogValue {
                sign,
                log_magnitude,
            }
        }
    }

    pub fn zero() -> Self {
        LogValue {
            sign: 0,
            log_magnitude: f64::NEG_INFINITY,
        }
    }

    /// Strictly positive value given by its natural log.
    pub fn positive(log_magnitude: f64) -> Self {
        LogValue {
            sign: 1,
            log_magnitude,
        }
    }

    pub fn from_f64(v: f64) -> Self {
        if v == 0.0 {
            Self::zero()
        } else {
            LogValue {
                sign: if v > 0.0 { 1 } else { -1 },
                log_magnitude: v.abs().ln(),
            }
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_magnitude(&self) -> f64 {
        self.log_magnitude
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Materialize as `f64`; overflows to `+-inf`, underflows to `+-0`.
    pub fn to_f64(&self) -> f64 {
        self.sign as f64 * self.log_magnitude.exp()
    }

    pub fn abs(&self) -> Self {
        LogValue {
            sign: self.sign.abs(),
            log_magnitude: self.log_magnitude,
        }
    }

    /// `self^k` for integer `k` (sign follows parity).
    pub fn powi(&self, k: i64) -> Self {
        if self.sign == 0 {
            assert!(k > 0, "0^k undefined for k <= 0");
            return Self::zero();
        }
        let sign = if self.sign < 0 && k % 2 != 0 { -1 } else { 1 };
        LogValue {
            sign,
            log_magnitude: self.log_magnitude * k as f64,
        }
    }
}

impl std::ops::Mul for LogValue {
    type Output = LogValue;

    fn mul(self, rhs: Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::zero();
        }
        LogValue {
            sign: self.sign * rhs.sign,
            log_magnitude: self.log_magnitude + rhs.log_magnitude,
        }
    }
}

impl std::ops::Neg for LogValue {
    type Output = LogValue;

    fn neg(self) -> Self {
        LogValue {
            sign: -self.sign,
            log_magnitude: self.log_magnitude,
        }
    }
}

impl std::ops::Add for LogValue {
    type Output = LogValue;

    /// Signed log-sum-exp with the larger magnitude as pivot. Opposite-signed
    /// terms whose magnitudes agree to `CANCEL_EPS` (relative, on the log
    /// scale) yield the exact zero.
    fn add(self, rhs: Self) -> Self {
        if self.sign == 0 {
            return rhs;
        }
        if rhs.sign == 0 {
            return self;
        }
        let (big, small) = if self.log_magnitude >= rhs.log_magnitude {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let delta = big.log_magnitude - small.log_magnitude;
        if big.sign == small.sign {
            return LogValue {
                sign: big.sign,
                log_magnitude: big.log_magnitude + (-delta).exp().ln_1p(),
            };
        }
        let scale = 1.0 + big.log_magnitude.abs();
        if delta <= CANCEL_EPS * scale {
            return Self::zero();
        }
        LogValue {
            sign: big.sign,
            log_magnitude: big.log_magnitude + (-(-delta).exp()).ln_1p(),
        }
    }
}

/// Natural log of `|v|` for an arbitrary-precision integer, accurate to a few
/// ulp even when `v` does not fit in `f64`. Returns `NEG_INFINITY` for zero.
pub(crate) fn ln_bigint(v: &BigInt) -> f64 {
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = v.bits();
    if bits <= 900 {
        return v.abs().to_f64().expect("fits in f64").ln();
    }
    // Keep the top 64 bits as the mantissa and account for the shift.
    let shift = bits - 64;
    let mant = (v.abs() >> shift).to_f64().expect("64-bit mantissa");
    mant.ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    #[test]
    fn zero_sentinel() {
        let z = LogValue::zero();
        assert_eq!(z.sign(), 0);
        assert_eq!(z.log_magnitude(), f64::NEG_INFINITY);
        assert_eq!(z.to_f64(), 0.0);
        assert!(LogValue::from_f64(0.0).is_zero());
    }

    #[test]
    fn exact_cancellation() {
        let a = LogValue::positive(3.25);
        let r = a + -a;
        assert_eq!(r.sign(), 0);
    }

    #[test]
    fn integer_powers() {
        let v = LogValue::from_f64(-2.0);
        assert_eq!(v.powi(3).sign(), -1);
        assert!((v.powi(3).to_f64() + 8.0).abs() < 1e-14);
        assert_eq!(v.powi(2).sign(), 1);
        assert!(LogValue::zero().powi(5).is_zero());
    }

    #[test]
    fn near_cancellation_snaps_to_zero() {
        let a = LogValue::positive(1.0);
        let b = LogValue::new(-1, 1.0 + 1e-15);
        assert_eq!((a + b).sign(), 0);
    }

    #[test]
    fn ln_bigint_large() {
        // 2^5000: ln = 5000 ln 2
        let v = BigInt::from(1) << 5000;
        let expect = 5000.0 * std::f64::consts::LN_2;
        assert!((ln_bigint(&v) - expect).abs() < 1e-9 * expect);
        assert_eq!(ln_bigint(&BigInt::from(0)), f64::NEG_INFINITY);
        assert_eq!(ln_bigint(&BigInt::from(1)), 0.0);
        assert!((ln_bigint(&BigInt::from(-7)) - 7f64.ln()).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn add_matches_f64(a in -40.0f64..40.0, b in -40.0f64..40.0) {
            let la = LogValue::from_f64(a);
            let lb = LogValue::from_f64(b);
            let got = (la + lb).to_f64();
            let want = a + b;
            prop_assert!((got - want).abs() <= 1e-12 * (1.0 + want.abs()));
        }

        #[test]
        fn mul_matches_f64(a in -1e3f64..1e3, b in -1e3f64..1e3) {
            let got = (LogValue::from_f64(a) * LogValue::from_f64(b)).to_f64();
            let want = a * b;
            prop_assert!((got - want).abs() <= 1e-10 * (1.0 + want.abs()));
        }
    }
}
