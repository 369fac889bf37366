//! Exact computation of the polynomial family `P_n` defined by
//! `P_0 = 1`, `P_{n+1} = P_n' + x (n+1) P_n`, and the exact quantities
//! derived from it: values at rational points and the derivatives of the
//! inverse error function at the origin,
//! `I^(n)(0) = (1/sqrt 2) (pi/2)^{n/2} P_{n-1}(0)`.
//!
//! `P_n` has degree exactly n, leading coefficient n!, nonnegative integer
//! coefficients, and only terms whose parity matches n.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::logval::{ln_bigint, LogValue};
use crate::special::ln_factorial;

/// Largest family index the sequence generator will produce. Coefficient
/// bit-lengths grow like n log n; 1000 keeps generation interactive.
pub const SEQUENCE_CEILING: usize = 1000;

/// Dense integer-coefficient polynomial; `coeffs[k]` multiplies `x^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    /// `P_0(x) = 1`, the seed of the family.
    pub fn p0() -> Self {
        Polynomial {
            coeffs: vec![BigInt::from(1)],
        }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial has at least one coefficient");
        Polynomial { coeffs }
    }

    /// Family index of a `P_n` (equals the degree).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonempty")
    }

    /// Value at the origin (the constant coefficient).
    pub fn at_zero(&self) -> &BigInt {
        &self.coeffs[0]
    }

    /// Formal derivative by coefficient shift.
    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() == 1 {
            return Polynomial {
                coeffs: vec![BigInt::zero()],
            };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| BigInt::from(k) * c)
            .collect();
        Polynomial { coeffs }
    }

    /// Exact Horner evaluation over the rationals.
    pub fn eval_exact(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    /// `(sign, ln |P_n(x)/n!|)` computed from the exact rational value of
    /// `P_n(x)` and exact n!, then converted to floating point. Taking the
    /// log after exact evaluation avoids cancellation near zeros of `P_n`;
    /// `P_n(x) = 0` is reported as the sign-0 value.
    pub fn eval_log_scaled(&self, x: &BigRational) -> LogValue {
        // integer Horner on numerator/denominator, no gcd reduction
        let p = x.numer();
        let q = x.denom();
        let n = self.degree();
        let mut acc = self.coeffs[n].clone();
        let mut qpow = BigInt::from(1);
        for k in (0..n).rev() {
            qpow *= q;
            acc = acc * p + &self.coeffs[k] * &qpow;
        }
        if acc.is_zero() {
            return LogValue::zero();
        }
        let sign = if acc.is_negative() { -1 } else { 1 };
        let ln = ln_bigint(&acc) - n as f64 * ln_bigint(q) - ln_factorial(n as u64);
        LogValue::new(sign, ln)
    }
}

/// One application of the recurrence: coefficients of `P_{n+1}` are
/// `c'_k = (k+1) c_{k+1} + (n+1) c_{k-1}` with out-of-range terms zero.
pub fn next_poly(p: &Polynomial) -> Polynomial {
    let n = p.degree();
    let np1 = BigInt::from(n + 1);
    let c = p.coeffs();
    let coeffs = (0..=n + 1)
        .map(|k| {
            let mut v = BigInt::zero();
            if k < n {
                v += BigInt::from(k + 1) * &c[k + 1];
            }
            if k >= 1 {
                v += &np1 * &c[k - 1];
            }
            v
        })
        .collect();
    Polynomial { coeffs }
}

/// `[P_0, ..., P_{n_max}]` by iterating the recurrence from `P_0 = 1`.
///
/// ```
/// let seq = inverf_poly::poly::poly_sequence(3).unwrap();
/// // P_3(x) = 7x + 6x^3
/// let coeffs: Vec<i64> = seq[3].coeffs().iter().map(|c| c.try_into().unwrap()).collect();
/// assert_eq!(coeffs, [0, 7, 0, 6]);
/// ```
pub fn poly_sequence(n_max: usize) -> Result<Vec<Polynomial>> {
    if n_max > SEQUENCE_CEILING {
        return Err(Error::Ceiling {
            requested: n_max,
            ceiling: SEQUENCE_CEILING,
        });
    }
    let mut seq = Vec::with_capacity(n_max + 1);
    seq.push(Polynomial::p0());
    for _ in 0..n_max {
        let next = next_poly(seq.last().expect("nonempty"));
        seq.push(next);
    }
    Ok(seq)
}

/// Exact n! as a big integer.
pub fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::from(1);
    for k in 2..=n {
        f *= BigInt::from(k);
    }
    f
}

/// `I^(n)(0) = integer_part * (pi/2)^{m/2} / sqrt(2)` with
/// `integer_part = P_{n-1}(0)` and `m = n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactScaledValue {
    /// `P_{n-1}(0)`; zero for even n by parity.
    pub integer_part: BigInt,
    /// Exponent m in the factor `(pi/2)^{m/2}`.
    pub half_power_of_pi_over_2: u64,
    /// Whether the value carries a factor `1/sqrt(2)`.
    pub sqrt2_inverse: bool,
}

impl ExactScaledValue {
    pub fn is_zero(&self) -> bool {
        self.integer_part.is_zero()
    }

    /// Log-domain rendering; exact zero maps to the sign-0 value.
    pub fn to_log_value(&self) -> LogValue {
        if self.is_zero() {
            return LogValue::zero();
        }
        let sign = if self.integer_part.is_negative() { -1 } else { 1 };
        let mut ln = ln_bigint(&self.integer_part)
            + 0.5 * self.half_power_of_pi_over_2 as f64 * (std::f64::consts::PI / 2.0).ln();
        if self.sqrt2_inverse {
            ln -= 0.5 * std::f64::consts::LN_2;
        }
        LogValue::new(sign, ln)
    }

    /// Float rendering `integer_part * (pi/2)^{m/2} * (1/sqrt 2)`;
    /// overflows to infinity for very large n.
    pub fn to_f64(&self) -> f64 {
        self.to_log_value().to_f64()
    }
}

/// n-th derivative of the inverse error function at 0:
/// `(1/sqrt 2) (pi/2)^{n/2} P_{n-1}(0)`.
pub fn inverf_deriv_at_zero(n: u64) -> ExactScaledValue {
    assert!(n >= 1, "derivative order must be >= 1");
    let mut p = Polynomial::p0();
    for _ in 0..n - 1 {
        p = next_poly(&p);
    }
    ExactScaledValue {
        integer_part: p.at_zero().clone(),
        half_power_of_pi_over_2: n,
        sqrt2_inverse: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, ToPrimitive};
    use proptest::prelude::*;

    fn poly(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn rational(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn recurrence_first_members() {
        // P_n(x) = x^n for n = 0, 1
        let p1 = next_poly(&Polynomial::p0());
        assert_eq!(p1, poly(&[0, 1]));
        // one hand application each
        let p2 = next_poly(&p1);
        assert_eq!(p2, poly(&[1, 0, 2]));
        let p3 = next_poly(&p2);
        assert_eq!(p3, poly(&[0, 7, 0, 6]));
    }

    #[test]
    fn sequence_examples() {
        assert_eq!(poly_sequence(0).unwrap(), vec![Polynomial::p0()]);
        let seq = poly_sequence(4).unwrap();
        assert_eq!(seq[2], poly(&[1, 0, 2]));
        assert_eq!(seq[4], poly(&[7, 0, 46, 0, 24]));
        assert!(matches!(
            poly_sequence(SEQUENCE_CEILING + 1),
            Err(Error::Ceiling { .. })
        ));
    }

    #[test]
    fn eval_exact_examples() {
        let seq = poly_sequence(4).unwrap();
        assert_eq!(seq[2].eval_exact(&rational(0, 1)), rational(1, 1));
        assert_eq!(seq[1].eval_exact(&rational(1, 2)), rational(1, 2));
        assert_eq!(seq[4].eval_exact(&rational(2, 1)), rational(575, 1));
    }

    #[test]
    fn eval_log_scaled_examples() {
        let seq = poly_sequence(4).unwrap();
        // odd polynomial at 0: sign 0
        assert_eq!(seq[1].eval_log_scaled(&rational(0, 1)).sign(), 0);
        // P_2(0)/2! = 1/2
        let v = seq[2].eval_log_scaled(&rational(0, 1));
        assert_eq!(v.sign(), 1);
        assert!((v.log_magnitude() - 0.5f64.ln()).abs() < 1e-14);
        // P_4(2)/4! = 575/24
        let v = seq[4].eval_log_scaled(&rational(2, 1));
        assert_eq!(v.sign(), 1);
        assert!((v.log_magnitude() - (575.0f64 / 24.0).ln()).abs() < 1e-13);
    }

    #[test]
    fn structure_invariants_to_200() {
        let seq = poly_sequence(200).unwrap();
        let mut fact = BigInt::one();
        for (n, p) in seq.iter().enumerate() {
            if n > 0 {
                fact *= BigInt::from(n);
            }
            assert_eq!(p.degree(), n, "degree of P_{n}");
            assert_eq!(p.leading(), &fact, "leading coefficient of P_{n}");
            for (k, c) in p.coeffs().iter().enumerate() {
                assert!(!c.is_negative(), "negative coefficient in P_{n}");
                if (k + n) % 2 == 1 {
                    assert!(c.is_zero(), "parity violation in P_{n} at x^{k}");
                }
            }
        }
    }

    #[test]
    fn large_x_ratio_bounds() {
        // P_n(x)/(n! x^n) -> 1 from above, decreasing in x; exact for n <= 1
        let seq = poly_sequence(50).unwrap();
        for (n, p) in seq.iter().enumerate() {
            let fact = BigRational::from(factorial(n));
            let mut prev: Option<BigRational> = None;
            for &xv in &[2i64, 4, 8, 16] {
                let x = rational(xv, 1);
                let xn = (0..n).fold(BigRational::one(), |acc, _| acc * &x);
                let ratio = p.eval_exact(&x) / (&fact * xn);
                if n <= 1 {
                    assert!(ratio.is_one());
                } else {
                    assert!(ratio > BigRational::one(), "ratio <= 1 at n={n} x={xv}");
                    if let Some(prev) = prev {
                        assert!(ratio < prev, "ratio not decreasing at n={n} x={xv}");
                    }
                }
                prev = Some(ratio);
            }
        }
    }

    #[test]
    fn inverf_derivatives_at_zero() {
        // I'(0) = sqrt(pi)/2
        let d1 = inverf_deriv_at_zero(1);
        assert_eq!(d1.integer_part, BigInt::one());
        assert_eq!(d1.half_power_of_pi_over_2, 1);
        assert!(d1.sqrt2_inverse);
        let want = std::f64::consts::PI.sqrt() / 2.0;
        assert!((d1.to_f64() - want).abs() < 1e-15);
        // even order vanishes by parity
        assert!(inverf_deriv_at_zero(2).is_zero());
        assert_eq!(inverf_deriv_at_zero(2).to_f64(), 0.0);
        // I'''(0) = pi^{3/2}/4
        let d3 = inverf_deriv_at_zero(3);
        assert_eq!(d3.integer_part, BigInt::one());
        let want = std::f64::consts::PI.powf(1.5) / 4.0;
        assert!((d3.to_f64() - want).abs() < 1e-15);
        // P_4(0) = 7 feeds the fifth derivative
        assert_eq!(inverf_deriv_at_zero(5).integer_part, BigInt::from(7));
    }

    /// Independent oracle for the inverse-derivative formula: invert the
    /// Maclaurin series of erf by brute force over exact rationals.
    ///
    /// With `h(t) = sum (-1)^k t^{2k+1} / (k! (2k+1))` (so that
    /// `erf = 2/sqrt(pi) h`), the compositional inverse `H` of `h` gives
    /// `inverf(y) = H(sqrt(pi) y / 2)`, hence
    /// `P_{n-1}(0) = n! H_n / 2^{(n-1)/2}` for odd n.
    #[test]
    #[allow(clippy::needless_range_loop)] // k drives two arrays and a stateful power
    fn series_inversion_oracle() {
        const M: usize = 15;
        let mut h = vec![BigRational::zero(); M + 1];
        let mut kfact = BigInt::one();
        for k in 0..=(M - 1) / 2 {
            if k > 0 {
                kfact *= BigInt::from(k);
            }
            let num = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            h[2 * k + 1] = BigRational::new(num, &kfact * BigInt::from(2 * k + 1));
        }

        // composition h(H(Y)) = Y, solved degree by degree
        let mul = |a: &[BigRational], b: &[BigRational]| {
            let mut out = vec![BigRational::zero(); M + 1];
            for i in 0..=M {
                if a[i].is_zero() {
                    continue;
                }
                for j in 0..=M - i {
                    if !b[j].is_zero() {
                        out[i + j] = &out[i + j] + &a[i] * &b[j];
                    }
                }
            }
            out
        };
        let mut inv = vec![BigRational::zero(); M + 1];
        inv[1] = BigRational::one();
        for m in 2..=M {
            // [Y^m] of sum_{k>=2} h_k H(Y)^k using coefficients below m
            let mut power = mul(&inv, &inv); // H^2
            let mut correction = BigRational::zero();
            for k in 2..=m {
                if !h[k].is_zero() {
                    correction = &correction + &h[k] * &power[m];
                }
                if k < m {
                    power = mul(&power, &inv);
                }
            }
            inv[m] = -correction;
        }

        let seq = poly_sequence(M).unwrap();
        for n in (1..=M).step_by(2) {
            let pow2 = BigInt::one() << ((n - 1) / 2);
            let predicted = BigRational::from(factorial(n)) * &inv[n]
                / BigRational::from(pow2);
            assert!(
                predicted.is_integer(),
                "n = {n}: predicted P_{{n-1}}(0) not an integer: {predicted}"
            );
            assert_eq!(
                predicted.to_integer(),
                seq[n - 1].at_zero().clone(),
                "series inversion disagrees at n = {n}"
            );
        }
    }

    proptest! {
        /// Recurrence self-consistency at random rational points:
        /// P_{n+1}(x) = P_n'(x) + x (n+1) P_n(x) exactly.
        #[test]
        fn recurrence_identity(n in 0usize..30, num in -200i64..200, den in 1i64..40) {
            let x = rational(num, den);
            let seq = poly_sequence(n + 1).unwrap();
            let lhs = seq[n + 1].eval_exact(&x);
            let rhs = seq[n].derivative().eval_exact(&x)
                + &x * BigRational::from(BigInt::from(n + 1)) * seq[n].eval_exact(&x);
            prop_assert_eq!(lhs, rhs);
        }

        /// Exact-then-log path agrees with direct f64 evaluation where the
        /// latter is trustworthy.
        #[test]
        fn log_scaled_matches_f64(n in 0usize..12, num in -40i64..40, den in 1i64..12) {
            let x = rational(num, den);
            let seq = poly_sequence(n).unwrap();
            let exact = seq[n].eval_exact(&x);
            let direct = exact.numer().to_f64().unwrap() / exact.denom().to_f64().unwrap();
            let scaled = direct / factorial(n).to_f64().unwrap();
            let lv = seq[n].eval_log_scaled(&x);
            if scaled == 0.0 {
                prop_assert_eq!(lv.sign(), 0);
            } else {
                prop_assert!((lv.to_f64() - scaled).abs() <= 1e-10 * scaled.abs());
            }
        }
    }
}
