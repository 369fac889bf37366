//! Floating-point special functions used by every asymptotic formula:
//! erf/erfc with a scaled complementary path, the Gaussian tail
//! `zeta(x) = sqrt(pi/2) erfc(x/sqrt(2))`, the singularity locations
//! `Z_1`/`Z_0` of the inverse normal CDF, the inverse error function,
//! Lambert W, Stirling, and the WKB phase `A(x)`.
//!
//! Everything carrying a factor like `e^{x^2/2}` is computed in log space;
//! linear values are only materialized where they are known to fit.

use crate::error::{Error, Result};
use crate::logval::LogValue;

use std::f64::consts::{FRAC_2_SQRT_PI, LN_2, PI, SQRT_2};

/// ln sqrt(pi/2)
pub(crate) const LN_SQRT_PI_2: f64 = 0.225_791_352_644_727_43;
/// sqrt(pi/2)
pub(crate) const SQRT_PI_2: f64 = 1.253_314_137_315_500_3;
/// sqrt(2/pi)
pub(crate) const SQRT_2_PI: f64 = 0.797_884_560_802_865_4;

/// Error function, accurate to about 1e-16 absolute and odd by construction.
///
/// `|x| <= 2` uses the non-alternating Maclaurin form
/// `erf(x) = 2/sqrt(pi) x e^{-x^2} sum (2x^2)^k / (2k+1)!!` (every term
/// positive, so no cancellation); beyond 2 the Laplace continued fraction for
/// the scaled complement takes over. Both paths agree to ~1e-15 at the seam.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let ax = x.abs();
    if ax <= 2.0 {
        erf_series(x)
    } else if ax >= 6.0 {
        // erfc(6) ~ 2e-17 is below resolution of 1 - erfc
        x.signum()
    } else {
        x.signum() * (1.0 - (-ax * ax).exp() * erfcx_cf(ax))
    }
}

/// Complementary error function `1 - erf(x)`.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x >= 2.0 {
        (-x * x).exp() * erfcx_cf(x)
    } else if x > -2.0 {
        1.0 - erf_series(x)
    } else {
        2.0 - (-x * x).exp() * erfcx_cf(-x)
    }
}

/// Scaled complementary error function `e^{x^2} erfc(x)`.
///
/// This is the quantity that keeps the Gaussian tail representable: for
/// x = 30 the unscaled erfc underflows while erfcx is still ~0.0188.
pub fn erfcx(x: f64) -> f64 {
    if x >= 2.0 {
        erfcx_cf(x)
    } else {
        // e^{x^2} overflows past |x| ~ 26.6; ln_erfcx covers that range.
        (x * x).exp() * erfc(x)
    }
}

/// ln erfcx(x), finite for every x (erfcx(x) -> 2 e^{x^2} as x -> -inf).
pub(crate) fn ln_erfcx(x: f64) -> f64 {
    if x >= -26.0 {
        erfcx(x).ln()
    } else {
        x * x + LN_2
    }
}

/// Positive-term Maclaurin sum; |x| <= 2 only. Kahan-compensated so the
/// result stays within a couple of ulp.
fn erf_series(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let z = 2.0 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut comp = 0.0;
    let mut k = 1u32;
    while term > 1e-18 * sum {
        term *= z / (2 * k + 1) as f64;
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        k += 1;
        debug_assert!(k < 200);
    }
    FRAC_2_SQRT_PI * x * (-x * x).exp() * sum
}

/// Laplace continued fraction for erfcx, x >= 2, via modified Lentz:
/// `sqrt(pi) e^{x^2} erfc(x) = 1/(x + (1/2)/(x + (2/2)/(x + ...)))`.
fn erfcx_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut f = x;
    let mut c = x;
    let mut d = 0.0;
    for k in 1..300 {
        let a = k as f64 * 0.5;
        d = x + a * d;
        if d == 0.0 {
            d = TINY;
        }
        d = 1.0 / d;
        c = x + a / c;
        if c == 0.0 {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    1.0 / (PI.sqrt() * f)
}

/// Gaussian tail `zeta(x) = sqrt(pi/2) [1 - erf(x/sqrt(2))]` in log form.
///
/// Computed through erfcx so it stays accurate far past the point where the
/// linear value underflows (`zeta(x) ~ e^{-x^2/2} (1/x - ...)`).
pub fn zeta_fn(x: f64) -> LogValue {
    LogValue::positive(LN_SQRT_PI_2 - 0.5 * x * x + ln_erfcx(x / SQRT_2))
}

/// Linear-space zeta for moderate x, used where full relative accuracy of
/// small differences matters (ray fields, saddle residual).
pub(crate) fn zeta_linear(x: f64) -> f64 {
    SQRT_PI_2 * erfc(x / SQRT_2)
}

/// `Z_1(x) = (1 - N(x))/N'(x) = e^{x^2/2} zeta(x)`, the singularity of the
/// generating-function integrand closest to the origin for x > 0.
pub fn z1(x: f64) -> LogValue {
    LogValue::positive(LN_SQRT_PI_2 + ln_erfcx(x / SQRT_2))
}

/// `Z_0(x) = -N(x)/N'(x)`, the other singularity; always negative.
pub fn z0(x: f64) -> LogValue {
    LogValue::new(-1, LN_SQRT_PI_2 + ln_erfcx(-x / SQRT_2))
}

/// `e^{s^2/2} * integral_s^x e^{-theta^2/2} dtheta`, i.e.
/// `e^{s^2/2} [zeta(s) - zeta(x)]`, with the exponentials folded together so
/// nothing overflows and with a quadrature fallback when `x ~ s` would make
/// the tail difference cancel catastrophically.
pub(crate) fn scaled_tail_integral(s: f64, x: f64) -> f64 {
    if (x - s).abs() < 1e-3 {
        // integrand e^{(s^2-theta^2)/2} is within e^{~0.1} of 1 here;
        // 16-node Gauss-Legendre is exact to machine precision.
        let mid = 0.5 * (s + x);
        let half = 0.5 * (x - s);
        let mut acc = 0.0;
        for &(node, w) in &GAUSS_LEGENDRE_16 {
            let theta = mid + half * node;
            acc += w * (0.5 * (s * s - theta * theta)).exp();
        }
        return acc * half;
    }
    if s < 0.0 && x < 0.0 {
        // zeta(v) + zeta(-v) = sqrt(2 pi): reflect so the difference is
        // taken between two small tails instead of two values near
        // sqrt(2 pi), which would cancel catastrophically
        return -scaled_tail_integral(-s, -x);
    }
    if s.abs() < 8.0 && x.abs() < 8.0 {
        // both tails are comfortably inside f64 range; stay linear
        return (0.5 * s * s).exp() * (zeta_linear(s) - zeta_linear(x));
    }
    let zs = SQRT_PI_2 * erfcx(s / SQRT_2);
    let zx = (0.5 * (s * s - x * x) + LN_SQRT_PI_2 + ln_erfcx(x / SQRT_2)).exp();
    zs - zx
}

/// 16-node Gauss-Legendre rule on [-1, 1]: (node, weight), symmetric pairs.
const GAUSS_LEGENDRE_16: [(f64, f64); 16] = [
    (-0.989_400_934_991_649_9, 0.027_152_459_411_754_095),
    (-0.944_575_023_073_232_6, 0.062_253_523_938_647_89),
    (-0.865_631_202_387_831_7, 0.095_158_511_682_492_78),
    (-0.755_404_408_355_003, 0.124_628_971_255_533_87),
    (-0.617_876_244_402_643_7, 0.149_595_988_816_576_73),
    (-0.458_016_777_657_227_4, 0.169_156_519_395_002_54),
    (-0.281_603_550_779_258_9, 0.182_603_415_044_923_59),
    (-0.095_012_509_837_637_44, 0.189_450_610_455_068_5),
    (0.095_012_509_837_637_44, 0.189_450_610_455_068_5),
    (0.281_603_550_779_258_9, 0.182_603_415_044_923_59),
    (0.458_016_777_657_227_4, 0.169_156_519_395_002_54),
    (0.617_876_244_402_643_7, 0.149_595_988_816_576_73),
    (0.755_404_408_355_003, 0.124_628_971_255_533_87),
    (0.865_631_202_387_831_7, 0.095_158_511_682_492_78),
    (0.944_575_023_073_232_6, 0.062_253_523_938_647_89),
    (0.989_400_934_991_649_9, 0.027_152_459_411_754_095),
];

/// Inverse error function by safeguarded Newton on [`erf`] with bisection
/// fallback; `erf(inverf(y)) = y` to well under 1e-14.
pub fn inverf(y: f64) -> Result<f64> {
    if y.is_nan() || y.abs() >= 1.0 {
        return Err(Error::domain("inverf", format!("|y| >= 1 (y = {y})")));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let target = y.abs();

    // Bracket [0, 6]: erf(6) rounds to 1 in f64, so any representable
    // |y| < 1 has its root strictly inside.
    let mut lo = 0.0f64;
    let mut hi = 6.0f64;
    let mut x = if target < 0.9 {
        // low-order Maclaurin of the inverse
        let u = 0.5 * PI.sqrt() * target;
        u + u * u * u / 3.0
    } else {
        // tail: erfc(x) ~ e^{-x^2}/(x sqrt(pi))
        let t = -(1.0 - target).ln();
        (t - 0.5 * (PI * t.max(1.0)).ln()).max(1.0).sqrt()
    };

    let mut best = (f64::INFINITY, x);
    for _ in 0..100 {
        let r = erf(x) - target;
        if r.abs() < best.0 {
            best = (r.abs(), x);
        }
        if r == 0.0 {
            break;
        }
        if r > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        // Newton step; erf'(x) = 2/sqrt(pi) e^{-x^2}
        let step = r / (FRAC_2_SQRT_PI * (-x * x).exp());
        let next = x - step;
        let next = if next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= f64::EPSILON * x.abs() {
            x = next;
            let r = erf(x) - target;
            if r.abs() < best.0 {
                best = (r.abs(), x);
            }
            break;
        }
        x = next;
    }
    Ok(best.1.copysign(y))
}

/// Lambert W, principal branch: the `w >= -1` solving `w e^w = z`.
///
/// Halley iteration from a branch-aware initial guess; converges to
/// `W e^W = z` within ~1e-15 relative over the whole domain `z >= -1/e`.
pub fn lambert_w0(z: f64) -> Result<f64> {
    const NEG_INV_E: f64 = -0.367_879_441_171_442_33;
    if z < NEG_INV_E * (1.0 + 4.0 * f64::EPSILON) {
        return Err(Error::domain(
            "lambert_w0",
            format!("z = {z} below the branch point -1/e"),
        ));
    }
    if z == 0.0 {
        return Ok(0.0);
    }

    let mut w = if z < -0.25 {
        // series around the branch point
        let p = (2.0 * (std::f64::consts::E * z + 1.0).max(0.0)).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else if z < std::f64::consts::E {
        // W(z) = z - z^2 + 3/2 z^3 - ... is only good very near 0, but
        // ln(1+z) is a serviceable start for the whole midrange
        if z.abs() < 1e-3 {
            z * (1.0 - z)
        } else {
            z.ln_1p()
        }
    } else {
        let l1 = z.ln();
        l1 - l1.ln()
    };

    for _ in 0..80 {
        let ew = w.exp();
        let f = w * ew - z;
        if f == 0.0 {
            return Ok(w);
        }
        let wp1 = w + 1.0;
        // Halley: f' = e^w (w+1), f'' = e^w (w+2)
        let denom = ew * wp1 - f * (w + 2.0) / (2.0 * wp1);
        let step = f / denom;
        w -= step;
        if step.abs() <= 1e-15 * (1.0 + w.abs()) {
            return Ok(w);
        }
    }
    Err(Error::Convergence {
        op: "lambert_w0",
        iterations: 80,
        lo: f64::NAN,
        hi: f64::NAN,
        residual: f64::NAN,
    })
}

/// Three-term asymptotic Lambert W, `ln z - ln ln z + ln ln z / ln z`,
/// taking `ln z` directly so overflow-scale arguments like
/// `(n+1)^2 x^2 e^{x^2}` can be passed as logs.
pub fn lambert_w_asymptotic(ln_z: f64) -> Result<f64> {
    if ln_z.is_nan() || ln_z <= 1.0 {
        return Err(Error::domain(
            "lambert_w_asymptotic",
            format!("ln z = {ln_z} <= 1: expansion needs ln ln z > 0"),
        ));
    }
    let l2 = ln_z.ln();
    Ok(ln_z - l2 + l2 / ln_z)
}

/// Lambert W of a log-scale argument: exact Halley when `e^{ln z}` is
/// representable, the asymptotic expansion beyond that.
pub(crate) fn lambert_w_from_ln(ln_z: f64) -> Result<f64> {
    if ln_z < 700.0 {
        lambert_w0(ln_z.exp())
    } else {
        lambert_w_asymptotic(ln_z)
    }
}

/// ln n! as an exact sum of logs.
pub fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Stirling's `ln[sqrt(2 pi n) n^n e^{-n}]`; `-inf` at n = 0.
pub fn stirling_ln_factorial(n: u64) -> f64 {
    if n == 0 {
        return f64::NEG_INFINITY;
    }
    let nf = n as f64;
    0.5 * (2.0 * PI * nf).ln() + nf * nf.ln() - nf
}

/// WKB phase `A(x) = -ln[e^{x^2/2} zeta(x)]`, which solves
/// `e^{A(x)} = x + A'(x)` and grows like `ln x`.
pub fn wkb_phase_a(x: f64) -> f64 {
    -(LN_SQRT_PI_2 + ln_erfcx(x / SQRT_2))
}
