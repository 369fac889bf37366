//! Independent contour-integral oracle for `P_n(x)/n!`.
//!
//! The generating function gives
//!
//! ```text
//! P_n(x)/n! = (n+1)/(2 pi i) * loop integral of
//!             S[N(x) + z N'(x)] z^{-(n+2)} dz
//! ```
//!
//! over a small circle around the origin, where `N` is the standard normal
//! CDF and `S` its inverse, `S(w) = sqrt(2) inverf(2w - 1)`. On a circle the
//! trapezoidal rule converges geometrically for analytic integrands, so a
//! few hundred nodes give desk-scale cross-validation of the exact
//! recurrence through an entirely different route.
//!
//! `S` is extended to complex arguments via Newton on the Maclaurin
//! continuation of erf, warm-started by continuation along the contour.
//! This keeps the oracle valid for n up to ~20 with the default half-radius;
//! it is a verification tool, not a production evaluator.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::logval::LogValue;
use crate::special::{erf, inverf, z0, z1};

use std::f64::consts::{FRAC_2_SQRT_PI, PI, SQRT_2};

/// Hard ceiling on trapezoidal nodes before the oracle reports failure.
const NODE_CEILING: usize = 1 << 14;

/// Relative bound on the imaginary part of the (real) result.
const IMAG_TOL: f64 = 1e-8;

/// Default node count: `max(256, 16 (n+2))`.
pub fn default_num_nodes(n: u64) -> usize {
    256usize.max(16 * (n as usize + 2))
}

/// erf of a complex argument by its Maclaurin series. Adequate to ~1e-13
/// for `|w| <= 3`, which covers every argument the oracle produces.
fn erf_complex(w: Complex64) -> Complex64 {
    let w2 = w * w;
    let mut term = w; // (-1)^k w^{2k+1} / k!
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..200 {
        let contrib = term / (2 * k + 1) as f64;
        sum += contrib;
        if contrib.norm() < 1e-18 * sum.norm().max(1e-300) {
            break;
        }
        term = -term * w2 / (k as f64 + 1.0);
    }
    sum * FRAC_2_SQRT_PI
}

/// Newton solve of `erf(zeta) = y` from a warm start.
fn inverf_complex(y: Complex64, start: Complex64) -> Result<Complex64> {
    let mut z = start;
    for _ in 0..60 {
        let f = erf_complex(z) - y;
        if f.norm() <= 1e-15 * (1.0 + y.norm()) {
            return Ok(z);
        }
        // erf'(z) = 2/sqrt(pi) e^{-z^2}
        let deriv = FRAC_2_SQRT_PI * (-z * z).exp();
        z -= f / deriv;
    }
    Err(Error::Convergence {
        op: "inverf_complex",
        iterations: 60,
        lo: y.re,
        hi: y.im,
        residual: (erf_complex(z) - y).norm(),
    })
}

/// Trapezoidal sum with the given node count; returns the complex estimate
/// of `P_n(x)/n!` plus the absolute sum of the quadrature terms, whose
/// roundoff is the noise floor for the imaginary-residual check.
fn trapezoid_pass(x: f64, n: u64, radius: f64, nodes: usize) -> Result<(Complex64, f64)> {
    let big_n = 0.5 * (1.0 + erf(x / SQRT_2));
    let big_n_prime = (-0.5 * x * x).exp() / (2.0 * PI).sqrt();

    // first node is real: start Newton from the real inverse
    let y0 = 2.0 * (big_n + radius * big_n_prime) - 1.0;
    let mut s_over_sqrt2 = Complex64::new(inverf(y0)?, 0.0);

    let r_pow = radius.powi(-(n as i32 + 1));
    let mut acc = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0); // Kahan compensation
    let mut abs_sum = 0.0f64;
    for j in 0..nodes {
        let theta = 2.0 * PI * j as f64 / nodes as f64;
        let z = Complex64::from_polar(radius, theta);
        let y = 2.0 * (big_n + z * big_n_prime) - 1.0;
        s_over_sqrt2 = inverf_complex(y, s_over_sqrt2)?;
        let s_val = SQRT_2 * s_over_sqrt2;
        let weight = Complex64::from_polar(r_pow, -(n as f64 + 1.0) * theta);
        let term = s_val * weight;
        abs_sum += term.norm();
        let y_k = term - comp;
        let t = acc + y_k;
        comp = (t - acc) - y_k;
        acc = t;
    }
    let factor = (n as f64 + 1.0) / nodes as f64;
    Ok((acc * factor, abs_sum * factor))
}

/// Evaluate `P_n(x)/n!` by contour quadrature.
///
/// The contour radius is `radius_fraction * min(|Z_0(x)|, |Z_1(x)|)`, which
/// keeps the circle strictly inside the disc where the integrand is
/// analytic (the nearest singularities of `S[N + z N']` sit exactly at
/// `z = Z_0` and `z = Z_1`). Node count starts at `num_nodes` and doubles
/// until the imaginary part of the nominally-real result drops below 1e-8
/// relative, up to a ceiling of 2^14 nodes.
pub fn contour_oracle(
    x: f64,
    n: u64,
    radius_fraction: f64,
    num_nodes: usize,
) -> Result<LogValue> {
    assert!((2..=20).contains(&n), "contour oracle supports 2 <= n <= 20");
    if !(radius_fraction > 0.0 && radius_fraction < 1.0) {
        return Err(Error::domain(
            "contour_oracle",
            format!("radius fraction {radius_fraction} outside (0, 1): contour would touch a singularity"),
        ));
    }
    let nearest = z1(x).to_f64().abs().min(z0(x).to_f64().abs());
    let radius = radius_fraction * nearest;

    let mut nodes = num_nodes.max(8);
    loop {
        let (value, abs_sum) = trapezoid_pass(x, n, radius, nodes)?;
        // an imaginary part below the summation's own roundoff proves
        // nothing about node count and is accepted as zero
        let noise_floor = 64.0 * f64::EPSILON * abs_sum;
        let tolerance = (IMAG_TOL * value.re.abs()).max(noise_floor);
        if value.im.abs() <= tolerance {
            return Ok(LogValue::from_f64(value.re));
        }
        if nodes >= NODE_CEILING {
            return Err(Error::QuadratureResidual {
                nodes,
                residual: value.im.abs(),
                tolerance,
            });
        }
        nodes *= 2;
    }
}
