//! Numerical verification of the ray construction behind `psi4`.
//!
//! The characteristic system for the eikonal equation
//! `p - e^q + (n+1)x = 0` has the closed-form solution
//!
//! ```text
//! x = t + s
//! n = -sqrt(pi/2) s e^{s^2/2} [erf(x/sqrt2) - erf(s/sqrt2)]
//! p = -n x + e^q - x
//! q = -t^2/2 - s t + ln s
//! f = -n [1 + t^2/2 + s t - ln s] - (t^2/2 + s t) + f0
//! J = (s + 1/s) n + s,   g = (1/2) ln(s/J)
//! ```
//!
//! with `f0 = ln(e^{-1} sqrt(2 pi))`. The checks in this module confirm,
//! by finite differences, that the closed forms satisfy the eikonal,
//! characteristic, Jacobian and transport equations: the residuals are pure
//! roundoff plus differencing error.

use crate::special::scaled_tail_integral;

/// `f(0, s) = f0 = ln(e^{-1} sqrt(2 pi))`, the ray-initial phase fixed by
/// matching to `P_n(x) ~ n! x^n`.
pub const F0: f64 = -0.081_061_466_795_327_26;

/// A point on a characteristic, with every derived field filled in.
/// `n` is real-valued along rays; integer n only appears where a ray
/// passes through a lattice point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayState {
    pub t: f64,
    pub s: f64,
    pub x: f64,
    pub n: f64,
    pub p: f64,
    pub q: f64,
    pub f: f64,
    pub g: f64,
    pub j: f64,
}

/// `(x, n)` along the ray launched at `s`, valid for any real `s`
/// (including the degenerate `s = 0` ray, which stays on `n = 0`).
pub fn ray_xn(t: f64, s: f64) -> (f64, f64) {
    let x = t + s;
    let n = -s * scaled_tail_integral(s, x);
    (x, n)
}

/// Evaluate every ray field at `(t, s)`. The positive launch family only;
/// negative-s rays are the mirror image under `(x, s) -> (-x, -s)`.
///
/// `g` uses `ln|s/J|`: `J` changes sign along each ray (it crosses zero
/// where the ray map folds), and the transport identity
/// `dg/dt = -(1/2J) dJ/dt` is insensitive to the constant branch term.
pub fn ray_state(t: f64, s: f64) -> RayState {
    assert!(s > 0.0, "ray_state needs a positive launch parameter");
    let (x, n) = ray_xn(t, s);
    let q = -0.5 * t * t - s * t + s.ln();
    let eq = q.exp();
    let p = -n * x + eq - x;
    let f = -n * (1.0 + 0.5 * t * t + s * t - s.ln()) - (0.5 * t * t + s * t) + F0;
    let j = (s + 1.0 / s) * n + s;
    let g = 0.5 * (s / j).abs().ln();
    RayState {
        t,
        s,
        x,
        n,
        p,
        q,
        f,
        g,
        j,
    }
}

/// Eikonal residual `F = p - e^q + (n+1) x` at a ray point. The contract is
/// `|F| <= 1e-10 * (1 + |p| + e^q + (n+1)|x|)`.
pub fn check_eikonal(state: &RayState) -> f64 {
    state.p - state.q.exp() + (state.n + 1.0) * state.x
}

/// Central-difference residuals of the characteristic system along a ray:
/// `d/dt (x, n, p, q, f)` minus `(1, -e^q, -(n+1), -x, p - q e^q)`.
pub fn check_characteristics(state: &RayState, h: f64) -> [f64; 5] {
    let plus = ray_state(state.t + h, state.s);
    let minus = ray_state(state.t - h, state.s);
    let d = |a: f64, b: f64| (a - b) / (2.0 * h);
    let eq = state.q.exp();
    [
        d(plus.x, minus.x) - 1.0,
        d(plus.n, minus.n) + eq,
        d(plus.p, minus.p) + state.n + 1.0,
        d(plus.q, minus.q) + state.x,
        d(plus.f, minus.f) - (state.p - state.q * eq),
    ]
}

/// Jacobian residual: finite-difference `dn/ds - dn/dt` against the closed
/// form `J = (s + 1/s) n + s`.
pub fn check_jacobian(t: f64, s: f64, h: f64) -> f64 {
    let dn_ds = (ray_xn(t, s + h).1 - ray_xn(t, s - h).1) / (2.0 * h);
    let dn_dt = (ray_xn(t + h, s).1 - ray_xn(t - h, s).1) / (2.0 * h);
    let closed = ray_state(t, s).j;
    (dn_ds - dn_dt) - closed
}

/// Transport residual `dg/dt + (1/2J) dJ/dt` by finite differences.
///
/// Fourth-order stencils: the grid passes close to zeros of J, where
/// `g = (1/2) ln|s/J|` has derivatives growing like `(J'/J)^k`, and a
/// second-order difference cannot reach the 1e-7 contract there.
pub fn check_transport(t: f64, s: f64, h: f64) -> f64 {
    let d4 = |v: [f64; 4]| (-v[3] + 8.0 * v[2] - 8.0 * v[1] + v[0]) / (12.0 * h);
    let at = |dt: f64| ray_state(t + dt, s);
    let dg_dt = d4([at(-2.0 * h).g, at(-h).g, at(h).g, at(2.0 * h).g]);
    let dj_dt = d4([at(-2.0 * h).j, at(-h).j, at(h).j, at(2.0 * h).j]);
    let j = ray_state(t, s).j;
    dg_dt + dj_dt / (2.0 * j)
}

/// Grid used by the residual suites: t in {0, 0.25, ..., 3},
/// s in {0.25, 0.5, 1, 2, 4}.
pub fn verification_grid() -> Vec<(f64, f64)> {
    let svals = [0.25, 0.5, 1.0, 2.0, 4.0];
    let mut grid = Vec::new();
    for k in 0..=12 {
        let t = k as f64 * 0.25;
        for &s in &svals {
            grid.push((t, s));
        }
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::{solve_saddle, SaddleBranch};

    const H: f64 = 1e-5;

    #[test]
    fn launch_conditions() {
        // at t = 0: n = 0, J = s, g = 0, q = ln s, f = f0
        for &s in &[0.25, 1.0, 3.0] {
            let st = ray_state(0.0, s);
            assert_eq!(st.n, 0.0);
            assert!((st.j - s).abs() < 1e-15);
            assert_eq!(st.g, 0.0);
            assert!((st.q - s.ln()).abs() < 1e-15);
            assert!((st.f - F0).abs() < 1e-15);
        }
        // q(1,1) = -3/2
        assert!((ray_state(1.0, 1.0).q + 1.5).abs() < 1e-15);
        // direct evaluation of the ray formula for n(1,1)
        assert!((ray_state(1.0, 1.0).n - (-0.561659358806)).abs() < 1e-11);
    }

    #[test]
    fn eikonal_residuals() {
        // t = 0: F = 0 - s + s, roundoff only
        let st = ray_state(0.0, 1.7);
        assert!(check_eikonal(&st).abs() < 1e-14);
        for (t, s) in verification_grid() {
            let st = ray_state(t, s);
            let scale = 1.0 + st.p.abs() + st.q.exp() + (st.n + 1.0) * st.x.abs();
            let f = check_eikonal(&st);
            assert!(
                f.abs() <= 1e-10 * scale,
                "eikonal residual {f:e} at (t, s) = ({t}, {s})"
            );
        }
    }

    #[test]
    fn characteristic_residuals() {
        for (t, s) in verification_grid() {
            let st = ray_state(t, s);
            let r = check_characteristics(&st, H);
            for (i, ri) in r.iter().enumerate() {
                assert!(
                    ri.abs() <= 1e-8,
                    "characteristic residual {i} = {ri:e} at (t, s) = ({t}, {s})"
                );
            }
        }
        // spot checks at named points
        let r = check_characteristics(&ray_state(1.0, 1.0), H);
        assert!(r[0].abs() < 1e-10);
        assert!(r[1].abs() <= 1e-8);
        let r = check_characteristics(&ray_state(0.5, 1.5), H);
        assert!(r[4].abs() <= 1e-8);
    }

    #[test]
    fn jacobian_residuals() {
        for (t, s) in verification_grid() {
            let j = ray_state(t, s).j;
            let r = check_jacobian(t, s, H);
            assert!(
                r.abs() <= 1e-7 * (1.0 + j.abs()),
                "jacobian residual {r:e} at (t, s) = ({t}, {s})"
            );
        }
    }

    #[test]
    fn transport_residuals() {
        for (t, s) in verification_grid() {
            let r = check_transport(t, s, H);
            assert!(
                r.abs() <= 1e-7,
                "transport residual {r:e} at (t, s) = ({t}, {s})"
            );
        }
        // off-grid spot checks, including a small launch parameter
        for &(t, s) in &[(1.0, 1.0), (0.5, 2.0), (2.0, 0.3)] {
            assert!(check_transport(t, s, H).abs() <= 1e-7);
        }
    }

    #[test]
    fn f_reconstruction() {
        // f from the t-form equals [ln s - 1] n + (s^2 - x^2)(n+1)/2 + f0
        for (t, s) in verification_grid() {
            let st = ray_state(t, s);
            let direct =
                (s.ln() - 1.0) * st.n + 0.5 * (s * s - st.x * st.x) * (st.n + 1.0) + F0;
            assert!(
                (st.f - direct).abs() <= 1e-10 * (1.0 + st.f.abs()),
                "f mismatch at (t, s) = ({t}, {s}): {} vs {direct}",
                st.f
            );
        }
    }

    #[test]
    fn ray_saddle_consistency() {
        // walk a ray backwards to integer n, then the saddle solver must
        // recover the launch parameter: the saddle equation is exactly the
        // t-elimination of the ray solution
        for &s in &[1.5, 2.0, 3.0] {
            for &m in &[2.0, 5.0] {
                // bisect t < 0 with n(t, s) = m
                let (mut lo, mut hi) = (-s + 1e-9, 0.0);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if ray_xn(mid, s).1 >= m {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let t = 0.5 * (lo + hi);
                let x = t + s;
                let root = solve_saddle(x, m as u64, SaddleBranch::Positive).unwrap();
                assert!(
                    (root.s - s).abs() <= 1e-8,
                    "saddle {} vs launch {s} at n = {m}",
                    root.s
                );
            }
        }
    }

    #[test]
    fn mirror_map_for_negative_launch() {
        // (x, s) -> (-x, -s) maps rays onto rays
        for &(t, s) in &[(0.5, 1.0), (1.5, 0.5), (-0.7, 2.0)] {
            let (x, n) = ray_xn(t, s);
            let (xm, nm) = ray_xn(-t, -s);
            assert!((xm + x).abs() < 1e-14);
            assert!((nm - n).abs() <= 1e-13 * (1.0 + n.abs()));
        }
        // degenerate launch stays on n = 0
        let (x, n) = ray_xn(0.8, 0.0);
        assert_eq!(x, 0.8);
        assert_eq!(n, 0.0);
    }
}
