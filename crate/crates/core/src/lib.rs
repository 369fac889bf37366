//! Exact and asymptotic evaluation of the polynomial family generated by
//!
//! ```text
//! P_0(x) = 1,    P_{n+1}(x) = P_n'(x) + x (n+1) P_n(x),
//! ```
//!
//! which encodes the derivatives of the inverse error function through
//! `I^(n)(0) = (1/sqrt 2) (pi/2)^{n/2} P_{n-1}(0)`.
//!
//! The crate has four layers:
//!
//! * [`poly`] — exact integer/rational computation of the family and of the
//!   inverse-error-function derivatives at the origin;
//! * [`special`] — the floating-point special functions every asymptotic
//!   formula needs (erf/erfc/erfcx, the Gaussian tail `zeta`, inverse erf,
//!   Lambert W, Stirling, the WKB phase);
//! * [`asymptotics`] — the four large-n approximations `psi1`..`psi4` of
//!   `P_n(x)/n!` plus the saddle-point machinery behind the ray form;
//! * [`ray`] and [`contour`] — independent verification: finite-difference
//!   residuals of the ray construction, and a contour-integral oracle for
//!   `P_n(x)/n!` evaluated through the generating function.
//!
//! Everything that grows factorially is carried as a [`LogValue`]
//! (sign, natural log of magnitude); linear values are materialized only on
//! output.

pub mod asymptotics;
pub mod contour;
mod error;
mod logval;
pub mod poly;
pub mod ray;
pub mod special;

pub use error::{Error, Result};
pub use logval::LogValue;
