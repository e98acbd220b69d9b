//! Möbius function of an elliptic curve over ℚ.
//!
//! Given a short Weierstrass curve `y² = x³ + ax + b` with integer
//! coefficients and known conductor, this crate computes
//!
//! * exact Dirichlet coefficients `a_n` of `L(s,E)` and the Möbius
//!   coefficients `μ_E(n)` of `1/L(s+1/2,E)`, with `μ_E(n)` kept in the
//!   exact form `c/√s` (integer `c`, squarefree `s`),
//! * `L(s,E)` and the completed function `Λ(s)` anywhere in the plane via
//!   an incomplete-gamma smoothed sum, including root-number detection and
//!   location of real zeros of `L(s+1/2,E)` in `(0,1)`,
//! * the contour integral `m(z,E)` of `e^{sz}/L(s+1/2,E)` together with its
//!   closed-form counterpart in the strip `|Im z| < 2π` (a regularized
//!   Hankel series plus residue and auxiliary integral terms), and
//! * verification suites for the functional equation, the explicit formula,
//!   the pole residues `-μ_E(n)/(2πi)` at `z = log n`, and the
//!   Mellin–Bessel residue identities behind them.
//!
//! The `cli` module exposes the same functionality as a command-line tool
//! with CSV/JSON output; see the README for the command reference.

pub mod coeffs;
pub mod cli;
pub mod curve;
pub mod explicit;
pub mod lfunc;
pub mod quad;
pub mod special;

pub use num_complex::Complex64;
