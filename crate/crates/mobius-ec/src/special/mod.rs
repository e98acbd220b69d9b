//! Complex special functions: Bessel/Hankel functions of orders 0 and 1,
//! complex log-gamma, the upper incomplete gamma function, and the stable
//! form of the tan(πs) − i contour kernel.

mod bessel;
mod gamma;

pub use bessel::{
    bessel_j0, bessel_j1, bessel_y0, bessel_y1, hankel2_1, hankel2_1_regularized,
};
pub use gamma::{digamma_int, gamma, log_gamma, upper_incomplete_gamma, EULER_GAMMA};
pub(crate) use gamma::log_sin_pi;

use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Debug, thiserror::Error)]
pub enum SpecialError {
    #[error("domain error: {0}")]
    Domain(&'static str),
    #[error("{what} has a pole at {re}+{im}i")]
    Pole { what: &'static str, re: f64, im: f64 },
    #[error("overflow in special-function evaluation")]
    Overflow,
    #[error("no convergence in {0}")]
    ConvergenceFailure(&'static str),
}

/// tan(πs) − i in the algebraically equivalent form −2i e^{2πis}/(1 + e^{2πis}).
///
/// Decays like 2 e^{−2π Im s} as Im s → +∞ instead of cancelling two
/// O(1) quantities. Poles (s = k + 1/2 on the real axis) are reported.
pub fn tan_pi_minus_i(s: Complex64) -> Result<Complex64, SpecialError> {
    if s.im >= 0.0 {
        let q = (Complex64::i() * 2.0 * PI * s).exp();
        let denom = 1.0 + q;
        if denom.norm() < 1e-12 {
            return Err(SpecialError::Pole { what: "tan(πs)", re: s.re, im: s.im });
        }
        Ok(-2.0 * Complex64::i() * q / denom)
    } else {
        let q = (-Complex64::i() * 2.0 * PI * s).exp();
        let denom = 1.0 + q;
        if denom.norm() < 1e-12 {
            return Err(SpecialError::Pole { what: "tan(πs)", re: s.re, im: s.im });
        }
        Ok(-2.0 * Complex64::i() / denom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kernel_fixed_points() {
        // tan(0) - i = -i
        let v = tan_pi_minus_i(Complex64::ZERO).unwrap();
        assert!((v - c(0.0, -1.0)).norm() < 1e-15);
        // tan(π/4) - i = 1 - i
        let v = tan_pi_minus_i(c(0.25, 0.0)).unwrap();
        assert!((v - c(1.0, -1.0)).norm() < 1e-14);
    }

    #[test]
    fn kernel_decay_up_the_imaginary_axis() {
        let v = tan_pi_minus_i(c(0.0, 5.0)).unwrap();
        let expect = 2.0 * (-2.0 * PI * 5.0).exp();
        assert!((v.norm() - expect).abs() < 1e-15 * expect.max(1.0) + 1e-27);
    }

    #[test]
    fn kernel_matches_direct_tan() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let mut checked = 0;
        while checked < 100 {
            let s = c(rng.random::<f64>() * 6.0 - 3.0, rng.random::<f64>() * 6.0 - 3.0);
            // stay away from the real-axis poles at half-integers
            if s.im.abs() < 0.05 && (s.re - (s.re - 0.5).round() - 0.5).abs() < 0.05 {
                continue;
            }
            let direct = (PI * s).tan() - Complex64::i();
            let stable = tan_pi_minus_i(s).unwrap();
            assert!((direct - stable).norm() <= 1e-12 * (1.0 + direct.norm()), "s={s}");
            checked += 1;
        }
    }

    #[test]
    fn kernel_pole_detection() {
        assert!(tan_pi_minus_i(c(0.5, 0.0)).is_err());
        assert!(tan_pi_minus_i(c(1.5, 0.0)).is_err());
        assert!(tan_pi_minus_i(c(0.5, 0.5)).is_ok());
    }
}
