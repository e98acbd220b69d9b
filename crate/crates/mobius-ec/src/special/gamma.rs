//! Complex log-gamma, digamma at integers, and the upper incomplete gamma
//! function Γ(s, x) for complex s and real x > 0.

use super::SpecialError;
use num_complex::Complex64;
use std::f64::consts::PI;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

// Lanczos coefficients, g = 7, n = 9 (GSL set).
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

const LN_SQRT_TWO_PI: f64 = 0.918_938_533_204_672_8;

fn is_nonpositive_integer(s: Complex64, tol: f64) -> Option<i64> {
    if s.im.abs() > tol {
        return None;
    }
    let r = s.re.round();
    if r <= 0.0 && (s.re - r).abs() <= tol {
        Some(r as i64)
    } else {
        None
    }
}

/// Principal-branch log Γ(s).
///
/// Lanczos approximation for Re s ≥ 0.5, reflection otherwise. The branch
/// is continuous off the cut (-∞, 0]; the negative real axis itself takes
/// the upper-side limit.
pub fn log_gamma(s: Complex64) -> Result<Complex64, SpecialError> {
    if is_nonpositive_integer(s, 1e-12).is_some() {
        return Err(SpecialError::Pole { what: "log_gamma", re: s.re, im: s.im });
    }
    if s.re >= 0.5 {
        return Ok(log_gamma_lanczos(s));
    }
    // Reflection: log Γ(s) = ln π − log sin(πs) − log Γ(1−s).
    let ln_pi = Complex64::new(PI.ln(), 0.0);
    Ok(ln_pi - log_sin_pi(s) - log_gamma_lanczos(Complex64::new(1.0, 0.0) - s))
}

fn log_gamma_lanczos(s: Complex64) -> Complex64 {
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (s + (i as f64 - 1.0));
    }
    let t = s + (LANCZOS_G - 0.5);
    LN_SQRT_TWO_PI + (s - 0.5) * t.ln() - t + x.ln()
}

/// log sin(πs) on the branch that keeps the reflected log Γ continuous
/// away from the real axis (imaginary part unwound, not principal).
pub(crate) fn log_sin_pi(s: Complex64) -> Complex64 {
    if s.im >= 0.0 {
        // sin(πs) = (i/2) e^{-iπs}(1 - e^{2πis})
        let q = (Complex64::i() * 2.0 * PI * s).exp();
        Complex64::new(-(2.0f64.ln()), PI / 2.0) - Complex64::i() * PI * s + (1.0 - q).ln()
    } else {
        log_sin_pi(s.conj()).conj()
    }
}

/// Γ(s) = exp(log Γ(s)).
pub fn gamma(s: Complex64) -> Result<Complex64, SpecialError> {
    Ok(log_gamma(s)?.exp())
}

/// ψ(n) for n ≥ 1: -γ + Σ_{k<n} 1/k.
pub fn digamma_int(n: u32) -> f64 {
    let mut r = -EULER_GAMMA;
    for k in 1..n {
        r += 1.0 / k as f64;
    }
    r
}

/// Upper incomplete gamma Γ(s, x) for complex s, real x > 0.
///
/// Continued fraction for x ≥ |s|+1 (and near the poles of Γ(s), where the
/// series split is unusable), series Γ(s) − γ(s, x) otherwise, and a
/// dedicated exponential-integral path for exactly nonpositive integer s.
pub fn upper_incomplete_gamma(s: Complex64, x: f64) -> Result<Complex64, SpecialError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecialError::Domain("upper_incomplete_gamma requires x > 0"));
    }
    if x > 700.0 {
        // e^{-x} underflows any double result we could represent meaningfully.
        return Ok(Complex64::ZERO);
    }
    if let Some(m) = is_nonpositive_integer(s, 1e-13) {
        return Ok(gamma_nonpositive_int(-m as u32, x));
    }
    let near_pole = s.re < 0.5 && {
        let r = s.re.round();
        r <= 0.0 && (s.re - r).abs() < 0.05 && s.im.abs() < 0.05
    };
    if near_pole {
        if x >= 0.25 {
            return gamma_cf(s, x);
        }
        return Err(SpecialError::Domain(
            "Γ(s,x) not supported for s this close to a nonpositive integer with x < 0.25",
        ));
    }
    if x >= s.norm() + 1.0 {
        gamma_cf(s, x)
    } else {
        gamma_series(s, x)
    }
}

/// Γ(-m, x) for integer m ≥ 0 via E₁ and downward recurrence.
fn gamma_nonpositive_int(m: u32, x: f64) -> Complex64 {
    let mut g = exp_int_e1(x);
    let emx = (-x).exp();
    let mut xp = 1.0 / x; // x^{-(k+1)} during the loop below
    for k in 0..m {
        // Γ(s-1, x) = (Γ(s, x) - x^{s-1} e^{-x}) / (s - 1) at s = -k
        g = (g - xp * emx) / -((k + 1) as f64);
        xp /= x;
    }
    Complex64::new(g, 0.0)
}

/// E₁(x) = Γ(0, x), x > 0.
fn exp_int_e1(x: f64) -> f64 {
    if x <= 1.5 {
        let mut sum = -EULER_GAMMA - x.ln();
        let mut term = 1.0;
        for k in 1..=60 {
            term *= -x / k as f64;
            let add = -term / k as f64;
            sum += add;
            if add.abs() < 1e-17 * sum.abs().max(1e-300) {
                break;
            }
        }
        sum
    } else {
        // Lentz continued fraction: E₁(x) = e^{-x}/(x+1-1/(x+3-4/(x+5-...)))
        let tiny = 1e-300;
        let mut b = x + 1.0;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..=200 {
            let a = -(i as f64) * (i as f64);
            b += 2.0;
            d = a * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + a / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                break;
            }
        }
        (-x).exp() * h
    }
}

/// Continued fraction for Γ(s, x) (modified Lentz).
fn gamma_cf(s: Complex64, x: f64) -> Result<Complex64, SpecialError> {
    let tiny = Complex64::new(1e-300, 0.0);
    let mut b = Complex64::new(x + 1.0, 0.0) - s;
    let mut c = Complex64::new(1e300, 0.0);
    let mut d = if b.norm() < 1e-300 { 1.0 / tiny } else { 1.0 / b };
    let mut h = d;
    let mut converged = false;
    for i in 1..=3000 {
        let an = -(i as f64) * (Complex64::new(i as f64, 0.0) - s);
        b += 2.0;
        d = an * d + b;
        if d.norm() < 1e-300 {
            d = tiny;
        }
        c = b + an / c;
        if c.norm() < 1e-300 {
            c = tiny;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SpecialError::ConvergenceFailure("incomplete-gamma continued fraction"));
    }
    Ok((s * x.ln() - x).exp() * h)
}

/// Series route: Γ(s, x) = Γ(s) − γ(s, x).
fn gamma_series(s: Complex64, x: f64) -> Result<Complex64, SpecialError> {
    let mut term = 1.0 / s;
    let mut sum = term;
    let mut converged = false;
    for k in 1..=500 {
        term *= x / (s + k as f64);
        sum += term;
        if term.norm() < 1e-17 * sum.norm().max(1e-300) {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(SpecialError::ConvergenceFailure("incomplete-gamma series"));
    }
    let lower = (s * x.ln() - x).exp() * sum;
    Ok(gamma(s)? - lower)
}
