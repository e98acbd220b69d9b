//! Complex-argument Bessel functions of order 0 and 1: J, Y, the Hankel
//! function H₁⁽²⁾ and its regularized form H₁⁽²⁾(w) − 2i/(πw).
//!
//! Ascending series up to |w| = 12, large-argument Hankel asymptotics
//! beyond. Principal branch throughout; the negative real axis evaluates
//! on its upper side.

use super::gamma::{digamma_int, EULER_GAMMA};
use super::SpecialError;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Series/asymptotic crossover radius.
const SWITCH_RADIUS: f64 = 12.0;

/// log(w/2) with arguments on the negative real axis pushed to the upper side.
fn ln_half(w: Complex64) -> Complex64 {
    let h = w / 2.0;
    if h.im == 0.0 && h.re < 0.0 {
        Complex64::new(h.re, 0.0).ln() // arg = +π with num-complex
    } else {
        h.ln()
    }
}

pub fn bessel_j0(w: Complex64) -> Complex64 {
    if w.norm() > SWITCH_RADIUS {
        return jy_large(0, w).0;
    }
    let q = -(w / 2.0) * (w / 2.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    for k in 1..=60 {
        term *= q / ((k * k) as f64);
        sum += term;
        if term.norm() < 1e-18 * sum.norm().max(1e-280) {
            break;
        }
    }
    sum
}

pub fn bessel_j1(w: Complex64) -> Complex64 {
    if w.norm() > SWITCH_RADIUS {
        return jy_large(1, w).0;
    }
    j1_series(w)
}

fn j1_series(w: Complex64) -> Complex64 {
    let half = w / 2.0;
    let q = -half * half;
    let mut term = half;
    let mut sum = term;
    for k in 1..=60 {
        term *= q / ((k * (k + 1)) as f64);
        sum += term;
        if term.norm() < 1e-18 * sum.norm().max(1e-280) {
            break;
        }
    }
    sum
}

pub fn bessel_y0(w: Complex64) -> Result<Complex64, SpecialError> {
    if w.norm() == 0.0 {
        return Err(SpecialError::Domain("Y0 is singular at w = 0"));
    }
    if w.norm() > SWITCH_RADIUS {
        return Ok(jy_large(0, w).1);
    }
    // Y0 = (2/π)(ln(w/2) + γ) J0 + (2/π) Σ_{k≥1} (-1)^{k+1} H_k (w/2)^{2k} / (k!)²
    let j0 = bessel_j0(w);
    let q = -(w / 2.0) * (w / 2.0);
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = Complex64::ZERO;
    let mut harmonic = 0.0;
    for k in 1..=60 {
        term *= q / ((k * k) as f64);
        harmonic += 1.0 / k as f64;
        let add = -term * harmonic; // (-1)^{k+1} (w/2)^{2k}/(k!)² = -term
        sum += add;
        if add.norm() < 1e-18 * sum.norm().max(1e-280) {
            break;
        }
    }
    Ok((2.0 / PI) * ((ln_half(w) + EULER_GAMMA) * j0 + sum))
}

pub fn bessel_y1(w: Complex64) -> Result<Complex64, SpecialError> {
    if w.norm() == 0.0 {
        return Err(SpecialError::Domain("Y1 is singular at w = 0"));
    }
    if w.norm() > SWITCH_RADIUS {
        return Ok(jy_large(1, w).1);
    }
    // Y1 = (2/π) ln(w/2) J1 - 2/(πw) - (1/π) Σ_k (-1)^k [ψ(k+1)+ψ(k+2)] (w/2)^{2k+1}/(k!(k+1)!)
    let j1 = bessel_j1(w);
    Ok((2.0 / PI) * ln_half(w) * j1 - 2.0 / (PI * w) - digamma_series(w) / PI)
}

/// Σ_{k≥0} (-1)^k [ψ(k+1)+ψ(k+2)] (w/2)^{2k+1} / (k!(k+1)!)
fn digamma_series(w: Complex64) -> Complex64 {
    let half = w / 2.0;
    let q = -half * half;
    let mut base = half; // (-1)^k (w/2)^{2k+1}/(k!(k+1)!)
    let mut sum = base * (digamma_int(1) + digamma_int(2));
    for k in 1..=60 {
        base *= q / ((k * (k + 1)) as f64);
        let add = base * (digamma_int(k as u32 + 1) + digamma_int(k as u32 + 2));
        sum += add;
        if add.norm() < 1e-18 * sum.norm().max(1e-280) {
            break;
        }
    }
    sum
}

/// H₁⁽²⁾(w) = J₁(w) − iY₁(w).
pub fn hankel2_1(w: Complex64) -> Result<Complex64, SpecialError> {
    Ok(bessel_j1(w) - Complex64::i() * bessel_y1(w)?)
}

/// H₁⁽²⁾(w) − 2i/(πw), regularized so the Laurent pole cancels symbolically.
///
/// For |w| ≤ 1 the 1/w term never appears: the ascending series of
/// Y₁(w) + 2/(πw) is summed directly, so the result decays like O(w log w)
/// instead of suffering catastrophic cancellation.
pub fn hankel2_1_regularized(w: Complex64) -> Result<Complex64, SpecialError> {
    if w.norm() == 0.0 {
        return Err(SpecialError::Domain("regularized Hankel undefined at w = 0"));
    }
    if w.norm() <= 1.0 {
        Ok(regularized_series(w))
    } else {
        Ok(hankel2_1(w)? - 2.0 * Complex64::i() / (PI * w))
    }
}

/// J1 - i(Y1 + 2/(πw)) with Y1 + 2/(πw) = (2/π) ln(w/2) J1 - S/π summed
/// without ever forming the 1/w term.
fn regularized_series(w: Complex64) -> Complex64 {
    let j1 = bessel_j1(w);
    j1 * (1.0 - Complex64::i() * (2.0 / PI) * ln_half(w))
        + Complex64::i() / PI * digamma_series(w)
}

/// (J_ν, Y_ν) for |w| beyond the series radius.
///
/// The Hankel expansions lose accuracy past |arg w| = π/2, so the left
/// half-plane is folded back with J_n(we^{±iπ}) = (-1)^n J_n(w) and
/// Y_n(we^{±iπ}) = (-1)^n (Y_n(w) ± 2i J_n(w)).
fn jy_large(nu: u32, w: Complex64) -> (Complex64, Complex64) {
    if w.re >= 0.0 {
        return jy_asymptotic_core(nu, w);
    }
    let sign = if nu % 2 == 0 { 1.0 } else { -1.0 };
    let (j, y) = jy_asymptotic_core(nu, -w);
    if w.im >= 0.0 {
        (sign * j, sign * (y + 2.0 * Complex64::i() * j))
    } else {
        (sign * j, sign * (y - 2.0 * Complex64::i() * j))
    }
}

fn jy_asymptotic_core(nu: u32, w: Complex64) -> (Complex64, Complex64) {
    let (h1, h2) = hankel_asymptotic(nu, w);
    ((h1 + h2) / 2.0, (h1 - h2) / (2.0 * Complex64::i()))
}

/// Large-argument Hankel expansions (H⁽¹⁾, H⁽²⁾) of order `nu` ∈ {0, 1}.
fn hankel_asymptotic(nu: u32, w: Complex64) -> (Complex64, Complex64) {
    let mu = 4.0 * (nu * nu) as f64;
    let omega = w - (nu as f64) * PI / 2.0 - PI / 4.0;
    // Σ i^k a_k / w^k and Σ (-i)^k a_k / w^k with optimal truncation
    let mut sum1 = Complex64::new(1.0, 0.0);
    let mut sum2 = sum1;
    let mut a = 1.0; // a_k(ν)
    let mut pow1 = Complex64::new(1.0, 0.0);
    let mut pow2 = pow1;
    let mut last = f64::INFINITY;
    for k in 1..=40 {
        let kk = k as f64;
        a *= (mu - (2.0 * kk - 1.0).powi(2)) / (kk * 8.0);
        pow1 *= Complex64::i() / w;
        pow2 *= -Complex64::i() / w;
        let t1 = pow1 * a;
        let mag = t1.norm();
        if mag > last {
            break; // divergent asymptotic series: stop at the smallest term
        }
        sum1 += t1;
        sum2 += pow2 * a;
        last = mag;
        if mag < 1e-18 {
            break;
        }
    }
    let prefactor = (2.0 / (PI * w)).sqrt();
    let h1 = prefactor * (Complex64::i() * omega).exp() * sum1;
    let h2 = prefactor * (-Complex64::i() * omega).exp() * sum2;
    (h1, h2)
}
