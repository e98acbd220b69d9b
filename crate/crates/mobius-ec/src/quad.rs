//! Adaptive Gauss–Kronrod quadrature for complex-valued integrands.
//!
//! One 15-point rule evaluated on recursively bisected panels. The
//! integrand is a complex-valued function of a real parameter; straight
//! contour segments are integrated by pulling back to `[0,1]`.

use num_complex::Complex64;

/// Kronrod abscissae for the 15-point rule (positive half, descending).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

/// Gauss weights for the embedded 7-point rule.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Kronrod weights for the 15-point rule.
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    /// Estimated absolute error.
    pub error: f64,
    pub evals: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum QuadError {
    #[error("quadrature did not converge: error estimate {error:.3e} exceeds tolerance {tol:.3e}")]
    NotConverged { error: f64, tol: f64 },
    #[error("integrand returned a non-finite value")]
    NonFinite,
}

/// One Gauss–Kronrod 15 panel on `[a, b]`; returns (kronrod value, error estimate).
fn gk15<F: FnMut(f64) -> Complex64>(f: &mut F, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut res_g = fc * WG[3];
    let mut res_k = fc * WGK[7];
    for (j, &x) in XGK.iter().enumerate().take(7) {
        let dx = half * x;
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        let sum = f1 + f2;
        if j % 2 != 0 {
            res_g += sum * WG[j / 2];
        }
        res_k += sum * WGK[j];
    }
    let err = ((res_k - res_g) * half).norm();
    (res_k * half, err)
}

/// Adaptive integration of a complex-valued function over a real interval.
///
/// Panels are bisected (left first, deterministically) until each panel's
/// Kronrod error estimate is below its share of `tol`, scaled by panel width.
pub fn integrate<F: FnMut(f64) -> Complex64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadResult, QuadError> {
    const MAX_DEPTH: u32 = 52;
    let width = (b - a).abs();
    if width == 0.0 {
        return Ok(QuadResult { value: Complex64::ZERO, error: 0.0, evals: 0 });
    }
    let mut value = Complex64::ZERO;
    let mut ksum = (0.0, 0.0); // Neumaier compensation per component
    let mut error = 0.0;
    let mut evals = 0usize;
    // Explicit stack keeps recursion order deterministic.
    let mut stack: Vec<(f64, f64, u32)> = vec![(a, b, 0)];
    while let Some((lo, hi, depth)) = stack.pop() {
        let (v, e) = gk15(&mut f, lo, hi);
        evals += 15;
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(QuadError::NonFinite);
        }
        let share = tol * ((hi - lo).abs() / width).max(1e-3);
        if e <= share || depth >= MAX_DEPTH {
            neumaier_add(&mut value, &mut ksum, v);
            error += e;
            continue;
        }
        let mid = 0.5 * (lo + hi);
        // Push right first so the left half is processed first.
        stack.push((mid, hi, depth + 1));
        stack.push((lo, mid, depth + 1));
    }
    if error > tol * 16.0 {
        return Err(QuadError::NotConverged { error, tol });
    }
    Ok(QuadResult { value, error, evals })
}

/// Integral of `f(s) ds` along the straight segment from `z0` to `z1`.
pub fn integrate_segment<F: FnMut(Complex64) -> Complex64>(
    mut f: F,
    z0: Complex64,
    z1: Complex64,
    tol: f64,
) -> Result<QuadResult, QuadError> {
    let dir = z1 - z0;
    if dir.norm() == 0.0 {
        return Ok(QuadResult { value: Complex64::ZERO, error: 0.0, evals: 0 });
    }
    // Normalize the tolerance to the parametrized integrand's scale.
    let mut r = integrate(|t| f(z0 + dir * t) * dir, 0.0, 1.0, tol)?;
    r.error *= 1.0; // error already includes |dir| through the integrand
    Ok(r)
}

fn neumaier_add(sum: &mut Complex64, comp: &mut (f64, f64), x: Complex64) {
    let t_re = sum.re + x.re;
    comp.0 += if sum.re.abs() >= x.re.abs() { (sum.re - t_re) + x.re } else { (x.re - t_re) + sum.re };
    let t_im = sum.im + x.im;
    comp.1 += if sum.im.abs() >= x.im.abs() { (sum.im - t_im) + x.im } else { (x.im - t_im) + sum.im };
    *sum = Complex64::new(t_re, t_im);
    // Fold compensation back in; keeps `sum` usable incrementally.
    if comp.0.abs() > 1e250 || comp.1.abs() > 1e250 {
        sum.re += comp.0;
        sum.im += comp.1;
        *comp = (0.0, 0.0);
    }
}

/// Compensated (Neumaier) summation in a fixed order.
pub fn compensated_sum<I: IntoIterator<Item = Complex64>>(items: I) -> Complex64 {
    let mut sum = Complex64::ZERO;
    let mut comp = (0.0, 0.0);
    for x in items {
        neumaier_add(&mut sum, &mut comp, x);
    }
    Complex64::new(sum.re + comp.0, sum.im + comp.1)
}
