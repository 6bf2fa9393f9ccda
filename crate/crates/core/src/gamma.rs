//! Complex log-gamma and digamma.
//!
//! `log_gamma` returns the analytic continuation of `ln Γ` from the positive
//! real axis into the plane cut along `(-∞, 0]`, the branch used by most
//! special-function libraries. On the cut itself the limit from above is
//! returned.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{check_finite, Error, Result};

pub(crate) const LN_2PI: f64 = 1.837_877_066_409_345_5;
const LN_PI: f64 = 1.144_729_885_849_400_2;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `B_{2k}` for `k = 1..=10`.
pub(crate) const BERNOULLI_EVEN: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

/// Below this modulus the argument is shifted up before the Stirling series.
const STIRLING_MIN: f64 = 15.0;

/// Relative distance to a nonpositive integer treated as a pole.
pub(crate) const POLE_TOL: f64 = 1e-9;

/// Returns `Some(k)` if `z` lies within the pole tolerance of `-k`.
pub(crate) fn near_gamma_pole(z: Complex64) -> Option<u64> {
    if z.re > 0.5 {
        return None;
    }
    let k = (-z.re).round();
    let d = (z + k).norm();
    if d < POLE_TOL * (1.0 + z.norm()) {
        Some(k as u64)
    } else {
        None
    }
}

/// Natural log of `Γ(z)` on the principal branch.
///
/// ```
/// use foxbarnes::gamma::log_gamma;
/// use num_complex::Complex64;
/// let v = log_gamma(Complex64::new(5.0, 0.0)).unwrap();
/// assert!((v.re - 24f64.ln()).abs() < 1e-14 && v.im == 0.0);
/// ```
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "log_gamma argument")?;
    if near_gamma_pole(z).is_some() {
        return Err(Error::GammaPole(z));
    }
    Ok(ln_gamma(z))
}

/// Unchecked log-gamma. Poles produce infinities.
pub(crate) fn ln_gamma(z: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re > 0.0 {
        return Complex64::new(ln_gamma_stirling(z).re, 0.0);
    }
    if z.re >= 0.5 {
        return ln_gamma_stirling(z);
    }
    // Reflection with the branch of ln sin(πz) that is analytic in the
    // closed upper half plane; the lower half plane follows by conjugation.
    if z.im < 0.0 {
        return ln_gamma(z.conj()).conj();
    }
    Complex64::new(LN_PI, 0.0) - ln_sin_pi_upper(z) - ln_gamma_stirling(1.0 - z)
}

/// `ln sin(πz)` for `Im z >= 0`, continuous in the closed upper half plane
/// and equal to the real log on `(0, 1)`.
fn ln_sin_pi_upper(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    let q = cexpm1(2.0 * PI * i * z);
    -i * PI * z + (-q).ln() + Complex64::new(-std::f64::consts::LN_2, PI / 2.0)
}

/// `e^w - 1` without cancellation for small `w`.
pub(crate) fn cexpm1(w: Complex64) -> Complex64 {
    let (s, c) = w.im.sin_cos();
    let h = (0.5 * w.im).sin();
    Complex64::new(w.re.exp_m1() * c - 2.0 * h * h, w.re.exp() * s)
}

fn ln_gamma_stirling(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    if w.norm() < STIRLING_MIN {
        let n = (STIRLING_MIN - w.re).ceil().max(0.0) as usize;
        for _ in 0..n {
            shift += w.ln();
            w += 1.0;
        }
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut term = inv;
    let mut series = Complex64::new(0.0, 0.0);
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k2 = 2.0 * (k as f64 + 1.0);
        series += term * (b / (k2 * (k2 - 1.0)));
        term *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * LN_2PI + series - shift
}

/// Digamma `ψ(z) = Γ'(z)/Γ(z)`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "digamma argument")?;
    if near_gamma_pole(z).is_some() {
        return Err(Error::GammaPole(z));
    }
    Ok(digamma_unchecked(z))
}

fn digamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        return digamma_unchecked(1.0 - z) - PI * cot_pi(z);
    }
    if z == Complex64::new(1.0, 0.0) {
        return Complex64::new(-EULER_GAMMA, 0.0);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    if w.norm() < STIRLING_MIN {
        let n = (STIRLING_MIN - w.re).ceil().max(0.0) as usize;
        for _ in 0..n {
            shift += w.inv();
            w += 1.0;
        }
    }
    let inv2 = (w * w).inv();
    let mut term = inv2;
    let mut series = Complex64::new(0.0, 0.0);
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        series += term * (b / (2.0 * (k as f64 + 1.0)));
        term *= inv2;
    }
    w.ln() - 0.5 * w.inv() - series - shift
}

fn cot_pi(z: Complex64) -> Complex64 {
    if z.im < 0.0 {
        return cot_pi(z.conj()).conj();
    }
    let q = (2.0 * PI * Complex64::i() * z).exp();
    // cot(πz) = -i (1 + q) / (1 - q) with |q| <= 1 in the upper half plane.
    -Complex64::i() * (1.0 + q) / (-cexpm1(2.0 * PI * Complex64::i() * z))
}
