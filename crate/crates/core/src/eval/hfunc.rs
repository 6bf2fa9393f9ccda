//! Fox H-function by Mellin–Barnes quadrature over gamma functions only.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use super::contour::{integrate_pieces, ContourSpec, QuadResult};
use super::decay::{gamma_product_profile, GammaFactor};
use crate::error::{check_finite, Error, Result};
use crate::gamma::log_gamma;
use crate::params::{choose_abscissa, ContourKind, HParams};

/// Relative size below which `Δ*` counts as zero.
const ZERO_TOL: f64 = 1e-12;

fn factors(hp: &HParams) -> Vec<GammaFactor> {
    let one = Complex64::new(1.0, 0.0);
    let (m, n) = (hp.m(), hp.n());
    let mut out = Vec::with_capacity(hp.p() + hp.q());
    for (i, g) in hp.lower().iter().enumerate() {
        if i < m {
            out.push(GammaFactor { sign: 1.0, kappa: g.alpha, u: g.a });
        } else {
            out.push(GammaFactor { sign: -1.0, kappa: -g.alpha, u: one - g.a });
        }
    }
    for (i, g) in hp.upper().iter().enumerate() {
        if i < n {
            out.push(GammaFactor { sign: 1.0, kappa: -g.alpha, u: one - g.a });
        } else {
            out.push(GammaFactor { sign: -1.0, kappa: g.alpha, u: g.a });
        }
    }
    out
}

fn log_integrand(list: &[GammaFactor], s: Complex64, log_w: Complex64) -> Result<Complex64> {
    let mut acc = -s * log_w;
    for f in list {
        match log_gamma(f.u + f.kappa * s) {
            Ok(l) => acc += f.sign * l,
            Err(Error::GammaPole(_)) if f.sign > 0.0 => return Err(Error::IntegrandPole(s)),
            Err(Error::GammaPole(_)) => return Ok(Complex64::new(f64::NEG_INFINITY, 0.0)),
            Err(e) => return Err(e),
        }
    }
    Ok(acc)
}

/// The open interval of real parts separating the poles of `Γ(b_i + β_i s)`,
/// `i ≤ m` (left) from those of `Γ(1 − a_i − α_i s)`, `i ≤ n` (right).
pub fn h_separation_strip(hp: &HParams) -> (f64, f64) {
    let left = hp.lower()[..hp.m()].iter().map(|g| -g.a.re / g.alpha).fold(f64::NEG_INFINITY, f64::max);
    let right = hp.upper()[..hp.n()].iter().map(|g| (1.0 - g.a.re) / g.alpha).fold(f64::INFINITY, f64::min);
    (left, right)
}

fn pole_heights(hp: &HParams) -> Vec<f64> {
    let left = hp.lower()[..hp.m()].iter().map(|g| -g.a.im / g.alpha);
    let right = hp.upper()[..hp.n()].iter().map(|g| -g.a.im / g.alpha);
    left.chain(right).collect()
}

/// Contour for `H(w)` at vertex abscissa `c`, from the signs of `Δ*`,
/// `log(|w|/ℋ)` and the aperture: a loop when `Δ* ≠ 0`, the vertical line
/// first when `Δ* = 0`. Every contour whose growth law decays is listed, in
/// order of preference.
pub fn h_contours(hp: &HParams, w: Complex64) -> Result<Vec<ContourKind>> {
    check_finite(w, "argument w")?;
    if w.norm() == 0.0 {
        return Err(Error::Domain("the H-function integral is undefined at w = 0".into()));
    }
    let (lo, hi) = h_separation_strip(hp);
    let c = choose_abscissa(lo, hi, None)?;
    let scale = 1.0 + hp.upper().iter().chain(hp.lower()).map(|g| g.alpha).sum::<f64>();
    let delta = hp.delta_star();
    let aperture = hp.aperture();
    let mut out = Vec::new();
    let vertical = (aperture > 0.0 && w.arg().abs() < aperture * FRAC_PI_2).then_some(ContourKind::VerticalLine { c });
    let log_ratio = w.norm().ln() - hp.h_constant().ln();
    let looped = if delta > ZERO_TOL * scale {
        Some(ContourKind::LeftLoop)
    } else if delta < -ZERO_TOL * scale {
        Some(ContourKind::RightLoop)
    } else if log_ratio < 0.0 {
        Some(ContourKind::LeftLoop)
    } else if log_ratio > 0.0 {
        Some(ContourKind::RightLoop)
    } else {
        None
    };
    if delta.abs() > ZERO_TOL * scale {
        out.extend(looped);
        out.extend(vertical);
    } else {
        out.extend(vertical);
        out.extend(looped);
    }
    if out.is_empty() {
        return Err(Error::NoConvergentContour(format!(
            "H-function: Δ* = {delta}, log(|w|/ℋ) = {log_ratio}, aperture = {aperture}, arg w = {}",
            w.arg()
        )));
    }
    Ok(out)
}

/// Builds the contour of `kind` for `hp`, with the loop strip clearing the
/// pole lines.
pub fn h_contour_spec(hp: &HParams, kind: ContourKind) -> Result<ContourSpec> {
    let (lo, hi) = h_separation_strip(hp);
    let c = choose_abscissa(lo, hi, None)?;
    Ok(ContourSpec::new(kind, c, 1.0, pole_heights(hp)))
}

/// `H(w)` along a given contour.
pub fn integrate_h(w: Complex64, hp: &HParams, spec: &ContourSpec, tol: f64) -> Result<QuadResult> {
    check_finite(w, "argument w")?;
    if w.norm() == 0.0 {
        return Err(Error::Domain("the H-function integral is undefined at w = 0".into()));
    }
    let list = factors(hp);
    let log_w = w.ln();
    let pieces = spec.pieces();
    let profiles: Vec<_> = pieces
        .iter()
        .map(|p| gamma_product_profile(&list, p.theta().unwrap_or(0.0), spec.abscissa, w))
        .collect();
    let log_f = |s: Complex64| log_integrand(&list, s, log_w);
    integrate_pieces(&log_f, &pieces, &profiles, spec, tol)
}

/// `H^{m,n}_{p,q}(w)` by quadrature of gamma function ratios.
///
/// Tries each admissible contour from [`h_contours`] in turn and returns the
/// first success, or the error of the preferred contour.
pub fn evaluate_h(w: Complex64, hp: &HParams, tol: f64) -> Result<QuadResult> {
    let mut first_err = None;
    for kind in h_contours(hp, w)? {
        match h_contour_spec(hp, kind).and_then(|spec| integrate_h(w, hp, &spec, tol)) {
            Ok(r) => return Ok(r),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    Err(first_err.expect("at least one contour was tried"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::GammaPair;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exponential() {
        let hp = HParams::new(1, 0, vec![], vec![GammaPair::real(0.0, 1.0)]).unwrap();
        let r = evaluate_h(c(1.0, 0.0), &hp, 1e-10).unwrap();
        assert!((r.value - (-1.0f64).exp()).norm() < 1e-10, "{r:?}");
        assert!(r.abs_error_estimate <= 1e-10);
    }

    #[test]
    fn balanced_case_picks_loop_by_magnitude() {
        // H^{1,1}_{1,1}[w | (0,1); (0,1)] = 1/(1+w); Δ* = 0 and ℋ = 1.
        let hp = HParams::new(1, 1, vec![GammaPair::real(0.0, 1.0)], vec![GammaPair::real(0.0, 1.0)]).unwrap();
        let small = h_contours(&hp, c(0.5, 0.0)).unwrap();
        assert!(small.contains(&ContourKind::LeftLoop));
        assert!(!small.contains(&ContourKind::RightLoop));
        let large = h_contours(&hp, c(3.0, 0.0)).unwrap();
        assert!(large.contains(&ContourKind::RightLoop));
        for w in [c(0.5, 0.0), c(3.0, 0.0), c(0.4, 0.9)] {
            let r = evaluate_h(w, &hp, 1e-9).unwrap();
            let want = (1.0 + w).inv();
            assert!((r.value - want).norm() < 1e-8 * want.norm(), "{w}: {r:?}");
        }
    }

    #[test]
    fn contour_independence() {
        let hp = HParams::new(
            2,
            1,
            vec![GammaPair::real(0.3, 0.8), GammaPair::real(0.1, 0.6)],
            vec![GammaPair::real(0.2, 1.0), GammaPair::real(0.5, 0.7), GammaPair::real(0.4, 0.9)],
        )
        .unwrap();
        let w = c(0.8, 0.0);
        let (lo, hi) = h_separation_strip(&hp);
        let at = |x: f64| {
            let spec = h_contour_spec(&hp, ContourKind::VerticalLine { c: x }).unwrap();
            integrate_h(w, &hp, &spec, 1e-10).unwrap().value
        };
        let a = at(lo + 0.25 * (hi - lo));
        let b = at(lo + 0.75 * (hi - lo));
        assert!((a - b).norm() < 1e-8 * a.norm(), "{a} vs {b}");
        let looped = evaluate_h(w, &hp, 1e-10).unwrap().value;
        assert!((a - looped).norm() < 1e-8 * a.norm());
    }

    #[test]
    fn rejects_zero_and_overlap() {
        let hp = HParams::new(1, 0, vec![], vec![GammaPair::real(0.0, 1.0)]).unwrap();
        assert!(matches!(evaluate_h(c(0.0, 0.0), &hp, 1e-8), Err(Error::Domain(_))));
        let bad = HParams::new(1, 1, vec![GammaPair::real(2.0, 1.0)], vec![GammaPair::real(0.0, 1.0)]).unwrap();
        assert!(evaluate_h(c(1.0, 0.0), &bad, 1e-8).is_err());
    }
}
