//! Contour geometry, truncation and adaptive panel quadrature.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use super::decay::RayProfile;
use crate::error::{Error, Result};
use crate::params::ContourKind;
use crate::quad::{gk15, refine, Panel, NODES_PER_PANEL};

/// Default truncation budget along each ray, in units of `max(1, τ)`.
pub const DEFAULT_R_MAX: f64 = 2.0e4;
/// Default number of initial panels per unit length near the vertex.
pub const DEFAULT_DENSITY: f64 = 1.0;

/// Panel budget for the adaptive refinement of one contour.
const MAX_PANELS: usize = 40_000;
/// `log(10²)`: margin below the tolerance kept by the truncated tails.
const SAFETY: f64 = 2.0 * std::f64::consts::LN_10;

/// A concrete integration contour.
#[derive(Debug, Clone, PartialEq)]
pub struct ContourSpec {
    pub kind: ContourKind,
    /// Real part of the vertical line, segment and ray vertices.
    pub abscissa: f64,
    /// Heights `(φ₁, φ₂)`, `φ₁ < 0 < φ₂`, of the lower and upper ends of the
    /// vertical segment joining the two halves of loops and bent rays.
    pub strip: (f64, f64),
    /// Largest admissible truncation radius along each ray.
    pub r_max: f64,
    /// Initial panels per unit length near the vertex.
    pub density: f64,
}

impl ContourSpec {
    /// Builds the contour of `kind` with vertex abscissa `c`.
    ///
    /// `pole_heights` lists the imaginary parts of the horizontal lines
    /// carrying poles; the strip clears all of them by `max(1, τ)/2`.
    pub fn new(kind: ContourKind, c: f64, tau: f64, pole_heights: impl IntoIterator<Item = f64>) -> Self {
        let margin = 0.5 * tau.max(1.0);
        let (mut lo, mut hi) = (0.0f64, 0.0f64);
        for h in pole_heights {
            lo = lo.min(h);
            hi = hi.max(h);
        }
        let abscissa = match kind {
            ContourKind::VerticalLine { c: line } => line,
            _ => c,
        };
        Self {
            kind,
            abscissa,
            strip: (lo - margin, hi + margin),
            r_max: DEFAULT_R_MAX * tau.max(1.0),
            density: DEFAULT_DENSITY,
        }
    }

    pub(crate) fn pieces(&self) -> Vec<Piece> {
        let c = self.abscissa;
        let (lo, hi) = self.strip;
        let bottom = Complex64::new(c, lo);
        let top = Complex64::new(c, hi);
        match self.kind {
            ContourKind::VerticalLine { .. } => vec![
                Piece::RayIn { end: Complex64::new(c, 0.0), theta: -PI / 2.0 },
                Piece::RayOut { start: Complex64::new(c, 0.0), theta: PI / 2.0 },
            ],
            ContourKind::LeftLoop => vec![
                Piece::RayIn { end: bottom, theta: PI },
                Piece::Segment { from: bottom, to: top },
                Piece::RayOut { start: top, theta: PI },
            ],
            ContourKind::RightLoop => vec![
                Piece::RayIn { end: bottom, theta: 0.0 },
                Piece::Segment { from: bottom, to: top },
                Piece::RayOut { start: top, theta: 0.0 },
            ],
            ContourKind::BentRays { theta_minus, theta_plus } => vec![
                Piece::RayIn { end: bottom, theta: theta_minus },
                Piece::Segment { from: bottom, to: top },
                Piece::RayOut { start: top, theta: theta_plus },
            ],
        }
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.strip;
        if !(self.abscissa.is_finite() && lo < 0.0 && hi > 0.0 && hi.is_finite() && lo.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "contour needs a finite abscissa and strip φ₁ < 0 < φ₂, got c = {}, ({lo}, {hi})",
                self.abscissa
            )));
        }
        if !(self.r_max.is_finite() && self.r_max > 1.0) {
            return Err(Error::InvalidParams(format!("r_max must be finite and above 1, got {}", self.r_max)));
        }
        if !(self.density.is_finite() && self.density > 0.0) {
            return Err(Error::InvalidParams(format!("density must be positive, got {}", self.density)));
        }
        if let ContourKind::BentRays { theta_minus, theta_plus } = self.kind {
            if !(-PI < theta_minus && theta_minus < 0.0 && 0.0 < theta_plus && theta_plus < PI) {
                return Err(Error::InvalidParams(format!(
                    "ray angles must satisfy −π < θ₋ < 0 < θ₊ < π, got {theta_minus}, {theta_plus}"
                )));
            }
        }
        Ok(())
    }
}

/// Outcome of a contour quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub nodes_used: usize,
    /// Largest truncation radius over the rays of the contour.
    pub truncation_radius_used: f64,
}

/// One piece of a contour, parameterised by arc length `x ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum Piece {
    /// `s = end + x e^{iθ}`, traversed toward `end`.
    RayIn { end: Complex64, theta: f64 },
    /// `s = from + x u`, `u` the unit vector toward `to`.
    Segment { from: Complex64, to: Complex64 },
    /// `s = start + x e^{iθ}`, traversed away from `start`.
    RayOut { start: Complex64, theta: f64 },
}

impl Piece {
    pub fn point(&self, x: f64) -> Complex64 {
        match *self {
            Piece::RayIn { end, theta } => end + Complex64::from_polar(x, theta),
            Piece::RayOut { start, theta } => start + Complex64::from_polar(x, theta),
            Piece::Segment { from, to } => from + (to - from) / (to - from).norm() * x,
        }
    }

    /// `ds/dx` including the direction of traversal.
    pub fn jacobian(&self) -> Complex64 {
        match *self {
            Piece::RayIn { theta, .. } => -Complex64::from_polar(1.0, theta),
            Piece::RayOut { theta, .. } => Complex64::from_polar(1.0, theta),
            Piece::Segment { from, to } => (to - from) / (to - from).norm(),
        }
    }

    pub fn theta(&self) -> Option<f64> {
        match *self {
            Piece::RayIn { theta, .. } | Piece::RayOut { theta, .. } => Some(theta),
            Piece::Segment { .. } => None,
        }
    }

    fn length(&self) -> Option<f64> {
        match *self {
            Piece::Segment { from, to } => Some((to - from).norm()),
            _ => None,
        }
    }
}

/// Truncation of one ray.
#[derive(Debug, Clone, Copy)]
struct Cut {
    radius: f64,
    tail: f64,
    probes: usize,
}

/// Picks the first radius on the grid `1.25^k` beyond which the integral of
/// `|f|` is below `exp(log_budget)`.
///
/// The tail is bounded by `e^{L(R)} R / (−R L′(R) − 1)`, exact for a power
/// law and conservative for faster decay, with `L′` a one-sided difference.
/// The candidate is confirmed by `L(1.5 R) ≤ L(R)`.
fn truncate<F>(log_f: &F, piece: &Piece, profile: &RayProfile, log_budget: f64, r_max: f64) -> Result<Cut>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    if !profile.decays(1e-12) {
        return Err(Error::TruncationFailure(format!(
            "growth law along θ = {:.6} does not decay (coefficients {:?})",
            piece.theta().unwrap_or(f64::NAN),
            profile.coeffs
        )));
    }
    let level = |r: f64| -> Result<f64> { Ok(log_f(piece.point(r))?.re) };
    let mut probes = 1usize;
    let mut r_prev = 1.0;
    let mut l_prev = level(r_prev)?;
    let mut r = r_prev;
    while r < r_max {
        r = (1.25 * r).min(r_max);
        let l = level(r)?;
        probes += 1;
        let slope = (l - l_prev) / (r - r_prev);
        let rate = -r * slope - 1.0;
        if rate > 0.0 {
            let log_tail = l + r.ln() - rate.ln();
            if log_tail < log_budget {
                let ahead = level(1.5 * r)?;
                probes += 1;
                if ahead <= l {
                    return Ok(Cut { radius: r, tail: log_tail.exp(), probes });
                }
            }
        }
        r_prev = r;
        l_prev = l;
    }
    Err(Error::TruncationFailure(format!(
        "integrand along θ = {:.6} still above tolerance at r_max = {r_max} (log|f| = {l_prev:.3})",
        piece.theta().unwrap_or(f64::NAN)
    )))
}

/// Initial panel edges on `[0, r]`: width `1/density` up to 8, then growing
/// geometrically, never wider than eight local e-folds of the growth law.
fn ray_edges(r: f64, density: f64, profile: &RayProfile) -> Vec<f64> {
    let mut edges = vec![0.0];
    let mut x = 0.0;
    let base = 1.0 / density;
    let mut width = base;
    while x < r {
        if x >= 8.0 {
            width *= 1.3;
            let s = profile.slope(x).abs();
            if s > 0.0 {
                width = width.min((8.0 / s).max(base));
            }
        }
        x = (x + width).min(r);
        if r - x < 0.25 * width {
            x = r;
        }
        edges.push(x);
    }
    edges
}

/// Integrates `exp(log_f)` along `pieces`, returning `(1/2πi) ∫`.
///
/// `profiles[i]` is the growth law of ray `i` (ignored for segments).
pub(crate) fn integrate_pieces<F>(
    log_f: &F,
    pieces: &[Piece],
    profiles: &[RayProfile],
    spec: &ContourSpec,
    tol: f64,
) -> Result<QuadResult>
where
    F: Fn(Complex64) -> Result<Complex64> + Sync,
{
    if !(tol > 0.0 && tol <= 1e-2) {
        return Err(Error::InvalidParams(format!("tol must lie in (0, 1e-2], got {tol}")));
    }
    spec.validate()?;
    let two_pi = 2.0 * PI;
    let rays = pieces.iter().filter(|p| p.theta().is_some()).count().max(1);
    let log_budget = (two_pi * tol / rays as f64).ln() - SAFETY;

    let mut edges = Vec::with_capacity(pieces.len());
    let mut tails = 0.0;
    let mut probes = 0usize;
    let mut radius: f64 = 0.0;
    for (piece, profile) in pieces.iter().zip(profiles) {
        match piece.length() {
            Some(len) => {
                let k = (len * spec.density).ceil().max(1.0) as usize;
                edges.push((0..=k).map(|j| len * j as f64 / k as f64).collect::<Vec<_>>());
            }
            None => {
                let cut = truncate(log_f, piece, profile, log_budget, spec.r_max)?;
                tails += cut.tail;
                probes += cut.probes;
                radius = radius.max(cut.radius);
                edges.push(ray_edges(cut.radius, spec.density, profile));
            }
        }
    }

    let f = |i: usize, x: f64| -> Result<Complex64> {
        let p = &pieces[i];
        Ok(log_f(p.point(x))?.exp() * p.jacobian())
    };
    let jobs: Vec<(usize, f64, f64)> = edges
        .iter()
        .enumerate()
        .flat_map(|(i, e)| e.windows(2).map(move |w| (i, w[0], w[1])))
        .collect();
    let initial: Vec<Panel> = jobs.par_iter().map(|&(i, a, b)| gk15(&f, i, a, b)).collect::<Result<_>>()?;
    let first = initial.len() * NODES_PER_PANEL;
    let refined = refine(&f, initial, |v, _| 0.5 * tol * (two_pi).max(v.norm()), MAX_PANELS)?;

    let value = refined.value / Complex64::new(0.0, two_pi);
    let abs_error_estimate = (refined.error + tails) / two_pi;
    Ok(QuadResult {
        value,
        abs_error_estimate,
        nodes_used: first + refined.evaluations + probes,
        truncation_radius_used: radius,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_on_vertical_line() {
        // (1/2πi) ∫ e^{s²} ds over Re s = 0 equals 1/(2√π).
        let spec = ContourSpec::new(ContourKind::VerticalLine { c: 0.0 }, 0.0, 1.0, []);
        let pieces = spec.pieces();
        let prof = RayProfile { coeffs: [0.0, -1.0, 0.0, 0.0, 0.0] };
        let r = integrate_pieces(&|s: Complex64| Ok(s * s), &pieces, &[prof; 2], &spec, 1e-10).unwrap();
        let want = 0.5 / PI.sqrt();
        assert!((r.value - want).norm() < 1e-10, "{:?}", r);
        assert!(r.abs_error_estimate < 1e-10 && r.truncation_radius_used > 3.0);
    }

    #[test]
    fn left_loop_recovers_exponential() {
        // (1/2πi) ∫ Γ(s) z^{−s} ds around the poles of Γ equals e^{−z}.
        let z: f64 = 1.7;
        let log_f = |s: Complex64| crate::gamma::log_gamma(s).map(|g| g - s * z.ln());
        let spec = ContourSpec::new(ContourKind::LeftLoop, 0.5, 1.0, [0.0]);
        let pieces = spec.pieces();
        let prof = RayProfile { coeffs: [0.0, 0.0, -1.0, 0.0, 0.0] };
        let r = integrate_pieces(&log_f, &pieces, &[prof; 3], &spec, 1e-10).unwrap();
        assert!((r.value - (-z).exp()).norm() < 1e-10, "{:?}", r);
    }

    #[test]
    fn rejects_growth_and_bad_tolerance() {
        let spec = ContourSpec::new(ContourKind::VerticalLine { c: 0.0 }, 0.0, 1.0, []);
        let pieces = spec.pieces();
        let grow = RayProfile { coeffs: [0.0, 1.0, 0.0, 0.0, 0.0] };
        let e = integrate_pieces(&|s: Complex64| Ok(-s * s), &pieces, &[grow; 2], &spec, 1e-8).unwrap_err();
        assert!(matches!(e, Error::TruncationFailure(_)));
        let ok = RayProfile { coeffs: [0.0, -1.0, 0.0, 0.0, 0.0] };
        assert!(integrate_pieces(&|s: Complex64| Ok(s * s), &pieces, &[ok; 2], &spec, 0.5).is_err());
    }

    #[test]
    fn bent_ray_angles_are_checked() {
        let spec = ContourSpec::new(ContourKind::BentRays { theta_minus: 0.2, theta_plus: 1.0 }, 0.0, 1.0, []);
        let prof = RayProfile { coeffs: [0.0, -1.0, 0.0, 0.0, 0.0] };
        let r = integrate_pieces(&|s: Complex64| Ok(s * s), &spec.pieces(), &[prof; 3], &spec, 1e-8);
        assert!(matches!(r, Err(Error::InvalidParams(_))));
    }
}
