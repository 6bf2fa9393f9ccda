//! Contour selection from the growth of the integrand at infinity.
//!
//! Along `s = c + R e^{iθ}` the log-modulus of the integrand is a polynomial
//! in `R` and `log R` whose coefficients depend on the derived sums. The
//! cases below pick contours whose rays make the leading coefficient
//! negative. They are labelled `(a)` through `(q)` in order of the leading
//! power they inspect: `R² log R`, `R²`, `R log R`, `R`, then `log R`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use num_complex::Complex64;

use super::{derive_invariants, DerivedInvariants, IParams};
use crate::error::{check_finite, Error, Result};

/// The shape of an integration contour.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ContourKind {
    /// `Re s = c`, traversed upward.
    VerticalLine { c: f64 },
    /// Loop from `−∞` below the real axis to `−∞` above it, enclosing the
    /// poles of the `G(a_j + α_j s)` factors.
    LeftLoop,
    /// Loop from `+∞` below the real axis to `+∞` above it, enclosing the
    /// poles of the `G(1 + τ − b_i − β_i s)` factors clockwise.
    RightLoop,
    /// Two rays from a common vertex: one at angle `θ₋ ∈ (−π, 0)` traversed
    /// inward and one at `θ₊ ∈ (0, π)` traversed outward.
    BentRays { theta_minus: f64, theta_plus: f64 },
}

impl fmt::Display for ContourKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContourKind::VerticalLine { c } => write!(f, "vertical line at c = {c:.6}"),
            ContourKind::LeftLoop => write!(f, "left loop"),
            ContourKind::RightLoop => write!(f, "right loop"),
            ContourKind::BentRays { theta_minus, theta_plus } => write!(
                f,
                "bent rays at θ₋ = {:.4}π, θ₊ = {:.4}π",
                theta_minus / PI,
                theta_plus / PI
            ),
        }
    }
}

/// Outcome of [`classify_contour`].
#[derive(Debug, Clone, PartialEq)]
pub struct ContourDecision {
    /// Preferred contour: the vertical line when admissible, then a loop,
    /// then bent rays.
    pub kind: ContourKind,
    /// Which vertical-line condition holds (1 to 4), if any.
    pub vl_condition: Option<u8>,
    /// Every contour some case admits, in the order the cases fired.
    pub admissible_alternatives: Vec<ContourKind>,
    /// One line per fired case, preceded by the deciding quantities.
    pub constraint_report: String,
    /// Derived sums at the chosen abscissa.
    pub invariants: DerivedInvariants,
}

impl ContourDecision {
    /// Abscissa of the vertical line, and vertex of loops and rays.
    pub fn abscissa(&self) -> f64 {
        self.invariants.c
    }
}

/// Picks `c` strictly between `𝒜` and `min(ℬ, cap)`: the midpoint when both
/// ends are finite, otherwise the point nearest `0` that keeps one unit from
/// the finite end. Far from the origin `|z^{-s}|` and the gamma ratios grow
/// in opposite directions and the line integral cancels badly.
pub fn choose_abscissa(curly_a: f64, curly_b: f64, cap: Option<f64>) -> Result<f64> {
    let hi = cap.map_or(curly_b, |k| curly_b.min(k));
    let lo = curly_a;
    if !(lo < hi) {
        return Err(Error::InvalidParams(format!("empty abscissa strip ({lo}, {hi})")));
    }
    Ok(match (lo.is_finite(), hi.is_finite()) {
        (true, true) => 0.5 * (lo + hi),
        (true, false) => (lo + 1.0).max(0.0),
        (false, true) => (hi - 1.0).min(0.0),
        (false, false) => 0.0,
    })
}

struct Collector {
    fired: Vec<(ContourKind, String)>,
    vl: Option<u8>,
}

impl Collector {
    fn admit(&mut self, kind: ContourKind, label: &str, reason: String) {
        self.fired.push((kind, format!("{kind}, case ({label}): {reason}")));
    }
}

/// Selects an integration contour for `params` at argument `z`.
///
/// Quantities that the cases compare with zero are treated as zero within
/// `1e-12` times the magnitude of the parameters. Fails with
/// [`Error::NoConvergentContour`] carrying the report when no case applies.
pub fn classify_contour(params: &IParams, z: Complex64) -> Result<ContourDecision> {
    check_finite(z, "argument z")?;
    if z.norm() == 0.0 {
        return Err(Error::Domain("the integral is undefined at z = 0".into()));
    }
    let mut c = choose_abscissa(params.curly_a(), params.curly_b(), None)?;
    let mut inv = derive_invariants(params, c);
    let tau = params.tau();
    let eps = params.epsilon();
    let tol = 1e-12 * params.scale();
    let zero = |x: f64| x.abs() <= tol;
    let pos = |x: f64| x > tol;
    let neg = |x: f64| x < -tol;

    let d2 = inv.delta2;
    let r2 = inv.balanced_r2(eps);
    let om2 = inv.omega2;
    let ie = eps.im;
    let im_pi = inv.pi_sym.im / tau;
    let im_ups = inv.upsilon.im / tau;
    let im_lam = inv.lambda_sym.im / tau;
    let ln_z = z.norm().ln();
    let arg_z = z.arg();

    let mut out = Collector { fired: Vec::new(), vl: None };
    let bent = |m: f64, p: f64| ContourKind::BentRays { theta_minus: m, theta_plus: p };

    // Leading R² log R.
    if pos(d2) {
        out.admit(ContourKind::VerticalLine { c }, "a", format!("Δ₂ = {d2:.6e} > 0"));
        out.vl.get_or_insert(1);
    }
    if neg(d2) {
        let why = format!("Δ₂ = {d2:.6e} < 0");
        out.admit(ContourKind::LeftLoop, "b", why.clone());
        out.admit(ContourKind::RightLoop, "b", why.clone());
        out.admit(bent(-7.0 * PI / 8.0, 7.0 * PI / 8.0), "b", why.clone());
        out.admit(bent(-PI / 8.0, PI / 8.0), "b", why);
    }

    // Leading R².
    if zero(d2) {
        if pos(r2) {
            out.admit(ContourKind::VerticalLine { c }, "c", format!("Δ₂ = 0, Θ₂ + 2π Re ε = {r2:.6e} > 0"));
            out.vl.get_or_insert(2);
            if pos(om2) && ie.abs() < om2 / 2.0 {
                out.admit(bent(-5.0 * PI / 8.0, 5.0 * PI / 8.0), "c1", format!("Ω₂ = {om2:.6e} > 2|Im ε|"));
            }
            if neg(om2) && ie.abs() < -om2 / 2.0 {
                out.admit(bent(-3.0 * PI / 8.0, 3.0 * PI / 8.0), "c2", format!("−Ω₂ = {:.6e} > 2|Im ε|", -om2));
            }
        }
        if neg(r2) {
            let why = format!("Δ₂ = 0, Θ₂ + 2π Re ε = {r2:.6e} < 0");
            out.admit(ContourKind::LeftLoop, "d", why.clone());
            out.admit(ContourKind::RightLoop, "d", why);
            if pos(om2) && ie.abs() < om2 / 2.0 {
                out.admit(bent(-7.0 * PI / 8.0, 7.0 * PI / 8.0), "d1", format!("Ω₂ = {om2:.6e} > 2|Im ε|"));
            }
            if neg(om2) && ie.abs() < -om2 / 2.0 {
                out.admit(bent(-PI / 8.0, PI / 8.0), "d2", format!("−Ω₂ = {:.6e} > 2|Im ε|", -om2));
            }
        }
    }
    let wide = om2 - 0.75 * d2;
    if pos(wide) && 2.0 * ie.abs() < wide {
        out.admit(bent(-3.0 * FRAC_PI_4, 3.0 * FRAC_PI_4), "e", format!("Ω₂ − 3Δ₂/4 = {wide:.6e} > 2|Im ε|"));
    }
    let narrow = 0.25 * d2 - om2;
    if pos(narrow) && 2.0 * ie.abs() < narrow {
        out.admit(bent(-FRAC_PI_4, FRAC_PI_4), "f", format!("Δ₂/4 − Ω₂ = {narrow:.6e} > 2|Im ε|"));
    }

    // Leading R log R.
    let strong = zero(d2) && zero(r2) && zero(om2) && zero(ie);
    let phi1 = inv.phi1;
    if strong {
        if pos(phi1) {
            out.admit(ContourKind::LeftLoop, "g", format!("Φ₁ = {phi1:.6e} > 0"));
            if zero(im_pi) {
                out.admit(bent(-3.0 * FRAC_PI_4, 3.0 * FRAC_PI_4), "g1", "Φ₁ > 0 and Im Π = 0".into());
            }
        }
        if neg(phi1) {
            out.admit(ContourKind::RightLoop, "h", format!("Φ₁ = {phi1:.6e} < 0"));
            if zero(im_pi) {
                out.admit(bent(-FRAC_PI_4, FRAC_PI_4), "h1", "Φ₁ < 0 and Im Π = 0".into());
            }
        }
    }
    if zero(om2 - 0.25 * d2) && zero(ie) && neg(phi1) && im_pi.abs() < -phi1 {
        out.admit(bent(-FRAC_PI_4, FRAC_PI_4), "i", format!("Ω₂ = Δ₂/4, |Im Π|/τ < −Φ₁ = {:.6e}", -phi1));
    }
    if zero(om2 - 0.75 * d2) && zero(ie) && pos(phi1) && im_pi.abs() < phi1 {
        out.admit(bent(-3.0 * FRAC_PI_4, 3.0 * FRAC_PI_4), "j", format!("Ω₂ = 3Δ₂/4, |Im Π|/τ < Φ₁ = {phi1:.6e}"));
    }

    // Leading R.
    let psi1 = inv.psi1;
    let phi3 = inv.phi3;
    let flat = strong && zero(phi1) && zero(im_pi);
    if flat {
        let lo = psi1 - PI * im_ups.abs();
        let hi = psi1 + PI * im_ups.abs();
        if ln_z < lo {
            out.admit(ContourKind::LeftLoop, "k", format!("log|z| = {ln_z:.6e} < {lo:.6e}"));
        }
        if ln_z > hi {
            out.admit(ContourKind::RightLoop, "l", format!("log|z| = {ln_z:.6e} > {hi:.6e}"));
        }
        let m_bound = psi1 - PI * phi3 + (im_lam + PI * im_ups - arg_z).abs();
        if ln_z > m_bound {
            out.admit(bent(-FRAC_PI_4, FRAC_PI_4), "m", format!("log|z| = {ln_z:.6e} > {m_bound:.6e}"));
        }
        let n_bound = psi1 + PI * phi3 - (im_lam - PI * im_ups - arg_z).abs();
        if ln_z < n_bound {
            out.admit(bent(-3.0 * FRAC_PI_4, 3.0 * FRAC_PI_4), "n", format!("log|z| = {ln_z:.6e} < {n_bound:.6e}"));
        }
    }
    let vertical_base = strong && zero(im_pi);
    let aperture = phi1 + 2.0 * phi3;
    if vertical_base && pos(aperture) && (arg_z - im_lam).abs() < aperture * FRAC_PI_2 {
        out.admit(
            ContourKind::VerticalLine { c },
            "o",
            format!("|arg z − Im Λ/τ| = {:.6e} < (Φ₁ + 2Φ₃)π/2 = {:.6e}", (arg_z - im_lam).abs(), aperture * FRAC_PI_2),
        );
        out.vl.get_or_insert(3);
    }

    // Leading log R.
    let chi = inv.chi;
    if flat {
        let edge = psi1 - PI * im_ups.abs();
        if (ln_z - edge).abs() <= 1e-10 * (1.0 + ln_z.abs()) && chi < -1.0 {
            let why = format!("|z| = e^{{{edge:.6e}}}, χ = {chi:.6e} < −1");
            out.admit(ContourKind::LeftLoop, "p", why.clone());
            out.admit(ContourKind::RightLoop, "p", why);
        }
    }
    if vertical_base && zero(aperture) && (arg_z - im_lam).abs() <= 1e-12 * (1.0 + arg_z.abs()) {
        // χ + cΦ₁ < −1 restricts c; move it inside the strip if possible.
        let (lo, hi) = (params.curly_a(), params.curly_b());
        let z_edge = inv.curly_z;
        let strip = if pos(phi1) {
            Some((lo, hi.min(z_edge)))
        } else if neg(phi1) {
            Some((lo.max(z_edge), hi))
        } else if chi < -1.0 {
            Some((lo, hi))
        } else {
            None
        };
        if let Some((a, b)) = strip {
            if a < b && chi + c * phi1 >= -1.0 {
                c = choose_abscissa(a, b, None)?;
                inv = derive_invariants(params, c);
            }
            if a < b && inv.chi + c * inv.phi1 < -1.0 {
                out.admit(
                    ContourKind::VerticalLine { c },
                    "q",
                    format!("Φ₁ + 2Φ₃ = 0, arg z = Im Λ/τ, χ + cΦ₁ = {:.6e} < −1", inv.chi + c * inv.phi1),
                );
                out.vl.get_or_insert(4);
            }
        }
    }

    let header = format!(
        "Δ₂ = {d2:.6e}, Θ₂ + 2π Re ε = {r2:.6e}, Ω₂ = {om2:.6e}, Im ε = {ie:.6e}, Φ₁ = {phi1:.6e}, \
         Im Π/τ = {im_pi:.6e}, Φ₁ + 2Φ₃ = {aperture:.6e}, Ψ₁ = {psi1:.6e}, χ = {chi:.6e}, c = {c:.6e}, \
         log|z| = {ln_z:.6e}, arg z = {arg_z:.6e}"
    );
    let mut report = header;
    if out.fired.is_empty() {
        report.push_str("\nno case applies: the integrand does not decay along any admissible contour");
        return Err(Error::NoConvergentContour(report));
    }
    let mut alternatives: Vec<ContourKind> = Vec::new();
    for (kind, line) in &out.fired {
        report.push('\n');
        report.push_str(line);
        if !alternatives.contains(kind) {
            alternatives.push(*kind);
        }
    }
    // The vertical line admitted by (q) may sit at a moved abscissa.
    let kind = if let Some(v) = alternatives.iter().rev().find(|k| matches!(k, ContourKind::VerticalLine { .. })) {
        *v
    } else {
        let left = alternatives.contains(&ContourKind::LeftLoop);
        let right = alternatives.contains(&ContourKind::RightLoop);
        match (left, right) {
            (true, true) if ln_z > psi1 => ContourKind::RightLoop,
            (true, true) => ContourKind::LeftLoop,
            (true, false) => ContourKind::LeftLoop,
            (false, true) => ContourKind::RightLoop,
            (false, false) => alternatives[0],
        }
    };
    Ok(ContourDecision {
        kind,
        vl_condition: out.vl,
        admissible_alternatives: alternatives,
        constraint_report: report,
        invariants: inv,
    })
}
