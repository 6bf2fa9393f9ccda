//! Numerical evaluation of the I-function.
//!
//! The integrand is assembled in log form and integrated along the contour
//! picked by [`classify_contour`], truncated where the tails fall below the
//! tolerance. Gamma-only quadrature of the Fox H-function and residue series
//! provide independent routes.

pub(crate) mod contour;
pub(crate) mod decay;
mod hfunc;
mod integrand;
mod residues;

pub use contour::{ContourSpec, QuadResult, DEFAULT_DENSITY, DEFAULT_R_MAX};
pub use decay::{decay_coefficients, DecayCoefficients};
pub use hfunc::{evaluate_h, h_contour_spec, h_contours, h_separation_strip, integrate_h};
pub use integrand::{log_integrand, Integrand};
pub use residues::{sum_left_residues, sum_right_residues, ResidueSum};

use num_complex::Complex64;

use crate::error::{check_finite, Error, Result};
use crate::params::{classify_contour, ContourKind, IParams};

/// Imaginary parts of the horizontal lines carrying the poles.
fn pole_heights(params: &IParams) -> Vec<f64> {
    let left = params.upper_denominator().iter().map(|g| -g.a.im / g.alpha);
    let right = params.lower_denominator().iter().map(|g| -g.a.im / g.alpha);
    left.chain(right).collect()
}

/// The I-function for fixed parameters, reusing one double gamma evaluator
/// across arguments.
#[derive(Debug, Clone)]
pub struct IFunction {
    integrand: Integrand,
}

impl IFunction {
    pub fn new(params: &IParams) -> Result<Self> {
        Ok(Self { integrand: Integrand::new(params)? })
    }

    pub fn params(&self) -> &IParams {
        self.integrand.params()
    }

    /// The contour of `kind` with vertex abscissa `c`.
    pub fn contour(&self, kind: ContourKind, c: f64) -> ContourSpec {
        let p = self.params();
        ContourSpec::new(kind, c, p.tau(), pole_heights(p))
    }

    /// Quadrature along `spec`.
    pub fn integrate(&self, z: Complex64, spec: &ContourSpec, tol: f64) -> Result<QuadResult> {
        check_finite(z, "argument z")?;
        if z.norm() == 0.0 {
            return Err(Error::Domain("the integral is undefined at z = 0".into()));
        }
        let params = self.params();
        let pieces = spec.pieces();
        let profiles: Vec<_> = pieces
            .iter()
            .map(|p| decay_coefficients(p.theta().unwrap_or(0.0), spec.abscissa, params, z).profile())
            .collect();
        let log_z = z.ln();
        let log_f = |s: Complex64| self.integrand.log_at(s, log_z);
        contour::integrate_pieces(&log_f, &pieces, &profiles, spec, tol)
    }

    /// Classifies, then integrates along the preferred contour, falling back
    /// to the other admissible contours in order. Returns the error of the
    /// preferred contour when all fail.
    pub fn evaluate(&self, z: Complex64, tol: f64) -> Result<QuadResult> {
        let decision = classify_contour(self.params(), z)?;
        let c = decision.abscissa();
        let mut kinds = vec![decision.kind];
        for k in &decision.admissible_alternatives {
            if !kinds.contains(k) {
                kinds.push(*k);
            }
        }
        let mut first_err = None;
        for kind in kinds {
            match self.integrate(z, &self.contour(kind, c), tol) {
                Ok(r) => return Ok(r),
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
        }
        Err(first_err.expect("at least one contour was tried"))
    }
}

/// `(1/2πi) ∫_C exp(log_integrand(s)) ds` along `contour`.
pub fn integrate_contour(params: &IParams, z: Complex64, contour: &ContourSpec, tol: f64) -> Result<QuadResult> {
    IFunction::new(params)?.integrate(z, contour, tol)
}

/// The I-function at `z` along an automatically chosen contour.
pub fn evaluate_i(z: Complex64, params: &IParams, tol: f64) -> Result<QuadResult> {
    IFunction::new(params)?.evaluate(z, tol)
}
