//! Residue series of the integrand at simple poles.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::integrand::Integrand;
use crate::error::{check_finite, Error, Result};
use crate::params::{family_poles, IParams, LatticePole, PoleFamily};

/// A truncated residue series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidueSum {
    pub value: Complex64,
    /// Number of uncancelled poles summed.
    pub terms_used: usize,
    /// Modulus of the last summed term, the tail estimate.
    pub last_term: f64,
}

/// `Res_{s = s₀}` of the integrand, or `None` when numerator zeros cancel
/// the pole.
fn residue(ig: &Integrand, s0: Complex64, log_z: Complex64) -> Result<Option<Complex64>> {
    let mut order = 0i64;
    let mut log_coeff = Complex64::new(0.0, 0.0);
    for f in ig.factor_list() {
        let (k, lc) = ig.double_gamma().leading_term(f.argument(s0))?;
        // G(w₀ + κδ) ≈ C (κδ)^k; an integer power makes the branch of log κ immaterial.
        let log_kappa = Complex64::new(f.kappa.abs().ln(), if f.kappa < 0.0 { PI } else { 0.0 });
        order += f.sign as i64 * k as i64;
        log_coeff += f.sign * (lc + k as f64 * log_kappa);
    }
    match order {
        0.. => Ok(None),
        -1 => {
            let p = ig.params();
            Ok(Some((log_coeff + PI * p.epsilon() * s0 * s0 / p.tau() - s0 * log_z).exp()))
        }
        _ => Err(Error::NonSimplePole { at: s0, order: -order }),
    }
}

/// Groups lattice points that coincide as points of the plane.
fn distinct_poles(poles: &[LatticePole]) -> Vec<Complex64> {
    let mut out: Vec<Complex64> = Vec::new();
    for p in poles {
        if !out.iter().any(|q| (p.s - q).norm() <= 1e-9 * (1.0 + q.norm())) {
            out.push(p.s);
        }
    }
    out
}

fn sum(params: &IParams, z: Complex64, max_terms: usize, family: PoleFamily) -> Result<ResidueSum> {
    check_finite(z, "argument z")?;
    if z.norm() == 0.0 {
        return Err(Error::Domain("the residue series is undefined at z = 0".into()));
    }
    let ig = Integrand::new(params)?;
    let log_z = z.ln();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut terms_used = 0;
    let mut last_term = 0.0;
    let mut seen = 0;
    let mut count = max_terms.max(1);
    // Numerator zeros may cancel poles, so widen the lattice until enough
    // uncancelled poles are found.
    while terms_used < max_terms && count <= 64 * max_terms + 1024 {
        let poles = distinct_poles(&family_poles(params, family, count));
        if poles.is_empty() {
            break;
        }
        for &s0 in poles.iter().skip(seen) {
            if terms_used == max_terms {
                break;
            }
            if let Some(r) = residue(&ig, s0, log_z)? {
                acc += r;
                last_term = r.norm();
                terms_used += 1;
            }
        }
        seen = seen.max(poles.len());
        count *= 2;
    }
    let sign = match family {
        PoleFamily::Upper => 1.0,
        PoleFamily::Lower => -1.0,
    };
    Ok(ResidueSum { value: sign * acc, terms_used, last_term })
}

/// Sum of residues at the poles of `1/G(a_j + α_j s)`, `j > n`: the value of
/// the left loop, which encircles them counterclockwise. The `max_terms`
/// uncancelled poles closest to the contour are summed; all must be simple.
pub fn sum_left_residues(params: &IParams, z: Complex64, max_terms: usize) -> Result<ResidueSum> {
    sum(params, z, max_terms, PoleFamily::Upper)
}

/// Minus the sum of residues at the poles of `1/G(1 + τ − b_i − β_i s)`,
/// `i > m`: the value of the right loop, which encircles them clockwise.
pub fn sum_right_residues(params: &IParams, z: Complex64, max_terms: usize) -> Result<ResidueSum> {
    sum(params, z, max_terms, PoleFamily::Lower)
}
