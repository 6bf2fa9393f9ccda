//! Growth of the integrand along rays `s = c + R e^{iθ}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::gamma::LN_2PI;
use crate::params::{derive_invariants, IParams};

/// Coefficients of
/// `log|integrand| = K₁ R² log R + K₂′ R² + K₃ R log R + K₄′ R + K₅ log R + O(1)`
/// along `s = c + R e^{iθ}`.
///
/// `k2` and `k4` come from the gamma-type factors alone; `k2_prime` adds the
/// `e^{πεs²/τ}` contribution and `k4_prime` adds both the `ε` and the `z^{−s}`
/// contributions, so the primed pair is what governs convergence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayCoefficients {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub k4: f64,
    pub k5: f64,
    pub k2_prime: f64,
    pub k4_prime: f64,
}

/// Evaluates the growth coefficients at direction `theta ∈ (−π, π]` and
/// abscissa `c`.
///
/// The branch `[θ > 0]` selects which side of the cut of `log(−s)` the ray
/// lies on; `θ = 0` takes the lower side, where the two agree anyway.
pub fn decay_coefficients(theta: f64, c: f64, params: &IParams, z: Complex64) -> DecayCoefficients {
    let inv = derive_invariants(params, c);
    let tau = params.tau();
    let eps = params.epsilon();
    let ln_tau = tau.ln();
    let (sin, cos) = theta.sin_cos();
    let (sin2, cos2) = (2.0 * theta).sin_cos();
    let side = if theta > 0.0 { -1.0 } else { 1.0 };
    let two_tau = 2.0 * tau;
    let im_pi = inv.pi_sym.im / tau;
    let im_lambda = inv.lambda_sym.im / tau;
    let im_upsilon = inv.upsilon.im / tau;

    let k1 = cos2 * inv.delta2 / two_tau;
    let k2 = cos2 * (inv.theta2 - (1.5 + ln_tau) * inv.delta2) / two_tau
        - theta * sin2 * inv.delta2 / two_tau
        - side * PI * sin2 * inv.omega2 / two_tau;
    let k3 = cos * inv.phi1 - sin * im_pi;
    let k4 = cos * (inv.phi2 + 0.5 * LN_2PI * inv.delta_star)
        - (1.0 + ln_tau) * k3
        - theta * (sin * inv.phi1 + cos * im_pi)
        - sin * im_lambda
        + side * PI * (sin * inv.phi3 + cos * im_upsilon);
    let k5 = inv.log_exponent(tau);
    let k2_prime = k2 + PI / tau * (eps.re * cos2 - eps.im * sin2);
    let k4_prime = k4 + (-cos * z.norm().ln() + sin * z.arg()) + 2.0 * PI * c / tau * (eps.re * cos - eps.im * sin);
    DecayCoefficients { k1, k2, k3, k4, k5, k2_prime, k4_prime }
}

impl DecayCoefficients {
    /// The growth law `K₁R²log R + K₂′R² + K₃R log R + K₄′R + K₅ log R`,
    /// which tracks `log|integrand|` up to a bounded term.
    pub fn growth(&self, r: f64) -> f64 {
        self.profile().value(r)
    }

    pub(crate) fn profile(&self) -> RayProfile {
        RayProfile { coeffs: [self.k1, self.k2_prime, self.k3, self.k4_prime, self.k5] }
    }
}

/// `f(R) = c₀ R² log R + c₁ R² + c₂ R log R + c₃ R + c₄ log R`, the growth
/// law of a ray up to an additive constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct RayProfile {
    pub coeffs: [f64; 5],
}

impl RayProfile {
    pub fn value(&self, r: f64) -> f64 {
        let [a, b, c, d, e] = self.coeffs;
        let l = r.ln();
        a * r * r * l + b * r * r + c * r * l + d * r + e * l
    }

    pub fn slope(&self, r: f64) -> f64 {
        let [a, b, c, d, e] = self.coeffs;
        let l = r.ln();
        a * (2.0 * r * l + r) + 2.0 * b * r + c * (l + 1.0) + d + e / r
    }

    /// Whether the profile eventually decreases without bound or, failing
    /// that, decays like a power below `R^{−1}`.
    pub fn decays(&self, tol: f64) -> bool {
        for &x in &self.coeffs[..4] {
            if x < -tol {
                return true;
            }
            if x > tol {
                return false;
            }
        }
        self.coeffs[4] < -1.0
    }
}

/// One gamma factor `Γ(u + κ s)` entering with exponent `sign = ±1`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct GammaFactor {
    pub sign: f64,
    pub kappa: f64,
    pub u: Complex64,
}

/// Growth law of `∏ Γ(u + κ s)^{±1} · w^{−s}` along `c + R e^{iθ}`, from
/// Stirling's formula applied factor by factor.
pub(crate) fn gamma_product_profile(factors: &[GammaFactor], theta: f64, c: f64, w: Complex64) -> RayProfile {
    let (sin, cos) = theta.sin_cos();
    let mut r_log_r = 0.0;
    let mut r_lin = -(cos * w.norm().ln() - sin * w.arg());
    let mut log_r = 0.0;
    for f in factors {
        let mag = f.kappa.abs();
        // arg(κ e^{iθ}), kept in (−π, π].
        let psi = if f.kappa > 0.0 {
            theta
        } else if theta > 0.0 {
            theta - PI
        } else {
            theta + PI
        };
        let (sp, cp) = psi.sin_cos();
        r_log_r += f.sign * mag * cp;
        r_lin += f.sign * mag * (cp * (mag.ln() - 1.0) - psi * sp);
        log_r += f.sign * (f.kappa * c + f.u.re - 0.5);
    }
    RayProfile { coeffs: [0.0, 0.0, r_log_r, r_lin, log_r] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::GammaPair;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn quadratic_term_on_vertical() {
        let p = IParams::new(1, 1, vec![GammaPair::real(0.2, 0.7)], vec![GammaPair::real(0.1, 1.3)], 1.6, c(0.0, 0.0))
            .unwrap();
        let inv = derive_invariants(&p, 0.3);
        let d = decay_coefficients(PI / 2.0, 0.3, &p, c(1.0, 0.0));
        assert!((d.k1 + inv.delta2 / (2.0 * 1.6)).abs() < 1e-15);
        let e = decay_coefficients(0.4, 0.3, &p, c(1.0, 0.0));
        assert!((e.k5 - (inv.chi + 0.3 * inv.phi1 - 0.09 * inv.delta2 / 3.2)).abs() < 1e-12);
    }

    #[test]
    fn epsilon_and_argument_enter_primed() {
        let p = IParams::new(1, 0, vec![], vec![GammaPair::real(0.0, 1.0)], 1.0, c(0.3, -0.2)).unwrap();
        let z = c(2.0, 1.0);
        let th = 1.1;
        let d = decay_coefficients(th, 0.5, &p, z);
        let want2 = d.k2 + PI * (0.3 * (2.0 * th).cos() + 0.2 * (2.0 * th).sin());
        assert!((d.k2_prime - want2).abs() < 1e-14);
        let want4 = d.k4 - th.cos() * z.norm().ln() + th.sin() * z.arg() + 2.0 * PI * 0.5 * (0.3 * th.cos() + 0.2 * th.sin());
        assert!((d.k4_prime - want4).abs() < 1e-14);
    }

    #[test]
    fn profile_slope_is_derivative() {
        let r = RayProfile { coeffs: [-0.3, 0.2, 1.1, -0.7, 0.4] };
        for x in [0.5, 3.0, 40.0] {
            let h = 1e-5 * x;
            let fd = (r.value(x + h) - r.value(x - h)) / (2.0 * h);
            assert!((fd - r.slope(x)).abs() < 1e-6 * (1.0 + fd.abs()));
        }
        assert!(r.decays(1e-12));
        assert!(!RayProfile { coeffs: [0.0, 0.0, 0.0, 0.0, -0.5] }.decays(1e-12));
    }

    #[test]
    fn exponential_profile() {
        // Γ(s) w^{−s} on the vertical line decays like e^{−πR/2} R^{c−1/2}.
        let f = [GammaFactor { sign: 1.0, kappa: 1.0, u: c(0.0, 0.0) }];
        let p = gamma_product_profile(&f, PI / 2.0, 0.7, c(1.0, 0.0));
        assert!(p.coeffs[2].abs() < 1e-15);
        assert!((p.coeffs[3] + PI / 2.0).abs() < 1e-15);
        assert!((p.coeffs[4] - 0.2).abs() < 1e-15);
    }
}
