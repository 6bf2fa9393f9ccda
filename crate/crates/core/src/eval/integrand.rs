//! The integrand in log form.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::dgamma::{DGammaConfig, DoubleGamma};
use crate::error::{check_finite, Error, Result};
use crate::params::IParams;

/// One double gamma factor `G(u + κ s; τ)^{sign}`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Factor {
    pub sign: f64,
    pub u: Complex64,
    pub kappa: f64,
}

impl Factor {
    pub fn argument(&self, s: Complex64) -> Complex64 {
        self.u + self.kappa * s
    }
}

/// The factors of the integrand in the order numerator lower, numerator
/// upper, denominator lower, denominator upper.
pub(crate) fn factors(params: &IParams) -> Vec<Factor> {
    let t = 1.0 + params.tau();
    let mut out = Vec::with_capacity(params.p() + params.q());
    for g in params.lower_numerator() {
        out.push(Factor { sign: 1.0, u: g.a, kappa: g.alpha });
    }
    for g in params.upper_numerator() {
        out.push(Factor { sign: 1.0, u: t - g.a, kappa: -g.alpha });
    }
    for g in params.lower_denominator() {
        out.push(Factor { sign: -1.0, u: t - g.a, kappa: -g.alpha });
    }
    for g in params.upper_denominator() {
        out.push(Factor { sign: -1.0, u: g.a, kappa: g.alpha });
    }
    out
}

/// Evaluator of `log` of the integrand for fixed parameters.
///
/// The double gamma evaluator switches to its large-argument expansion at
/// `|w| > 8·max(1, τ)`, where that expansion is accurate to rounding; this
/// keeps a contour quadrature affordable.
#[derive(Debug, Clone)]
pub struct Integrand {
    params: IParams,
    factors: Vec<Factor>,
    dg: DoubleGamma,
}

impl Integrand {
    pub fn new(params: &IParams) -> Result<Self> {
        let tau = params.tau();
        let cfg = DGammaConfig { asymptotic_radius: Some(8.0 * tau.max(1.0)), ..DGammaConfig::default() };
        Ok(Self { params: params.clone(), factors: factors(params), dg: DoubleGamma::with_config(tau, cfg)? })
    }

    pub fn params(&self) -> &IParams {
        &self.params
    }

    pub(crate) fn double_gamma(&self) -> &DoubleGamma {
        &self.dg
    }

    pub(crate) fn factor_list(&self) -> &[Factor] {
        &self.factors
    }

    /// `log` of the gamma-type part, without `e^{πεs²/τ} z^{−s}`.
    pub fn log_core(&self, s: Complex64) -> Result<Complex64> {
        check_finite(s, "integration variable s")?;
        let mut acc = Complex64::new(0.0, 0.0);
        for f in &self.factors {
            match self.dg.log(f.argument(s)) {
                Ok(l) => acc += f.sign * l,
                Err(Error::ZeroLattice { .. }) if f.sign < 0.0 => return Err(Error::IntegrandPole(s)),
                Err(Error::ZeroLattice { .. }) => return Ok(Complex64::new(f64::NEG_INFINITY, 0.0)),
                Err(e) => return Err(e),
            }
        }
        Ok(acc)
    }

    /// `log` of the full integrand at `s` for argument `z ≠ 0`, with the
    /// principal branch of `log z`.
    pub fn log_at(&self, s: Complex64, log_z: Complex64) -> Result<Complex64> {
        let core = self.log_core(s)?;
        Ok(core + PI * self.params.epsilon() * s * s / self.params.tau() - s * log_z)
    }
}

/// `log` of `𝓘(s) e^{πεs²/τ} z^{−s}`.
///
/// Builds a fresh double gamma evaluator; for repeated use construct an
/// [`Integrand`] once.
pub fn log_integrand(s: Complex64, z: Complex64, params: &IParams) -> Result<Complex64> {
    check_finite(z, "argument z")?;
    if z.norm() == 0.0 {
        return Err(Error::Domain("the integrand is undefined at z = 0".into()));
    }
    Integrand::new(params)?.log_at(s, z.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::GammaPair;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sample() -> IParams {
        IParams::new(
            1,
            1,
            vec![GammaPair::real(0.3, 1.0), GammaPair::real(0.2, 0.5)],
            vec![GammaPair::real(0.1, 2.0), GammaPair::real(0.4, 0.7)],
            1.4,
            c(0.0, 0.0),
        )
        .unwrap()
    }

    #[test]
    fn unit_argument_without_epsilon() {
        let p = sample();
        let ig = Integrand::new(&p).unwrap();
        let s = c(0.2, 1.3);
        let full = log_integrand(s, c(1.0, 0.0), &p).unwrap();
        let core = ig.log_core(s).unwrap();
        assert!((full - core).norm() < 1e-12);
    }

    #[test]
    fn conjugate_symmetry() {
        let p = sample();
        let ig = Integrand::new(&p).unwrap();
        let lz = c(0.7, 0.0);
        for s in [c(0.2, 1.3), c(-2.5, 4.0), c(3.0, -0.4)] {
            let a = ig.log_at(s, lz).unwrap();
            let b = ig.log_at(s.conj(), lz).unwrap();
            assert!((a.exp() - b.conj().exp()).norm() < 1e-12 * a.exp().norm());
        }
    }

    #[test]
    fn pole_is_reported() {
        let p = sample();
        // Upper denominator G(0.2 + 0.5 s) vanishes at s = −0.4.
        let err = log_integrand(c(-0.4, 0.0), c(1.0, 0.0), &p).unwrap_err();
        assert!(matches!(err, Error::IntegrandPole(_)));
        assert!(log_integrand(c(0.0, 0.0), c(0.0, 0.0), &p).is_err());
    }
}
