//! The Kilbas–Saigo function `E_{a,m,l}`, its representation as an
//! I-function, and its Laplace transform.
//!
//! `E_{a,m,l}(x) = Σ c_n xⁿ` with `c₀ = 1` and
//! `c_n = ∏_{k<n} Γ(1 + a(km + l)) / Γ(1 + a(km + l + 1))`. With
//! `τ = 1/(am)` and `φ = (1 + al)τ`, the coefficients are the double gamma
//! ratio `G(φ+aτ)G(φ+n) / [G(φ+aτ+n)G(φ)]`, which turns `E(−λt^ν)` into an
//! I-function whose Laplace transform is again a contour integral.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::dgamma::{DGammaConfig, DoubleGamma};
use crate::error::{check_finite, Error, Result};
use crate::eval::contour::{integrate_pieces, ContourSpec, QuadResult};
use crate::eval::decay::{gamma_product_profile, GammaFactor};
use crate::eval::{evaluate_i, IFunction, ResidueSum};
use crate::gamma::{digamma, log_gamma, LN_2PI};
use crate::params::{laplace_image, ContourKind, GammaPair, IParams};

/// The `(α, γ)` pairs of the relaxation curves reproduced in the guide:
/// `ν < 1`, `ν = 1` and `ν > 1`.
pub const FIG1_PAIRS: [(f64, f64); 3] = [(0.6, 0.1), (0.7, 0.3), (0.8, 0.5)];

/// Parameters `a, m, l` of `E_{a,m,l}` and the exponent `ν` of its argument
/// `−λ t^ν`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KSParams {
    a: f64,
    m: f64,
    l: f64,
    nu: f64,
}

/// Convergence of the termwise Laplace transform `Σ c_n (−λ)ⁿ Γ(1+nν)/z^{nν+1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplaceRegime {
    /// `ν < a`: the series converges.
    SeriesConvergent,
    /// `ν = a`.
    Critical,
    /// `ν > a`: the series diverges and only the contour integral applies.
    ContourOnly,
}

impl KSParams {
    /// Requires `a > 0`, `m > 0`, `l > −1/a` and `ν > 0`.
    pub fn new(a: f64, m: f64, l: f64, nu: f64) -> Result<Self> {
        let finite = a.is_finite() && m.is_finite() && l.is_finite() && nu.is_finite();
        if !(finite && a > 0.0 && m > 0.0 && nu > 0.0 && 1.0 + a * l > 0.0) {
            return Err(Error::InvalidParams(format!(
                "Kilbas–Saigo parameters need a > 0, m > 0, l > −1/a, ν > 0; got a = {a}, m = {m}, l = {l}, ν = {nu}"
            )));
        }
        Ok(Self { a, m, l, nu })
    }

    /// The fractional relaxation case `a = α`, `m = 1 + γ/α`, `l = γ/α`,
    /// `ν = α + γ`, for which `τ = 1/ν`.
    pub fn fractional_relaxation(alpha: f64, gamma: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite() && gamma.is_finite()) {
            return Err(Error::InvalidParams(format!("need α > 0 and finite γ, got α = {alpha}, γ = {gamma}")));
        }
        Self::new(alpha, 1.0 + gamma / alpha, gamma / alpha, alpha + gamma)
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn l(&self) -> f64 {
        self.l
    }
    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// `1/(a m)`.
    pub fn tau(&self) -> f64 {
        1.0 / (self.a * self.m)
    }

    /// `(1 + a l) τ`.
    pub fn phi(&self) -> f64 {
        (1.0 + self.a * self.l) * self.tau()
    }

    /// `(α, γ)` when the parameters follow the fractional relaxation
    /// mapping, to relative accuracy `1e-12`.
    pub fn relaxation_pair(&self) -> Option<(f64, f64)> {
        let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * (1.0 + x.abs() + y.abs());
        (close(self.l, self.m - 1.0) && close(self.nu, self.a * self.m)).then_some((self.a, self.a * self.l))
    }

    pub fn regime(&self) -> LaplaceRegime {
        if self.nu < self.a {
            LaplaceRegime::SeriesConvergent
        } else if self.nu > self.a {
            LaplaceRegime::ContourOnly
        } else {
            LaplaceRegime::Critical
        }
    }

    /// `log Γ(1 + a(km + l))`, the numerator factor of step `k`.
    fn log_step(&self, k: f64, extra: f64) -> f64 {
        let x = 1.0 + self.a * (k * self.m + self.l + extra);
        log_gamma(Complex64::new(x, 0.0)).expect("positive argument").re
    }
}

/// `log c_n` from the gamma product.
fn log_coefficient(n: u64, ks: &KSParams) -> f64 {
    (0..n).map(|k| ks.log_step(k as f64, 0.0) - ks.log_step(k as f64, 1.0)).sum()
}

/// `c_n = ∏_{k<n} Γ(1 + a(km + l)) / Γ(1 + a(km + l + 1))`, accumulated in
/// log form.
pub fn ks_coefficient(n: u64, ks: &KSParams) -> f64 {
    log_coefficient(n, ks).exp()
}

/// `c_n` as the double gamma ratio `G(φ+aτ)G(φ+n) / [G(φ+aτ+n)G(φ)]`.
pub fn ks_coefficient_double_gamma(n: u64, ks: &KSParams) -> Result<f64> {
    let tau = ks.tau();
    let dg = DoubleGamma::new(tau)?;
    let (phi, shift) = (ks.phi(), ks.a * tau);
    let lg = |x: f64| dg.log(Complex64::new(x, 0.0)).map(|v| v.re);
    let nf = n as f64;
    Ok((lg(phi + shift)? + lg(phi + nf)? - lg(phi + shift + nf)? - lg(phi)?).exp())
}

/// `E_{a,m,l}(x) = Σ c_n xⁿ`, summed until three consecutive terms fall
/// below `tol·|sum|`.
///
/// Alternating sums at large `|x|` lose accuracy to cancellation.
pub fn ks_series(x: Complex64, ks: &KSParams, tol: f64) -> Complex64 {
    let mut sum = Complex64::new(1.0, 0.0);
    if x == Complex64::new(0.0, 0.0) {
        return sum;
    }
    let log_x = x.ln();
    let mut log_c = 0.0;
    let mut small = 0;
    let mut n = 0u64;
    while small < 3 && n < 1_000_000 {
        log_c += ks.log_step(n as f64, 0.0) - ks.log_step(n as f64, 1.0);
        n += 1;
        let term = (log_c + n as f64 * log_x).exp();
        sum += term;
        if term.norm() < tol * sum.norm() {
            small += 1;
        } else {
            small = 0;
        }
    }
    sum
}

/// `E(−λt^ν) = prefactor · I[λ^{1/ν} t; t_form] = power_prefactor · I[λ t^ν; power_form]`.
#[derive(Debug, Clone, PartialEq)]
pub struct KSRepresentation {
    pub lambda: f64,
    /// `G(φ+aτ) / [(2π)^{τ−1} ν G(φ)]`.
    pub prefactor: f64,
    /// Slopes `1/ν`: upper `(0), (1+τ−φ), (0)`, lower `(τ), (τ), (1+τ−φ−aτ)`,
    /// with `m = 1`, `n = 2`.
    pub t_form: IParams,
    /// `ν` times `prefactor`.
    pub power_prefactor: f64,
    /// The same pairs with unit slopes.
    pub power_form: IParams,
}

impl KSRepresentation {
    /// `E(−λt^ν)` by quadrature of the t-form.
    pub fn evaluate(&self, t: Complex64, tol: f64) -> Result<QuadResult> {
        let nu = 1.0 / self.t_form.upper()[0].alpha;
        let z = self.lambda.powf(1.0 / nu) * t;
        let mut r = evaluate_i(z, &self.t_form, tol)?;
        r.value *= self.prefactor;
        r.abs_error_estimate *= self.prefactor;
        Ok(r)
    }
}

fn ks_pairs(ks: &KSParams, slope: f64) -> Result<IParams> {
    let tau = ks.tau();
    let phi = ks.phi();
    let g = |x: f64| GammaPair::real(x, slope);
    IParams::new(
        1,
        2,
        vec![g(0.0), g(1.0 + tau - phi), g(0.0)],
        vec![g(tau), g(tau), g(1.0 + tau - phi - ks.a * tau)],
        tau,
        Complex64::new(0.0, 0.0),
    )
}

/// `log [G(φ+aτ) / G(φ)]`.
fn log_ratio(dg: &DoubleGamma, ks: &KSParams) -> Result<f64> {
    let phi = ks.phi();
    Ok((dg.log(Complex64::new(phi + ks.a * ks.tau(), 0.0))? - dg.log(Complex64::new(phi, 0.0))?).re)
}

/// Both I-function forms of `E(−λt^ν)`.
pub fn ks_as_i(ks: &KSParams, lambda: f64) -> Result<KSRepresentation> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidParams(format!("λ must be positive, got {lambda}")));
    }
    let tau = ks.tau();
    let dg = DoubleGamma::new(tau)?;
    let base = (log_ratio(&dg, ks)? - (tau - 1.0) * LN_2PI).exp();
    Ok(KSRepresentation {
        lambda,
        prefactor: base / ks.nu,
        t_form: ks_pairs(ks, 1.0 / ks.nu)?,
        power_prefactor: base,
        power_form: ks_pairs(ks, 1.0)?,
    })
}

/// Laplace transform `∫₀^∞ e^{−zt} E(−λt^ν) dt` for fixed parameters,
/// reusing one double gamma evaluator across arguments.
///
/// The integral
/// `(1/z) G(φ+aτ)/G(φ) (1/2πi) ∫ (z^ν/λ)^{−s} Γ(1+νs) Γ(1+s) Γ(−s) G(φ+s)/G(φ+aτ+s) ds`
/// runs along `Re s = c′` with `c′ = −min(1, 1/ν, φ + aτ)/2`, which keeps
/// the poles `s = n ≥ 0` on the right and all others on the left.
#[derive(Debug, Clone)]
pub struct KSLaplace {
    ks: KSParams,
    lambda: f64,
    dg: DoubleGamma,
    log_prefactor: f64,
    abscissa: f64,
}

impl KSLaplace {
    pub fn new(ks: &KSParams, lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParams(format!("λ must be positive, got {lambda}")));
        }
        let tau = ks.tau();
        let cfg = DGammaConfig { asymptotic_radius: Some(8.0 * tau.max(1.0)), ..DGammaConfig::default() };
        let dg = DoubleGamma::with_config(tau, cfg)?;
        let log_prefactor = log_ratio(&DoubleGamma::new(tau)?, ks)?;
        let abscissa = -0.5 * (1.0f64).min(1.0 / ks.nu).min(ks.phi() + ks.a * tau);
        Ok(Self { ks: *ks, lambda, dg, log_prefactor, abscissa })
    }

    /// Half-opening `(1 + (2 − a)/ν) π/2` of the sector of convergence in `z`.
    pub fn sector(&self) -> f64 {
        (1.0 + (2.0 - self.ks.a) / self.ks.nu) * FRAC_PI_2
    }

    fn log_integrand(&self, s: Complex64, log_w: Complex64) -> Result<Complex64> {
        let ks = &self.ks;
        let one = Complex64::new(1.0, 0.0);
        let mut acc = -s * log_w;
        for arg in [one + ks.nu * s, one + s, -s] {
            match log_gamma(arg) {
                Ok(v) => acc += v,
                Err(Error::GammaPole(_)) => return Err(Error::IntegrandPole(s)),
                Err(e) => return Err(e),
            }
        }
        let phi = ks.phi();
        acc += self.dg.log(phi + s)?;
        match self.dg.log(phi + ks.a * ks.tau() + s) {
            Ok(v) => acc -= v,
            Err(Error::ZeroLattice { .. }) => return Err(Error::IntegrandPole(s)),
            Err(e) => return Err(e),
        }
        Ok(acc)
    }

    /// `L(z)` with `abs_error_estimate ≤ tol · max(1, |L(z)|)`.
    pub fn evaluate(&self, z: Complex64, tol: f64) -> Result<QuadResult> {
        check_finite(z, "argument z")?;
        if z.norm() == 0.0 {
            return Err(Error::Domain("the Laplace integral is evaluated at z ≠ 0; use the z → 0 limit".into()));
        }
        if !(tol > 0.0 && tol <= 1e-2) {
            return Err(Error::InvalidParams(format!("tol must lie in (0, 1e-2], got {tol}")));
        }
        let sector = self.sector();
        if !(sector > 0.0 && z.arg().abs() < sector) {
            return Err(Error::Domain(format!(
                "|arg z| = {} outside the sector of convergence {sector}",
                z.arg().abs()
            )));
        }
        let ks = &self.ks;
        let log_z = z.ln();
        let log_w = ks.nu * log_z - self.lambda.ln();
        let w = log_w.exp();
        let tau = ks.tau();
        let c = self.abscissa;
        let spec = ContourSpec::new(ContourKind::VerticalLine { c }, c, tau, []);
        let pieces = spec.pieces();
        // The double gamma ratio grows like Γ(s/τ)^{−aτ} along rays.
        let factors = [
            GammaFactor { sign: 1.0, kappa: ks.nu, u: Complex64::new(1.0, 0.0) },
            GammaFactor { sign: 1.0, kappa: 1.0, u: Complex64::new(1.0, 0.0) },
            GammaFactor { sign: 1.0, kappa: -1.0, u: Complex64::new(0.0, 0.0) },
            GammaFactor { sign: -ks.a * tau, kappa: 1.0 / tau, u: Complex64::new(ks.phi() / tau + 0.5 * ks.a, 0.0) },
        ];
        let profiles: Vec<_> =
            pieces.iter().map(|p| gamma_product_profile(&factors, p.theta().unwrap_or(0.0), c, w)).collect();
        // Tolerance on the bare integral so that the scaled error meets `tol`.
        let scale = (self.log_prefactor - log_z.re).exp();
        let inner_tol = (tol / scale.max(1.0)).clamp(1e-15, 1e-2);
        let log_f = |s: Complex64| self.log_integrand(s, log_w);
        let r = integrate_pieces(&log_f, &pieces, &profiles, &spec, inner_tol)?;
        let factor = (self.log_prefactor - log_z).exp();
        Ok(QuadResult {
            value: r.value * factor,
            abs_error_estimate: r.abs_error_estimate * factor.norm(),
            ..r
        })
    }

    /// The `z → 0` limit for `ν > 1`, extrapolated from `z = 10⁻⁴, 10⁻³, 10⁻²`.
    ///
    /// The left poles at `s = −1` and `s = −2/ν` give the corrections
    /// `z^{ν−1}` and `z`, which are eliminated together; when the exponents
    /// coincide only one is removed.
    pub fn at_zero(&self, tol: f64) -> Result<f64> {
        self.at_zero_estimate(tol).map(|(v, _)| v)
    }

    /// [`Self::at_zero`] with an error estimate: the change from the
    /// two-point extrapolation on `z = 10⁻⁴, 10⁻³`, which removes only the
    /// `z^{ν−1}` correction.
    pub fn at_zero_estimate(&self, tol: f64) -> Result<(f64, f64)> {
        let nu = self.ks.nu;
        if !(nu > 1.0) {
            return Err(Error::DivergentRegime(format!("L(z) is unbounded as z → 0 when ν = {nu} ≤ 1")));
        }
        let f = |z: f64| self.evaluate(Complex64::new(z, 0.0), tol).map(|r| r.value.re);
        let p = nu - 1.0;
        let (z1, z2) = (1e-4f64, 1e-3f64);
        let (f1, f2) = (f(z1)?, f(z2)?);
        let two_point = (f1 * z2.powf(p) - f2 * z1.powf(p)) / (z2.powf(p) - z1.powf(p));
        if (p - 1.0).abs() < 1e-3 {
            let f3 = f(1e-5)?;
            let finer = (f3 * z1.powf(p) - f1 * 1e-5f64.powf(p)) / (z1.powf(p) - 1e-5f64.powf(p));
            return Ok((two_point, (finer - two_point).abs()));
        }
        let zs = [z1, z2, 1e-2];
        let values = [f1, f2, f(1e-2)?];
        let mut rows = [[0.0; 4]; 3];
        for ((row, &z), &v) in rows.iter_mut().zip(&zs).zip(&values) {
            *row = [1.0, z.powf(p), z, v];
        }
        let limit = solve3(rows)[0];
        Ok((limit, (limit - two_point).abs()))
    }
}

/// Solves a 3×3 system given as augmented rows, by Cramer's rule.
fn solve3(m: [[f64; 4]; 3]) -> [f64; 3] {
    let det = |c: [usize; 3]| {
        let e = |r: usize, k: usize| m[r][c[k]];
        e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
            + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
    };
    let d = det([0, 1, 2]);
    [det([3, 1, 2]) / d, det([0, 3, 2]) / d, det([0, 1, 3]) / d]
}

/// `∫₀^∞ e^{−zt} E(−λt^ν) dt` by the contour integral. Valid for
/// `|arg z| < (1 + (2 − a)/ν) π/2`.
pub fn ks_laplace(z: Complex64, ks: &KSParams, lambda: f64, tol: f64) -> Result<QuadResult> {
    KSLaplace::new(ks, lambda)?.evaluate(z, tol)
}

/// The same transform through the general route: the Laplace image of the
/// unit-slope representation, `prefactor/z · I[λτ^ν z^{−ν}]` with four pairs
/// per row, evaluated by [`evaluate_i`].
pub fn ks_laplace_via_image(z: Complex64, ks: &KSParams, lambda: f64, tol: f64) -> Result<QuadResult> {
    check_finite(z, "argument z")?;
    if z.norm() == 0.0 {
        return Err(Error::Domain("the Laplace integral is evaluated at z ≠ 0".into()));
    }
    let rep = ks_as_i(ks, lambda)?;
    let image = laplace_image(&rep.power_form, ks.nu)?;
    let tau = ks.tau();
    let arg = lambda * tau.powf(ks.nu) * (-ks.nu * z.ln()).exp();
    let factor = rep.power_prefactor * image.prefactor / z;
    let scale = factor.norm();
    let inner_tol = (tol / scale.max(1.0)).clamp(1e-15, 1e-2);
    let r = IFunction::new(&image.params)?.evaluate(arg, inner_tol)?;
    Ok(QuadResult { value: r.value * factor, abs_error_estimate: r.abs_error_estimate * scale, ..r })
}

/// Termwise transform `Σ c_n (−λ)ⁿ Γ(1+nν) / z^{nν+1}`, convergent for
/// `ν < a`. Stops after `max_terms` terms or once three consecutive terms
/// are below `10⁻¹⁷` of the sum.
pub fn ks_laplace_series(z: Complex64, ks: &KSParams, lambda: f64, max_terms: usize) -> Result<ResidueSum> {
    if ks.regime() != LaplaceRegime::SeriesConvergent {
        return Err(Error::DivergentRegime(format!(
            "the termwise Laplace series needs ν < a; got ν = {}, a = {}",
            ks.nu, ks.a
        )));
    }
    check_finite(z, "argument z")?;
    if z.norm() == 0.0 {
        return Err(Error::Domain("the Laplace series is undefined at z = 0".into()));
    }
    let log_z = z.ln();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut log_c = 0.0;
    let mut last_term = 0.0;
    let mut small = 0;
    let mut used = 0;
    for n in 0..max_terms {
        let nf = n as f64;
        if n > 0 {
            log_c += ks.log_step(nf - 1.0, 0.0) - ks.log_step(nf - 1.0, 1.0);
        }
        let log_g = log_gamma(Complex64::new(1.0 + nf * ks.nu, 0.0))?.re;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let term = sign * (log_c + nf * lambda.ln() + log_g - (nf * ks.nu + 1.0) * log_z).exp();
        sum += term;
        used += 1;
        last_term = term.norm();
        if last_term < 1e-17 * sum.norm() {
            small += 1;
            if small == 3 {
                break;
            }
        } else {
            small = 0;
        }
    }
    Ok(ResidueSum { value: sum, terms_used: used, last_term })
}

/// Leading behaviour of the transform as `z → 0` in the fractional
/// relaxation case, `α < ν`:
///
/// - `α < ν < 1`: `Γ(1−ν) / (λ Γ(1−α)) · z^{ν−1}`;
/// - `ν = 1`: `[−log z + log λ + ψ(1) + α(1 − ψ(1−α))] / (λ Γ(1−α))`;
/// - `ν > 1`: `(π/ν) / (λ^{1/ν} τ^{α/ν} Γ(γ/ν) sin(π/ν))`.
///
/// `ν = 1` is recognised to within `1e-12`.
pub fn ks_laplace_small_z(ks: &KSParams, lambda: f64, z: Complex64) -> Result<Complex64> {
    let (alpha, gamma) = ks.relaxation_pair().ok_or_else(|| {
        Error::InvalidParams("the small-z law needs a = α, m = 1 + γ/α, l = γ/α, ν = α + γ".into())
    })?;
    let nu = ks.nu;
    if !(alpha > 0.0 && alpha < 1.0 && nu > alpha) {
        return Err(Error::InvalidParams(format!("the small-z law needs 0 < α < 1 and ν > α; got α = {alpha}, ν = {nu}")));
    }
    check_finite(z, "argument z")?;
    let lg = |x: f64| log_gamma(Complex64::new(x, 0.0)).map(|v| v.re);
    if (nu - 1.0).abs() <= 1e-12 {
        if z.norm() == 0.0 {
            return Err(Error::Domain("the ν = 1 law diverges logarithmically at z = 0".into()));
        }
        let psi1 = digamma(Complex64::new(1.0, 0.0))?.re;
        let psi_a = digamma(Complex64::new(1.0 - alpha, 0.0))?.re;
        // The prefactor is the ν → 1 limit of (1 − ν)Γ(1 − ν)/Γ(1 − α), from
        // the double pole at s = −1.
        let scale = lambda * lg(1.0 - alpha)?.exp();
        return Ok((-z.ln() + lambda.ln() + psi1 + alpha * (1.0 - psi_a)) / scale);
    }
    if nu < 1.0 {
        if z.norm() == 0.0 {
            return Err(Error::Domain("the ν < 1 law diverges at z = 0".into()));
        }
        let coeff = (lg(1.0 - nu)? - lg(1.0 - alpha)?).exp() / lambda;
        return Ok(coeff * ((nu - 1.0) * z.ln()).exp());
    }
    let tau = ks.tau();
    let denom = lambda.powf(1.0 / nu) * tau.powf(alpha / nu) * lg(gamma / nu)?.exp() * (PI / nu).sin();
    Ok(Complex64::new(PI / nu / denom, 0.0))
}
