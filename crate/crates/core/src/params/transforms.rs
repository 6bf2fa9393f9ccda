//! Identities of the integral expressed as rewrites of its parameter lists.
//!
//! Each function returns the rewritten parameters together with the scalar
//! factors that relate the two integrals; the doc comment of each result
//! type states the identity it encodes.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{derive_invariants, GammaPair, IParams};
use crate::error::{Error, Result};
use crate::gamma::LN_2PI;

/// `I[1/z; P] = I[z; transform_invert(P)]`.
///
/// Swaps the rows and replaces each shift `x` by `1 + τ − x`, so
/// `(m, n, p, q)` becomes `(n, m, q, p)`. The map is an involution.
pub fn transform_invert(params: &IParams) -> IParams {
    let t = 1.0 + params.tau();
    let flip = |g: &GammaPair| GammaPair::new(t - g.a, g.alpha);
    // 𝒜 and ℬ map to −ℬ and −𝒜, so the separation is preserved.
    IParams::assemble(
        params.n(),
        params.m(),
        params.lower().iter().map(flip).collect(),
        params.upper().iter().map(flip).collect(),
        params.tau(),
        params.epsilon(),
    )
    .expect("inversion preserves validity")
}

/// `z^σ I[z; P] = prefactor · I[multiplier · z; params]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftImage {
    pub prefactor: Complex64,
    pub multiplier: Complex64,
    pub params: IParams,
}

/// Moves every shift by `σ` times its slope.
pub fn transform_shift(params: &IParams, sigma: Complex64) -> ShiftImage {
    let tau = params.tau();
    let eps = params.epsilon();
    let mv = |g: &GammaPair| GammaPair::new(g.a + sigma * g.alpha, g.alpha);
    let shifted = IParams::assemble(
        params.m(),
        params.n(),
        params.upper().iter().map(mv).collect(),
        params.lower().iter().map(mv).collect(),
        tau,
        eps,
    )
    .expect("shift preserves validity");
    ShiftImage {
        prefactor: (PI * eps * sigma * sigma / tau).exp(),
        multiplier: (-2.0 * PI * eps * sigma / tau).exp(),
        params: shifted,
    }
}

/// `(1/k) I[z; P] = I[z^k; transform_scale(P, k)]` for `k > 0`.
///
/// Multiplies every slope by `k` and `ε` by `k²`.
pub fn transform_scale(params: &IParams, k: f64) -> Result<IParams> {
    if !(k.is_finite() && k > 0.0) {
        return Err(Error::InvalidParams(format!("scale factor must be positive, got {k}")));
    }
    let sc = |g: &GammaPair| GammaPair::new(g.a, k * g.alpha);
    IParams::assemble(
        params.m(),
        params.n(),
        params.upper().iter().map(sc).collect(),
        params.lower().iter().map(sc).collect(),
        params.tau(),
        params.epsilon() * (k * k),
    )
}

/// `I[z; τ, ε, P] = a · τ · I[(z/b)^τ; params]`, where `params` has
/// period `1/τ`, shifts divided by `τ` and `ε − Δ₂ log τ/(2π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularImage {
    pub a: Complex64,
    pub b: Complex64,
    pub params: IParams,
}

/// Rewrites the integral in terms of the double gamma function of period
/// `1/τ`.
pub fn transform_modular(params: &IParams) -> ModularImage {
    let tau = params.tau();
    let ln_tau = tau.ln();
    let inv = derive_invariants(params, 0.0);
    let shift_sum =
        params.lower().iter().map(|g| g.a).sum::<Complex64>() - params.upper().iter().map(|g| g.a).sum::<Complex64>();
    let excess = (params.m() + params.n()) as f64 - params.q() as f64;
    let log_2pi_a = (tau - 1.0) / (2.0 * tau) * (shift_sum + (1.0 + tau) * excess);
    let log_tau_a = ((1.0 + tau) * inv.d1 - inv.d2) / (2.0 * tau) - inv.curly_n as f64;
    let a = (log_2pi_a * LN_2PI + log_tau_a * ln_tau).exp();
    let log_b = (tau - 1.0) / (2.0 * tau) * inv.delta_star * LN_2PI
        + ((1.0 + tau) * inv.delta1 - 2.0 * inv.pi_sym) / (2.0 * tau) * ln_tau;
    let b = log_b.exp();
    let div = |g: &GammaPair| GammaPair::new(g.a / tau, g.alpha);
    let params = IParams::assemble(
        params.m(),
        params.n(),
        params.upper().iter().map(div).collect(),
        params.lower().iter().map(div).collect(),
        1.0 / tau,
        params.epsilon() - inv.delta2 * ln_tau / (2.0 * PI),
    )
    .expect("modular map preserves validity");
    ModularImage { a, b, params }
}

/// Laplace transform in `t` of `I[λ t^ν; P]`:
/// `L(z) = prefactor / z · I[λ τ^ν z^{−ν}; params]` for `Re z > 0`.
///
/// `params` prepends `(0, ν)` to the upper numerator pairs and appends
/// `(τ, ν)` to the lower denominator pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct LaplaceImage {
    pub prefactor: f64,
    pub nu: f64,
    pub params: IParams,
}

pub fn laplace_image(params: &IParams, nu: f64) -> Result<LaplaceImage> {
    if !(nu.is_finite() && nu > 0.0) {
        return Err(Error::InvalidParams(format!("power ν must be positive, got {nu}")));
    }
    let tau = params.tau();
    if !(params.curly_a() < 1.0 / nu) {
        return Err(Error::InvalidParams(format!(
            "Laplace transform needs max pole real part {} below 1/ν = {}",
            params.curly_a(),
            1.0 / nu
        )));
    }
    let mut upper = vec![GammaPair::real(0.0, nu)];
    upper.extend_from_slice(params.upper());
    let mut lower = params.lower().to_vec();
    lower.push(GammaPair::real(tau, nu));
    Ok(LaplaceImage {
        prefactor: tau.sqrt() / ((tau - 1.0) * 0.5 * LN_2PI).exp(),
        nu,
        params: IParams::new(params.m(), params.n() + 1, upper, lower, tau, params.epsilon())?,
    })
}

/// Which derivative identity [`expand_derivative`] applies.
#[derive(Debug, Clone, PartialEq)]
pub enum DerivativeForm {
    /// `d^k/dz^k [z^ω I[z^σ]]` with two pairs added to the upper numerator
    /// and lower denominator groups.
    Power,
    /// `d^k/dz^k [z^ω I[z^σ]]` with two pairs added to the lower numerator
    /// and upper denominator groups.
    PowerDual,
    /// [`DerivativeForm::Power`] with the factor `z^{ω−k}` absorbed into
    /// the argument by a shift.
    PowerAbsorbed,
    /// `∏_j (z d/dz − c_j) [z^ω I[z^σ]]` over the given roots `c_j`.
    Euler(Vec<Complex64>),
    /// Dual placement of [`DerivativeForm::Euler`].
    EulerDual(Vec<Complex64>),
    /// `d^k/dz^k I[(c z + d)^σ]`.
    Affine { c: Complex64, d: Complex64 },
    /// `d^k/dz^k I[(c z + d)^{−σ}]`.
    AffineInverse { c: Complex64, d: Complex64 },
}

/// Right-hand side of a derivative identity: for any `z`,
/// `LHS(z) = coefficient(z) · I[argument(z); params]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    pub params: IParams,
    form: DerivativeForm,
    omega: Complex64,
    sigma: f64,
    k: u32,
    /// Multiplier of the argument, `1` except for the absorbed form.
    multiplier: Complex64,
    /// Constant factor of the coefficient.
    constant: Complex64,
}

impl Expansion {
    /// `(coefficient, argument)` at `z`, using principal powers.
    pub fn at(&self, z: Complex64) -> (Complex64, Complex64) {
        let zs = |e: f64| if e == 0.0 { Complex64::new(1.0, 0.0) } else { (e * z.ln()).exp() };
        let k = self.k as i32;
        match &self.form {
            DerivativeForm::Power | DerivativeForm::PowerDual => {
                (self.constant * ((self.omega - k as f64) * z.ln()).exp(), zs(self.sigma))
            }
            DerivativeForm::PowerAbsorbed => (self.constant, self.multiplier * zs(self.sigma)),
            DerivativeForm::Euler(_) | DerivativeForm::EulerDual(_) => {
                (self.constant * (self.omega * z.ln()).exp(), zs(self.sigma))
            }
            DerivativeForm::Affine { c, d } => {
                let w = c * z + d;
                (self.constant * c.powi(k) / w.powi(k), (self.sigma * w.ln()).exp())
            }
            DerivativeForm::AffineInverse { c, d } => {
                let w = c * z + d;
                (self.constant * c.powi(k) / w.powi(k), (-self.sigma * w.ln()).exp())
            }
        }
    }
}

/// Expands a derivative of the integral into a single integral with an
/// enlarged parameter set.
///
/// For the power and Euler forms the argument is `z^σ`; the identity holds
/// where `σ ln z` stays on the principal branch.
pub fn expand_derivative(
    params: &IParams,
    omega: Complex64,
    sigma: f64,
    k: u32,
    form: DerivativeForm,
) -> Result<Expansion> {
    if k == 0 {
        return Err(Error::InvalidParams("derivative order must be at least 1".into()));
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidParams(format!("power σ must be positive, got {sigma}")));
    }
    let tau = params.tau();
    let kf = k as f64;
    let pair = |a: Complex64| GammaPair::new(a, sigma);
    let (m, n) = (params.m(), params.n());
    let one = Complex64::new(1.0, 0.0);
    let tau_k = one * tau.powi(k as i32);
    let sign_k = if k % 2 == 0 { 1.0 } else { -1.0 };

    // (front of upper, back of upper, front of lower, back of lower, Δm, Δn)
    let (upper_front, upper_back, lower_front, lower_back, constant) = match &form {
        DerivativeForm::Power | DerivativeForm::PowerAbsorbed => (
            vec![pair(-omega), pair(-omega + kf + tau)],
            vec![],
            vec![],
            vec![pair(-omega + tau), pair(-omega + kf)],
            tau_k,
        ),
        DerivativeForm::PowerDual => (
            vec![],
            vec![pair(kf - omega), pair(tau - omega)],
            vec![pair(kf + tau - omega), pair(-omega)],
            vec![],
            tau_k * sign_k,
        ),
        DerivativeForm::Euler(roots) | DerivativeForm::EulerDual(roots) => {
            if roots.len() != k as usize {
                return Err(Error::InvalidParams(format!(
                    "expected {k} roots for the Euler form, got {}",
                    roots.len()
                )));
            }
            let lead: Vec<_> = roots.iter().map(|c| pair(c - omega)).collect();
            let lead_t: Vec<_> = roots.iter().map(|c| pair(1.0 + tau + c - omega)).collect();
            let mid_t: Vec<_> = roots.iter().map(|c| pair(tau + c - omega)).collect();
            let mid_1: Vec<_> = roots.iter().map(|c| pair(1.0 + c - omega)).collect();
            if matches!(form, DerivativeForm::Euler(_)) {
                ([lead, lead_t].concat(), vec![], vec![], [mid_t, mid_1].concat(), tau_k)
            } else {
                (vec![], [mid_1, mid_t].concat(), [lead_t, lead].concat(), vec![], tau_k * sign_k)
            }
        }
        DerivativeForm::Affine { .. } => (
            vec![GammaPair::real(0.0, sigma), GammaPair::real(kf + tau, sigma)],
            vec![],
            vec![],
            vec![GammaPair::real(tau, sigma), GammaPair::real(kf, sigma)],
            tau_k,
        ),
        DerivativeForm::AffineInverse { .. } => (
            vec![],
            vec![GammaPair::real(1.0, sigma), GammaPair::real(1.0 - kf + tau, sigma)],
            vec![GammaPair::real(1.0 + tau, sigma), GammaPair::real(1.0 - kf, sigma)],
            vec![],
            tau_k,
        ),
    };
    let new_n = n + upper_front.len();
    let new_m = m + lower_front.len();
    let upper = [upper_front, params.upper().to_vec(), upper_back].concat();
    let lower = [lower_front, params.lower().to_vec(), lower_back].concat();
    let enlarged = IParams::new(new_m, new_n, upper, lower, tau, params.epsilon())?;

    if matches!(form, DerivativeForm::PowerAbsorbed) {
        let shift = transform_shift(&enlarged, (omega - kf) / sigma);
        return Ok(Expansion {
            params: shift.params,
            form,
            omega,
            sigma,
            k,
            multiplier: shift.multiplier,
            constant: constant * shift.prefactor,
        });
    }
    Ok(Expansion { params: enlarged, form, omega, sigma, k, multiplier: one, constant })
}

/// Which contiguous relation [`contiguous_relation`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContiguousVariant {
    /// Splits the first upper pair by unit steps; needs `n ≥ 1`.
    FirstUpper,
    /// Splits the first upper pair by `τ` steps; needs `n ≥ 1`.
    FirstUpperTau,
    /// Splits the first lower pair by unit steps; needs `m ≥ 1`.
    FirstLower,
    /// Splits the first lower pair by `τ` steps; needs `m ≥ 1`.
    FirstLowerTau,
    /// Splits the last lower pair; needs `q ≥ m + 1`.
    LastLower,
    /// Splits the last upper pair; needs `p ≥ n + 1`.
    LastUpper,
}

/// `z d/dz I[z^σ; P] = c0 · I[z^σ; P] + c1 · I[z^σ; params]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoTermRelation {
    pub c0: Complex64,
    pub c1: Complex64,
    pub params: IParams,
}

/// Builds the two-term relation between `z d/dz I` and a contiguous integral.
pub fn contiguous_relation(params: &IParams, sigma: f64, which: ContiguousVariant) -> Result<TwoTermRelation> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidParams(format!("power σ must be positive, got {sigma}")));
    }
    let tau = params.tau();
    let (m, n, p, q) = (params.m(), params.n(), params.p(), params.q());
    let up = params.upper();
    let lo = params.lower();
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("contiguous relation needs {what}")))
        }
    };
    let g = GammaPair::new;
    let (c0, c1, upper, lower, new_m, new_n) = match which {
        ContiguousVariant::FirstUpper | ContiguousVariant::FirstUpperTau => {
            need(n >= 1, "n ≥ 1")?;
            let (a, s) = (up[0].a, up[0].alpha);
            let (step, other) = if which == ContiguousVariant::FirstUpper { (1.0, tau) } else { (tau, 1.0) };
            let upper = [vec![g(a + other, s), g(a - step, s)], up[1..].to_vec()].concat();
            let lower = [lo.to_vec(), vec![g(a + other - step, s)]].concat();
            (sigma * (a - step) / s, Complex64::new(sigma * tau / s, 0.0), upper, lower, m, n + 1)
        }
        ContiguousVariant::FirstLower | ContiguousVariant::FirstLowerTau => {
            need(m >= 1, "m ≥ 1")?;
            let (b, s) = (lo[0].a, lo[0].alpha);
            let (step, other) = if which == ContiguousVariant::FirstLower { (1.0, tau) } else { (tau, 1.0) };
            let upper = [up.to_vec(), vec![g(b + other - step, s)]].concat();
            let lower = [vec![g(b - step, s), g(b + other, s)], lo[1..].to_vec()].concat();
            (sigma * (b - step) / s, Complex64::new(-sigma * tau / s, 0.0), upper, lower, m + 1, n)
        }
        ContiguousVariant::LastLower => {
            need(q > m, "q ≥ m + 1")?;
            let (b, s) = (lo[q - 1].a, lo[q - 1].alpha);
            let upper = [vec![g(1.0 + tau + b, s)], up.to_vec()].concat();
            let lower = [lo[..q - 1].to_vec(), vec![g(b + tau, s), g(b + 1.0, s)]].concat();
            (sigma * b / s, Complex64::new(sigma * tau / s, 0.0), upper, lower, m, n + 1)
        }
        ContiguousVariant::LastUpper => {
            need(p > n, "p ≥ n + 1")?;
            let (a, s) = (up[p - 1].a, up[p - 1].alpha);
            let upper = [up[..p - 1].to_vec(), vec![g(a - tau, s), g(a - 1.0, s)]].concat();
            let lower = [vec![g(a - 1.0 - tau, s)], lo.to_vec()].concat();
            (sigma * (a - 1.0 - tau) / s, Complex64::new(-sigma * tau / s, 0.0), upper, lower, m + 1, n)
        }
    };
    Ok(TwoTermRelation { c0, c1, params: IParams::new(new_m, new_n, upper, lower, tau, params.epsilon())? })
}
