//! Scalar sums over the parameter lists that govern the growth of the
//! integrand along rays `s = c + R e^{iθ}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{GammaPair, IParams};
use crate::gamma::LN_2PI;

/// Derived sums of an [`IParams`], with the abscissa-dependent combinations
/// evaluated at a given `c`.
///
/// Signs follow the integrand: numerator factors count `+`, denominator
/// factors `−`. Slope sums are `Δ_k = Σ_{i≤m} β^k + Σ_{i≤n} α^k − Σ_{i>m} β^k
/// − Σ_{i>n} α^k`, and `Ω_k`, `Ω_k†` split `Δ_k` into the pairs that enter
/// with argument `−s` and `+s` respectively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedInvariants {
    pub delta1: f64,
    pub delta2: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub omega1: f64,
    pub omega2: f64,
    pub omega1_dag: f64,
    pub omega2_dag: f64,
    pub delta_star: f64,
    pub upsilon: Complex64,
    pub upsilon_dag: Complex64,
    pub pi_sym: Complex64,
    pub lambda_sym: Complex64,
    pub d1: Complex64,
    pub d2: Complex64,
    /// `(1 + 1/τ)/2`.
    pub kappa: f64,
    /// `2(m + n) − (p + q)`.
    pub curly_n: i64,
    /// Abscissa at which `phi1..phi3` and `curly_z` were evaluated.
    pub c: f64,
    pub phi1: f64,
    pub phi2: f64,
    pub phi3: f64,
    pub psi1: f64,
    pub chi: f64,
    /// `−(1 + χ)/Φ₁`, infinite when `Φ₁ = 0`.
    pub curly_z: f64,
    pub curly_a: f64,
    pub curly_b: f64,
}

/// Computes every derived sum of `params`, with `Φ₁, Φ₂, Φ₃` at abscissa `c`.
pub fn derive_invariants(params: &IParams, c: f64) -> DerivedInvariants {
    let tau = params.tau();
    let num_lower = params.lower_numerator();
    let num_upper = params.upper_numerator();
    let den_lower = params.lower_denominator();
    let den_upper = params.upper_denominator();

    // Σ over numerator groups minus Σ over denominator groups.
    let signed = |f: &dyn Fn(&GammaPair) -> f64| -> f64 {
        num_lower.iter().chain(num_upper).map(f).sum::<f64>()
            - den_lower.iter().chain(den_upper).map(f).sum::<f64>()
    };
    let signed_c = |f: &dyn Fn(&GammaPair) -> Complex64| -> Complex64 {
        num_lower.iter().chain(num_upper).map(f).sum::<Complex64>()
            - den_lower.iter().chain(den_upper).map(f).sum::<Complex64>()
    };
    let sum = |g: &[GammaPair], f: &dyn Fn(&GammaPair) -> f64| -> f64 { g.iter().map(f).sum() };
    let sum_c = |g: &[GammaPair], f: &dyn Fn(&GammaPair) -> Complex64| -> Complex64 { g.iter().map(f).sum() };

    let delta1 = signed(&|g| g.alpha);
    let delta2 = signed(&|g| g.alpha * g.alpha);
    let theta1 = signed(&|g| g.alpha * g.alpha.ln());
    let theta2 = signed(&|g| g.alpha * g.alpha * g.alpha.ln());
    let omega1 = sum(num_upper, &|g| g.alpha) - sum(den_lower, &|g| g.alpha);
    let omega2 = sum(num_upper, &|g| g.alpha * g.alpha) - sum(den_lower, &|g| g.alpha * g.alpha);
    let omega1_dag = sum(num_lower, &|g| g.alpha) - sum(den_upper, &|g| g.alpha);
    let omega2_dag = sum(num_lower, &|g| g.alpha * g.alpha) - sum(den_upper, &|g| g.alpha * g.alpha);
    let delta_star = sum(params.lower(), &|g| g.alpha) - sum(params.upper(), &|g| g.alpha);
    let upsilon = sum_c(den_lower, &|g| g.a * g.alpha) - sum_c(num_upper, &|g| g.a * g.alpha);
    let upsilon_dag = sum_c(den_upper, &|g| g.a * g.alpha) - sum_c(num_lower, &|g| g.a * g.alpha);
    let pi_sym = signed_c(&|g| g.a * g.alpha);
    let lambda_sym = signed_c(&|g| g.a * g.alpha * g.alpha.ln());
    let d1 = signed_c(&|g| g.a);
    let d2 = signed_c(&|g| g.a * g.a);

    let kappa = 0.5 * (1.0 + 1.0 / tau);
    let curly_n = 2 * (params.m() + params.n()) as i64 - (params.p() + params.q()) as i64;
    let phi1 = (pi_sym.re + c * delta2) / tau - kappa * delta1;
    let phi2 = (lambda_sym.re + c * theta2) / tau - kappa * theta1;
    let phi3 = (upsilon.re - c * omega2) / tau + kappa * omega1;
    let psi1 = lambda_sym.re / tau - kappa * theta1 + 0.5 * LN_2PI * delta_star;
    let chi = d2.re / (2.0 * tau) - kappa * d1.re + (tau / 12.0 + 0.25 + 1.0 / (12.0 * tau)) * curly_n as f64;
    let curly_z = if phi1 == 0.0 { f64::INFINITY } else { -(1.0 + chi) / phi1 };

    DerivedInvariants {
        delta1,
        delta2,
        theta1,
        theta2,
        omega1,
        omega2,
        omega1_dag,
        omega2_dag,
        delta_star,
        upsilon,
        upsilon_dag,
        pi_sym,
        lambda_sym,
        d1,
        d2,
        kappa,
        curly_n,
        c,
        phi1,
        phi2,
        phi3,
        psi1,
        chi,
        curly_z,
        curly_a: params.curly_a(),
        curly_b: params.curly_b(),
    }
}

impl DerivedInvariants {
    /// `Θ₂ + 2π Re ε`, the coefficient that decides between the vertical
    /// line and the loops when `Δ₂ = 0`.
    pub fn balanced_r2(&self, epsilon: Complex64) -> f64 {
        self.theta2 + 2.0 * PI * epsilon.re
    }

    /// `K₅` at abscissa `c`, equal to `χ + cΦ₁ − c²Δ₂/(2τ)`.
    pub fn log_exponent(&self, tau: f64) -> f64 {
        let c = self.c;
        (self.d2.re + 2.0 * c * self.pi_sym.re + c * c * self.delta2) / (2.0 * tau)
            - self.kappa * (self.d1.re + c * self.delta1)
            + (tau / 12.0 + 0.25 + 1.0 / (12.0 * tau)) * self.curly_n as f64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::GammaPair;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Three-by-three set with all slopes `1/ν` and `τ = 1/ν`, the shape
    /// that represents the Kilbas–Saigo function.
    fn ks_like(a: f64, nu: f64, phi: f64) -> IParams {
        let tau = 1.0 / nu;
        let s = 1.0 / nu;
        IParams::new(
            1,
            2,
            vec![GammaPair::real(0.0, s), GammaPair::real(1.0 + tau - phi, s), GammaPair::real(0.0, s)],
            vec![GammaPair::real(tau, s), GammaPair::real(tau, s), GammaPair::real(1.0 + tau - phi - a * tau, s)],
            tau,
            c(0.0, 0.0),
        )
        .unwrap()
    }

    #[test]
    fn balanced_set() {
        let (a, nu) = (0.6, 1.3);
        let tau = 1.0 / nu;
        let inv = derive_invariants(&ks_like(a, nu, 0.9), 0.2);
        for x in [inv.delta1, inv.delta2, inv.theta1, inv.theta2, inv.omega1, inv.omega2, inv.delta_star] {
            assert!(x.abs() < 1e-15, "{x}");
        }
        assert!((inv.pi_sym - c(a * tau / nu, 0.0)).norm() < 1e-14);
        assert!((inv.phi1 - a / nu).abs() < 1e-14);
        assert!((inv.phi3 - (1.0 - a) / nu).abs() < 1e-14);
        assert!((inv.phi1 + 2.0 * inv.phi3 - (2.0 - a) / nu).abs() < 1e-14);
        assert_eq!(inv.curly_n, 0);
    }

    #[test]
    fn single_pair() {
        let p = IParams::new(1, 0, vec![], vec![GammaPair::real(0.0, 2.0)], 1.0, c(0.0, 0.0)).unwrap();
        let inv = derive_invariants(&p, 0.0);
        assert_eq!(inv.delta2, 4.0);
        assert_eq!(inv.delta1, 2.0);
        assert_eq!(inv.omega2, 0.0);
        assert_eq!(inv.omega2_dag, 4.0);
        assert_eq!(inv.kappa, 1.0);
        assert_eq!(inv.curly_n, 1);
    }

    fn pair() -> impl Strategy<Value = GammaPair> {
        (-2.0..2.0f64, -1.0..1.0f64, 0.2..3.0f64).prop_map(|(re, im, s)| GammaPair::new(c(re, im), s))
    }

    proptest! {
        #[test]
        fn split_identities(
            upper in prop::collection::vec(pair(), 0..4),
            lower in prop::collection::vec(pair(), 0..4),
            mf in 0.0..1.0f64, nf in 0.0..1.0f64, tau in 0.3..3.0f64, cc in -2.0..2.0f64,
        ) {
            let m = (mf * (lower.len() as f64 + 1.0)) as usize;
            let n = (nf * (upper.len() as f64 + 1.0)) as usize;
            let p = IParams::assemble(m.min(lower.len()), n.min(upper.len()), upper, lower, tau, c(0.0, 0.0)).unwrap();
            let inv = derive_invariants(&p, cc);
            let tol = 1e-12 * p.scale();
            prop_assert!((inv.delta2 - (inv.omega2 + inv.omega2_dag)).abs() < tol);
            prop_assert!((inv.delta1 - (inv.omega1 + inv.omega1_dag)).abs() < tol);
            prop_assert!((inv.kappa - 0.5 * (1.0 + 1.0 / tau)).abs() < 1e-15);
            prop_assert_eq!(inv.curly_n, 2 * (p.m() + p.n()) as i64 - (p.p() + p.q()) as i64);
            // Π splits into the pairs entering with +s and −s.
            let split = -inv.upsilon - inv.upsilon_dag;
            prop_assert!((inv.pi_sym - split).norm() < tol);
            let k5 = inv.chi + cc * inv.phi1 - cc * cc * inv.delta2 / (2.0 * tau);
            prop_assert!((inv.log_exponent(tau) - k5).abs() < tol * (1.0 + cc * cc));
        }
    }
}
