//! Double gamma function: special values and the functional and modular
//! relations on grids and random arguments.

use std::f64::consts::{PI, TAU as TWO_PI};

use foxbarnes::dgamma::{double_gamma_asymptotic_log, log_double_gamma, DGammaConfig, DoubleGamma};
use foxbarnes::gamma::log_gamma;
use foxbarnes::Complex64;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Distance between two logarithms, ignoring multiples of `2πi`.
fn log_gap(a: Complex64, b: Complex64) -> f64 {
    let d = a - b;
    c(d.re, d.im - TWO_PI * (d.im / TWO_PI).round()).norm()
}

fn ln_2pi() -> f64 {
    TWO_PI.ln()
}

fn lg(z: Complex64) -> Complex64 {
    log_gamma(z).unwrap()
}

/// `log G(z+1) − log Γ(z/τ) − log G(z)`.
fn unit_shift_residual(g: &DoubleGamma, z: Complex64) -> f64 {
    log_gap(g.log(z + 1.0).unwrap(), lg(z / g.tau()) + g.log(z).unwrap())
}

/// `log G(z+τ) − [(τ−1)/2 log 2π + (1/2 − z) log τ + log Γ(z) + log G(z)]`.
fn tau_shift_residual(g: &DoubleGamma, z: Complex64) -> f64 {
    let tau = g.tau();
    let rhs = 0.5 * (tau - 1.0) * ln_2pi() + (0.5 - z) * tau.ln() + lg(z) + g.log(z).unwrap();
    log_gap(g.log(z + tau).unwrap(), rhs)
}

/// Relative residual of the modular relation between `G(z; τ)` and `G(z/τ; 1/τ)`.
fn modular_residual(g: &DoubleGamma, dual: &DoubleGamma, z: Complex64) -> f64 {
    let tau = g.tau();
    let log_factor = z * (tau - 1.0) / (2.0 * tau) * ln_2pi() + ((z - z * z) / (2.0 * tau) + z / 2.0 - 1.0) * tau.ln();
    let lhs = g.log(z).unwrap();
    let rhs = log_factor + dual.log(z / tau).unwrap();
    let d = lhs - rhs;
    (c(d.re, d.im - TWO_PI * (d.im / TWO_PI).round()).exp() - 1.0).norm()
}

/// Five arguments with `Re z ∈ [0.5, 5]` and five `τ` values.
fn grid() -> Vec<(Complex64, f64)> {
    let zs = [c(0.5, 0.0), c(1.3, 0.7), c(2.2, -1.5), c(3.7, 2.4), c(5.0, -0.3)];
    let taus = [0.3, 0.7, 1.0, 2.0, 2.7];
    zs.iter().flat_map(|&z| taus.iter().map(move |&t| (z, t))).collect()
}

#[test]
fn special_values() {
    for tau in [0.3, 0.7, 1.0, 2.0, 2.7] {
        let g = DoubleGamma::new(tau).unwrap();
        assert!(g.log(c(1.0, 0.0)).unwrap().norm() < 1e-10, "τ = {tau}");
    }
    let cfg = DGammaConfig::default();
    assert!(log_double_gamma(c(3.0, 0.0), 1.0, &cfg).unwrap().norm() < 1e-10);
    let half_log_pi = 0.5 * PI.ln();
    assert!((log_double_gamma(c(3.0, 0.0), 2.0, &cfg).unwrap() - half_log_pi).norm() < 1e-10);
    // Recursing from G(1; 1) = 1: G(4) = Γ(3)Γ(2)Γ(1) = 2, G(5) = 3!·2 = 12.
    let g = DoubleGamma::new(1.0).unwrap();
    assert!((g.value(c(4.0, 0.0)).unwrap() - 2.0).norm() < 1e-10);
    assert!((g.value(c(5.0, 0.0)).unwrap() - 12.0).norm() < 1e-10);
}

#[test]
fn functional_relations_on_grid() {
    for (z, tau) in grid() {
        let g = DoubleGamma::new(tau).unwrap();
        assert!(unit_shift_residual(&g, z) < 1e-9, "unit shift at z = {z}, τ = {tau}");
        assert!(tau_shift_residual(&g, z) < 1e-9, "τ shift at z = {z}, τ = {tau}");
    }
}

#[test]
fn modular_relation_on_grid() {
    for (z, tau) in grid() {
        let (g, dual) = (DoubleGamma::new(tau).unwrap(), DoubleGamma::new(1.0 / tau).unwrap());
        assert!(modular_residual(&g, &dual, z) < 1e-8, "z = {z}, τ = {tau}");
    }
}

#[test]
fn left_half_plane_by_recursion() {
    // Arguments left of the recursion floor walk right through the unit shift.
    for tau in [0.45, 1.3] {
        let g = DoubleGamma::new(tau).unwrap();
        for z in [c(-0.7, 0.2), c(-2.3, -1.1), c(0.2, 3.0)] {
            assert!(unit_shift_residual(&g, z) < 1e-9, "z = {z}, τ = {tau}");
            assert!(tau_shift_residual(&g, z) < 1e-9, "z = {z}, τ = {tau}");
        }
    }
}

#[test]
fn leading_asymptotic_form() {
    // The leading form omits the constant and the z^{-j} tail, so the gap
    // to the full value tends to a τ-dependent constant.
    for tau in [0.7, 1.0, 2.0] {
        let g = DoubleGamma::new(tau).unwrap();
        let gap = |z: Complex64| g.log(z).unwrap() - double_gamma_asymptotic_log(z, tau).unwrap();
        let (near, far) = (gap(c(60.0, 10.0)), gap(c(120.0, -20.0)));
        assert!((near - far).norm() < 5e-3, "τ = {tau}: {near} vs {far}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn relations_hold_for_random_arguments(
        re in 0.5f64..5.0, im in -3.0f64..3.0, tau in 0.3f64..2.7,
    ) {
        let z = c(re, im);
        let g = DoubleGamma::new(tau).unwrap();
        prop_assert!(unit_shift_residual(&g, z) < 1e-9);
        prop_assert!(tau_shift_residual(&g, z) < 1e-9);
        let dual = DoubleGamma::new(1.0 / tau).unwrap();
        prop_assert!(modular_residual(&g, &dual, z) < 1e-8);
    }

    #[test]
    fn conjugate_symmetry(re in 0.5f64..5.0, im in -3.0f64..3.0, tau in 0.3f64..2.7) {
        let g = DoubleGamma::new(tau).unwrap();
        let z = c(re, im);
        prop_assert!(log_gap(g.log(z.conj()).unwrap(), g.log(z).unwrap().conj()) < 1e-10);
    }
}
