//! Helpers shared by the integration tests.
#![allow(dead_code)]

use foxbarnes::eval::{evaluate_i, log_integrand};
use foxbarnes::params::{derive_invariants, GammaPair, IParams};
use foxbarnes::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rel(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / y.norm()
}

/// Quadrature at tolerance `1e-10`.
pub fn value(params: &IParams, z: Complex64) -> Complex64 {
    evaluate_i(z, params, 1e-10).unwrap_or_else(|e| panic!("I({z}) failed: {e}")).value
}

/// A set with `Δ₂ = 4.26 > 0`, so the vertical line is admissible everywhere
/// off the negative axis.
pub fn positive_quadratic(tau: f64) -> IParams {
    IParams::new(
        1,
        1,
        vec![GammaPair::real(0.3, 1.0), GammaPair::real(0.2, 0.5)],
        vec![GammaPair::real(0.1, 2.0), GammaPair::real(0.4, 0.7)],
        tau,
        c(0.0, 0.0),
    )
    .unwrap()
}

/// First and second derivatives along the real direction by five-point
/// central differences.
pub fn derivatives(f: &dyn Fn(Complex64) -> Complex64, z: Complex64, h: f64) -> (Complex64, Complex64) {
    let v: Vec<Complex64> = [-2.0, -1.0, 0.0, 1.0, 2.0].iter().map(|k| f(z + k * h)).collect();
    let d1 = (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h);
    let d2 = (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) / (12.0 * h * h);
    (d1, d2)
}

/// Random real parameter sets with `Δ₂ > 0` and a non-empty separating
/// strip, reproducible from `seed`.
pub fn random_positive_sets(seed: u64, count: usize) -> Vec<IParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let p = rng.gen_range(1..=3usize);
        let q = rng.gen_range(1..=3usize);
        let m = rng.gen_range(0..=q);
        let n = rng.gen_range(0..=p);
        let mut pair = || GammaPair::real(rng.gen_range(-0.4..0.6), rng.gen_range(0.3..2.0));
        let upper: Vec<_> = (0..p).map(|_| pair()).collect();
        let lower: Vec<_> = (0..q).map(|_| pair()).collect();
        let tau = rng.gen_range(0.4..2.5);
        let Ok(params) = IParams::new(m, n, upper, lower, tau, c(0.0, 0.0)) else { continue };
        if derive_invariants(&params, 0.0).delta2 > 0.1 && params.curly_b() - params.curly_a() > 0.1 {
            out.push(params);
        }
    }
    out
}

/// The separating strip, clipped to `[-3, 3]`.
pub fn strip(params: &IParams) -> (f64, f64) {
    (params.curly_a().max(-3.0), params.curly_b().min(3.0))
}

/// Whether the integrand stays within a factor `1e3` of its size on the real
/// axis along every vertical line through the strip, for `z` and `z̄`.
/// Larger transient growth forces cancellation that double precision cannot
/// resolve to the tolerances used in the tests.
pub fn well_conditioned(params: &IParams, z: Complex64) -> bool {
    let (lo, hi) = strip(params);
    let peak = 3.0 * std::f64::consts::LN_10;
    [0.3, 0.5, 0.7].iter().all(|w| {
        let x = lo + w * (hi - lo);
        [z, z.conj()].iter().all(|&z| {
            let Ok(base) = log_integrand(c(x, 0.0), z, params) else { return false };
            (-240..=240).all(|k| {
                log_integrand(c(x, 0.25 * k as f64), z, params).is_ok_and(|l| l.re - base.re < peak)
            })
        })
    })
}
