//! Detection of parameter sets whose double gamma ratios collapse to gamma
//! functions, turning the integral into a Fox H-function.

use num_complex::Complex64;

use super::{GammaPair, HParams, IParams};
use crate::gamma::LN_2PI;

/// How the H-function argument is obtained from `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ArgumentMap {
    /// `w = z^e` on the principal branch.
    Power(f64),
    /// `w = k z`.
    Scale(f64),
}

impl ArgumentMap {
    pub fn apply(&self, z: Complex64) -> Complex64 {
        match *self {
            ArgumentMap::Power(e) => (e * z.ln()).exp(),
            ArgumentMap::Scale(k) => k * z,
        }
    }
}

/// Which pairing pattern was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionPattern {
    /// Paired shifts differ by one; uses `G(x + 1) = Γ(x/τ) G(x)`.
    UnitShift,
    /// Paired shifts differ by `τ`; uses the companion relation for `G(x + τ)`.
    TauShift,
}

/// `I(z) = prefactor · H[argument(z); hparams]`.
#[derive(Debug, Clone, PartialEq)]
pub struct HReduction {
    pub hparams: HParams,
    pub prefactor: Complex64,
    pub argument: ArgumentMap,
    pub pattern: ReductionPattern,
    /// Lower pairs of the H-function in the numerator.
    pub m0: usize,
    /// Upper pairs of the H-function in the numerator.
    pub n0: usize,
}

const MATCH_TOL: f64 = 1e-12;

fn close(x: Complex64, y: Complex64) -> bool {
    (x - y).norm() <= MATCH_TOL * (1.0 + x.norm() + y.norm())
}

fn same_slope(x: f64, y: f64) -> bool {
    (x - y).abs() <= MATCH_TOL * (x + y)
}

/// One numerator pair matched to a denominator pair of the other row with
/// equal slope and shifts differing by `±step`.
#[derive(Debug, Clone, Copy)]
struct Link {
    numerator: GammaPair,
    partner: GammaPair,
    /// `true` when the numerator factor cancels up to a gamma function in
    /// the numerator of the H-function.
    keeps_numerator: bool,
}

/// Finds a perfect matching between `nums` and `dens` such that at least one
/// link keeps its numerator. `forward(num, den)` returns `Some(keeps)` for
/// an admissible link. Depth-first; the first matching found wins.
fn find_matching(
    nums: &[GammaPair],
    dens: &[GammaPair],
    forward: &dyn Fn(&GammaPair, &GammaPair) -> Option<bool>,
) -> Option<Vec<Link>> {
    fn go(
        i: usize,
        nums: &[GammaPair],
        dens: &[GammaPair],
        used: &mut Vec<bool>,
        acc: &mut Vec<Link>,
        forward: &dyn Fn(&GammaPair, &GammaPair) -> Option<bool>,
    ) -> bool {
        if i == nums.len() {
            return acc.iter().any(|l| l.keeps_numerator);
        }
        for j in 0..dens.len() {
            if used[j] {
                continue;
            }
            if let Some(keeps) = forward(&nums[i], &dens[j]) {
                used[j] = true;
                acc.push(Link { numerator: nums[i], partner: dens[j], keeps_numerator: keeps });
                if go(i + 1, nums, dens, used, acc, forward) {
                    return true;
                }
                acc.pop();
                used[j] = false;
            }
        }
        false
    }
    let mut used = vec![false; dens.len()];
    let mut acc = Vec::with_capacity(nums.len());
    go(0, nums, dens, &mut used, &mut acc, forward).then_some(acc)
}

/// Recognises the two gamma-collapse patterns and builds the equivalent
/// Fox H-function. Returns `None` when `ε ≠ 0` or no pattern matches.
///
/// Both patterns need `p = q = m + n`, each upper numerator pair matched to
/// a lower denominator pair of the same slope and each lower numerator pair
/// matched to an upper denominator pair of the same slope, with at least one
/// link of each kind keeping its numerator factor. Pairs may appear in any
/// order within their groups.
pub fn reduce_to_fox_h(params: &IParams) -> Option<HReduction> {
    if params.epsilon() != Complex64::new(0.0, 0.0) {
        return None;
    }
    let (m, n) = (params.m(), params.n());
    if m == 0 || n == 0 || params.p() != m + n || params.q() != m + n {
        return None;
    }
    [ReductionPattern::UnitShift, ReductionPattern::TauShift]
        .into_iter()
        .find_map(|pattern| reduce_with(params, pattern))
}

fn reduce_with(params: &IParams, pattern: ReductionPattern) -> Option<HReduction> {
    let tau = params.tau();
    let step = match pattern {
        ReductionPattern::UnitShift => 1.0,
        ReductionPattern::TauShift => tau,
    };
    // Upper numerator a against lower denominator b: a = b − step keeps
    // Γ(1 − ·) upstairs, a = b + step sends it downstairs.
    let upper_links = find_matching(params.upper_numerator(), params.lower_denominator(), &|a, b| {
        if !same_slope(a.alpha, b.alpha) {
            None
        } else if close(a.a, b.a - step) {
            Some(true)
        } else if close(a.a, b.a + step) {
            Some(false)
        } else {
            None
        }
    })?;
    // Lower numerator b against upper denominator a: b = a + step keeps it.
    let lower_links = find_matching(params.lower_numerator(), params.upper_denominator(), &|b, a| {
        if !same_slope(a.alpha, b.alpha) {
            None
        } else if close(b.a, a.a + step) {
            Some(true)
        } else if close(b.a, a.a - step) {
            Some(false)
        } else {
            None
        }
    })?;

    let rescale = |x: Complex64| match pattern {
        ReductionPattern::UnitShift => x / tau,
        ReductionPattern::TauShift => x,
    };
    let mut upper = Vec::new();
    let mut lower = Vec::new();
    for l in upper_links.iter().filter(|l| l.keeps_numerator) {
        upper.push(GammaPair::new(rescale(l.numerator.a), l.numerator.alpha));
    }
    for l in lower_links.iter().filter(|l| !l.keeps_numerator) {
        upper.push(GammaPair::new(rescale(l.partner.a - step), l.partner.alpha));
    }
    for l in lower_links.iter().filter(|l| l.keeps_numerator) {
        lower.push(GammaPair::new(rescale(l.numerator.a - step), l.numerator.alpha));
    }
    for l in upper_links.iter().filter(|l| !l.keeps_numerator) {
        lower.push(GammaPair::new(rescale(l.partner.a), l.partner.alpha));
    }
    let n0 = upper_links.iter().filter(|l| l.keeps_numerator).count();
    let m0 = lower_links.iter().filter(|l| l.keeps_numerator).count();
    let hparams = HParams::new(m0, n0, upper, lower).ok()?;

    let (prefactor, argument) = match pattern {
        ReductionPattern::UnitShift => (Complex64::new(tau, 0.0), ArgumentMap::Power(tau)),
        ReductionPattern::TauShift => {
            let (p0, q0) = (hparams.p() as f64, hparams.q() as f64);
            let count = 2.0 * (m0 + n0) as f64 - (p0 + q0);
            let half_excess = 0.5 * (q0 - p0);
            let log = 0.5 * (tau - 1.0) * count * LN_2PI + (half_excess - hparams.shift_sum()) * tau.ln();
            (log.exp(), ArgumentMap::Scale(tau.powf(hparams.delta_star())))
        }
    };
    Some(HReduction { hparams, prefactor, argument, pattern, m0, n0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::derive_invariants;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unit_pattern() {
        let tau = 2.0;
        // Upper numerator 0.2 against lower denominator 1.2 (keeps), lower
        // numerator 0.5 against upper denominator −0.5 (keeps).
        let p = IParams::new(
            1,
            1,
            vec![GammaPair::real(0.2, 1.5), GammaPair::real(-0.5, 0.8)],
            vec![GammaPair::real(0.5, 0.8), GammaPair::real(1.2, 1.5)],
            tau,
            c(0.0, 0.0),
        )
        .unwrap();
        let r = reduce_to_fox_h(&p).unwrap();
        assert_eq!(r.pattern, ReductionPattern::UnitShift);
        assert_eq!((r.m0, r.n0), (1, 1));
        assert_eq!(r.prefactor, c(2.0, 0.0));
        assert_eq!(r.argument, ArgumentMap::Power(2.0));
        let h = &r.hparams;
        assert_eq!((h.m(), h.n(), h.p(), h.q()), (1, 1, 1, 1));
        assert!((h.upper()[0].a - c(0.1, 0.0)).norm() < 1e-15);
        assert!((h.lower()[0].a - c(-0.25, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn order_within_groups_is_free() {
        let tau = 1.3;
        let up = vec![
            GammaPair::real(0.4, 1.0),
            GammaPair::real(0.1, 2.0),
            GammaPair::real(-0.3, 0.5),
        ];
        // Upper numerators 0.4 (slope 1) and 0.1 (slope 2); lower
        // denominators listed in the other order, one of each kind.
        let lo = vec![GammaPair::real(0.7, 0.5), GammaPair::real(-0.9, 2.0), GammaPair::real(1.4, 1.0)];
        let p = IParams::new(1, 2, up, lo, tau, c(0.0, 0.0)).unwrap();
        let r = reduce_to_fox_h(&p).unwrap();
        assert_eq!((r.m0, r.n0), (1, 1));
        assert_eq!((r.hparams.p(), r.hparams.q()), (1, 2));
    }

    #[test]
    fn tau_pattern() {
        let tau = 1.7;
        let p = IParams::new(
            1,
            1,
            vec![GammaPair::real(0.2, 1.5), GammaPair::real(-0.3, 0.8)],
            vec![GammaPair::real(-0.3 + tau, 0.8), GammaPair::real(0.2 + tau, 1.5)],
            tau,
            c(0.0, 0.0),
        )
        .unwrap();
        let r = reduce_to_fox_h(&p).unwrap();
        assert_eq!(r.pattern, ReductionPattern::TauShift);
        // ā = 0.2, b̄ = −0.3, so δ̄* = −0.5, ν₀ = 0, 𝒩₀ = 2.
        let want = (0.5 * (tau - 1.0) * 2.0 * LN_2PI + 0.5 * tau.ln()).exp();
        assert!((r.prefactor - want).norm() < 1e-13 * want);
        assert_eq!(r.argument, ArgumentMap::Scale(tau.powf(0.8 - 1.5)));
    }

    #[test]
    fn patterns_absent() {
        let good = |eps: Complex64, slope: f64| {
            IParams::new(
                1,
                1,
                vec![GammaPair::real(0.2, 1.5), GammaPair::real(-0.5, 0.8)],
                vec![GammaPair::real(0.5, 0.8), GammaPair::real(1.2, slope)],
                2.0,
                eps,
            )
            .unwrap()
        };
        assert!(reduce_to_fox_h(&good(c(0.0, 0.0), 1.5)).is_some());
        assert!(reduce_to_fox_h(&good(c(0.1, 0.0), 1.5)).is_none());
        assert!(reduce_to_fox_h(&good(c(0.0, 0.0), 1.4)).is_none());
        // Only the downstairs kind in the upper links.
        let p = IParams::new(
            1,
            1,
            vec![GammaPair::real(2.2, 1.5), GammaPair::real(-0.5, 0.8)],
            vec![GammaPair::real(0.5, 0.8), GammaPair::real(1.2, 1.5)],
            2.0,
            c(0.0, 0.0),
        )
        .unwrap();
        assert!(reduce_to_fox_h(&p).is_none());
    }

    fn collapsing_set(
        slopes_up: Vec<f64>,
        slopes_lo: Vec<f64>,
        shifts: Vec<f64>,
        kinds: Vec<bool>,
        tau: f64,
    ) -> Option<IParams> {
        let n = slopes_up.len();
        let m = slopes_lo.len();
        let mut upper = Vec::new();
        let mut lower_den = Vec::new();
        for i in 0..n {
            let a = shifts[i];
            let keep = kinds[i] || i == 0;
            upper.push(GammaPair::real(a, slopes_up[i]));
            lower_den.push(GammaPair::real(if keep { a + 1.0 } else { a - 1.0 }, slopes_up[i]));
        }
        let mut lower = Vec::new();
        let mut upper_den = Vec::new();
        for i in 0..m {
            let a = shifts[n + i];
            let keep = kinds[n + i] || i == 0;
            upper_den.push(GammaPair::real(a, slopes_lo[i]));
            lower.push(GammaPair::real(if keep { a + 1.0 } else { a - 1.0 }, slopes_lo[i]));
        }
        upper.extend(upper_den);
        lower.extend(lower_den);
        IParams::new(m, n, upper, lower, tau, c(0.0, 0.0)).ok()
    }

    proptest! {
        #[test]
        fn collapse_invariants(
            slopes_up in prop::collection::vec(0.2..3.0f64, 1..4),
            slopes_lo in prop::collection::vec(0.2..3.0f64, 1..4),
            shifts in prop::collection::vec(-0.5..0.5f64, 8),
            kinds in prop::collection::vec(any::<bool>(), 8),
            tau in 0.3..3.0f64,
        ) {
            if let Some(p) = collapsing_set(slopes_up, slopes_lo, shifts, kinds, tau) {
                let r = reduce_to_fox_h(&p);
                prop_assert!(r.is_some());
                let r = r.unwrap();
                prop_assert_eq!(r.hparams.p() + r.hparams.q(), p.m() + p.n());
                let inv = derive_invariants(&p, 0.0);
                let tol = 1e-12 * p.scale();
                for x in [inv.delta1, inv.delta2, inv.theta1, inv.theta2, inv.omega1, inv.omega2, inv.delta_star] {
                    prop_assert!(x.abs() < tol);
                }
                prop_assert_eq!(inv.curly_n, 0);
                for x in [inv.pi_sym.im, inv.lambda_sym.im, inv.upsilon.im] {
                    prop_assert!(x.abs() < tol);
                }
                // Π is the H-function's slope balance.
                prop_assert!((inv.pi_sym.re - r.hparams.delta_star()).abs() < tol);
            }
        }
    }
}
