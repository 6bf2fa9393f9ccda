//! Parameter records for the Fox–Barnes integral and the Fox H-function.
//!
//! An [`IParams`] describes the integrand
//!
//! ```text
//!   ∏_{i≤m} G(b_i + β_i s) ∏_{i≤n} G(1 + τ − a_i − α_i s)
//!   ───────────────────────────────────────────────────────  · e^{π ε s²/τ} z^{−s}
//!   ∏_{i>m} G(1 + τ − b_i − β_i s) ∏_{i>n} G(a_i + α_i s)
//! ```
//!
//! where `G(·; τ)` is the double gamma function. Upper pairs `(a_i, α_i)`
//! are numbered `1..=p`, lower pairs `(b_i, β_i)` are numbered `1..=q`.

mod classify;
mod invariants;
mod reduce;
mod transforms;

pub use classify::{choose_abscissa, classify_contour, ContourDecision, ContourKind};
pub use invariants::{derive_invariants, DerivedInvariants};
pub use reduce::{reduce_to_fox_h, ArgumentMap, HReduction, ReductionPattern};
pub use transforms::{
    contiguous_relation, expand_derivative, laplace_image, transform_invert, transform_modular,
    transform_scale, transform_shift, ContiguousVariant, DerivativeForm, Expansion,
    LaplaceImage, ModularImage, ShiftImage, TwoTermRelation,
};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A shift and a positive slope, `(a, α)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaPair {
    pub a: Complex64,
    pub alpha: f64,
}

impl GammaPair {
    pub fn new(a: Complex64, alpha: f64) -> Self {
        Self { a, alpha }
    }

    pub fn real(a: f64, alpha: f64) -> Self {
        Self { a: Complex64::new(a, 0.0), alpha }
    }

    fn validate(&self, what: &str) -> Result<()> {
        if !(self.a.re.is_finite() && self.a.im.is_finite()) {
            return Err(Error::InvalidParams(format!("{what}: non-finite shift {}", self.a)));
        }
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(Error::InvalidParams(format!(
                "{what}: slope must be positive and finite, got {}",
                self.alpha
            )));
        }
        Ok(())
    }
}

/// Parameters of the Fox–Barnes integral.
///
/// Construct through [`IParams::new`], which enforces the index ranges, the
/// slope signs and the separation `𝒜 < ℬ` of the two pole families. Fields
/// are read-only so a constructed value always satisfies these.
#[derive(Debug, Clone, PartialEq)]
pub struct IParams {
    m: usize,
    n: usize,
    upper: Vec<GammaPair>,
    lower: Vec<GammaPair>,
    tau: f64,
    epsilon: Complex64,
}

impl IParams {
    pub fn new(
        m: usize,
        n: usize,
        upper: Vec<GammaPair>,
        lower: Vec<GammaPair>,
        tau: f64,
        epsilon: Complex64,
    ) -> Result<Self> {
        let params = Self::assemble(m, n, upper, lower, tau, epsilon)?;
        let (a, b) = (params.curly_a(), params.curly_b());
        if !(a < b) {
            return Err(Error::InvalidParams(format!(
                "pole families overlap: max of right-moving poles {a} is not below min of left-moving poles {b}"
            )));
        }
        Ok(params)
    }

    /// Checks everything except the pole separation.
    pub(crate) fn assemble(
        m: usize,
        n: usize,
        upper: Vec<GammaPair>,
        lower: Vec<GammaPair>,
        tau: f64,
        epsilon: Complex64,
    ) -> Result<Self> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(Error::InvalidParams(format!("tau must be positive and finite, got {tau}")));
        }
        if !(epsilon.re.is_finite() && epsilon.im.is_finite()) {
            return Err(Error::InvalidParams("epsilon must be finite".into()));
        }
        if n > upper.len() {
            return Err(Error::InvalidParams(format!("n = {n} exceeds p = {}", upper.len())));
        }
        if m > lower.len() {
            return Err(Error::InvalidParams(format!("m = {m} exceeds q = {}", lower.len())));
        }
        for (i, u) in upper.iter().enumerate() {
            u.validate(&format!("upper pair {}", i + 1))?;
        }
        for (i, l) in lower.iter().enumerate() {
            l.validate(&format!("lower pair {}", i + 1))?;
        }
        Ok(Self { m, n, upper, lower, tau, epsilon })
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> usize {
        self.upper.len()
    }
    pub fn q(&self) -> usize {
        self.lower.len()
    }
    pub fn upper(&self) -> &[GammaPair] {
        &self.upper
    }
    pub fn lower(&self) -> &[GammaPair] {
        &self.lower
    }
    pub fn tau(&self) -> f64 {
        self.tau
    }
    pub fn epsilon(&self) -> Complex64 {
        self.epsilon
    }

    /// Upper pairs in the numerator, `i ≤ n`.
    pub fn upper_numerator(&self) -> &[GammaPair] {
        &self.upper[..self.n]
    }
    /// Upper pairs in the denominator, `i > n`.
    pub fn upper_denominator(&self) -> &[GammaPair] {
        &self.upper[self.n..]
    }
    /// Lower pairs in the numerator, `i ≤ m`.
    pub fn lower_numerator(&self) -> &[GammaPair] {
        &self.lower[..self.m]
    }
    /// Lower pairs in the denominator, `i > m`.
    pub fn lower_denominator(&self) -> &[GammaPair] {
        &self.lower[self.m..]
    }

    /// Rightmost real part of the poles that must stay left of the contour,
    /// `−min Re(a_j)/α_j` over `j > n`; `−∞` when there are none.
    pub fn curly_a(&self) -> f64 {
        self.upper_denominator()
            .iter()
            .map(|u| -u.a.re / u.alpha)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Leftmost real part of the poles that must stay right of the contour,
    /// `min Re(1 + τ − b_i)/β_i` over `i > m`; `+∞` when there are none.
    pub fn curly_b(&self) -> f64 {
        self.lower_denominator()
            .iter()
            .map(|l| (1.0 + self.tau - l.a.re) / l.alpha)
            .fold(f64::INFINITY, f64::min)
    }

    /// Magnitude used to turn exact-zero tests on derived sums into
    /// tolerance tests.
    pub(crate) fn scale(&self) -> f64 {
        let pair = |g: &GammaPair| {
            let s = g.alpha;
            (s + s * s) * (1.0 + g.a.norm()) * (1.0 + s.ln().abs())
        };
        1.0 + self.upper.iter().map(pair).sum::<f64>()
            + self.lower.iter().map(pair).sum::<f64>()
            + self.epsilon.norm()
            + self.tau
            + 1.0 / self.tau
    }
}

/// A pole of the integrand from a zero of one denominator factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticePole {
    pub s: Complex64,
    /// Zero-based position of the factor's pair within its row.
    pub index: usize,
    /// Lattice coordinates: the factor's argument equals `−(m τ + n)`.
    pub m: u64,
    pub n: u64,
}

/// Which denominator family a pole comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PoleFamily {
    /// Zeros of `G(1 + τ − b_i − β_i s)`, `i > m`; these lie right of the contour.
    Lower,
    /// Zeros of `G(a_j + α_j s)`, `j > n`; these lie left of the contour.
    Upper,
}

/// Enumerates the poles of one family ordered by distance from the contour,
/// smallest lattice key `m τ + n` first per factor. Returns at least `count`
/// poles when the family is non-empty, with all poles closer to the contour
/// than the last one included.
pub(crate) fn family_poles(params: &IParams, family: PoleFamily, count: usize) -> Vec<LatticePole> {
    let tau = params.tau;
    let (pairs, base) = match family {
        PoleFamily::Lower => (params.lower_denominator(), params.m),
        PoleFamily::Upper => (params.upper_denominator(), params.n),
    };
    if pairs.is_empty() || count == 0 {
        return Vec::new();
    }
    // Lower family: 1 + τ − b − β s = −(m τ + n)  ⇒  s = (1 + τ − b + m τ + n)/β,
    // which is the (m+1, n+1) point of the usual primed lattice.
    // Upper family: a + α s = −(m τ + n)  ⇒  s = −(a + m τ + n)/α.
    let pos = |g: &GammaPair, key: f64| match family {
        PoleFamily::Lower => (1.0 + tau - g.a + key) / g.alpha,
        PoleFamily::Upper => -(g.a + key) / g.alpha,
    };
    let distance = |s: Complex64| match family {
        PoleFamily::Lower => s.re,
        PoleFamily::Upper => -s.re,
    };
    let mut limit = 4.0 * (1.0 + tau);
    loop {
        let mut out = Vec::new();
        for (index, g) in pairs.iter().enumerate() {
            let mut mm = 0u64;
            while (mm as f64) * tau <= limit {
                let mut nn = 0u64;
                while (mm as f64) * tau + nn as f64 <= limit {
                    let key = mm as f64 * tau + nn as f64;
                    out.push(LatticePole { s: pos(g, key), index: base + index, m: mm, n: nn });
                    nn += 1;
                }
                mm += 1;
            }
        }
        out.sort_by(|x, y| {
            distance(x.s)
                .total_cmp(&distance(y.s))
                .then(x.index.cmp(&y.index))
                .then(x.m.cmp(&y.m))
                .then(x.n.cmp(&y.n))
        });
        // Every pole left out has key > limit, so its distance exceeds this bound.
        let bound = pairs
            .iter()
            .map(|g| distance(pos(g, limit)))
            .fold(f64::INFINITY, f64::min);
        if out.len() >= count && distance(out[count - 1].s) <= bound {
            let cut = out.partition_point(|x| distance(x.s) <= bound);
            out.truncate(cut.max(count));
            return out;
        }
        limit *= 2.0;
    }
}

/// Poles of the integrand, `count` from each family.
///
/// The first list holds the poles from `G(1 + τ − b_i − β_i s)`, `i > m`,
/// which lie to the right of the contour, in increasing real part. The
/// second holds the poles from `G(a_j + α_j s)`, `j > n`, which lie to the
/// left, in decreasing real part. Coincident lattice points of a single
/// factor (rational `τ`) appear once per lattice coordinate.
pub fn pole_lattices(params: &IParams, count: usize) -> (Vec<LatticePole>, Vec<LatticePole>) {
    let mut right_side = family_poles(params, PoleFamily::Lower, count);
    let mut left_side = family_poles(params, PoleFamily::Upper, count);
    right_side.truncate(count);
    left_side.truncate(count);
    (right_side, left_side)
}

/// Parameters of a Fox H-function
///
/// ```text
///   ∏_{i≤m} Γ(b_i + β_i s) ∏_{i≤n} Γ(1 − a_i − α_i s)
///   ─────────────────────────────────────────────────  w^{−s}.
///   ∏_{i>m} Γ(1 − b_i − β_i s) ∏_{i>n} Γ(a_i + α_i s)
/// ```
#[derive(Debug, Clone, PartialEq)]
pub struct HParams {
    m: usize,
    n: usize,
    upper: Vec<GammaPair>,
    lower: Vec<GammaPair>,
}

impl HParams {
    pub fn new(m: usize, n: usize, upper: Vec<GammaPair>, lower: Vec<GammaPair>) -> Result<Self> {
        if n > upper.len() || m > lower.len() {
            return Err(Error::InvalidParams(format!(
                "index ranges violated: m = {m}, n = {n}, p = {}, q = {}",
                upper.len(),
                lower.len()
            )));
        }
        for (i, u) in upper.iter().enumerate() {
            u.validate(&format!("upper pair {}", i + 1))?;
        }
        for (i, l) in lower.iter().enumerate() {
            l.validate(&format!("lower pair {}", i + 1))?;
        }
        Ok(Self { m, n, upper, lower })
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn p(&self) -> usize {
        self.upper.len()
    }
    pub fn q(&self) -> usize {
        self.lower.len()
    }
    pub fn upper(&self) -> &[GammaPair] {
        &self.upper
    }
    pub fn lower(&self) -> &[GammaPair] {
        &self.lower
    }

    /// `Σ β_i − Σ α_i`.
    pub fn delta_star(&self) -> f64 {
        self.lower.iter().map(|l| l.alpha).sum::<f64>() - self.upper.iter().map(|u| u.alpha).sum::<f64>()
    }

    /// `∏ β_i^{β_i} ∏ α_i^{−α_i}`.
    pub fn h_constant(&self) -> f64 {
        let log = self.lower.iter().map(|l| l.alpha * l.alpha.ln()).sum::<f64>()
            - self.upper.iter().map(|u| u.alpha * u.alpha.ln()).sum::<f64>();
        log.exp()
    }

    /// `Σ_{i≤n} α_i − Σ_{i>m} β_i`.
    pub fn y_constant(&self) -> f64 {
        self.upper[..self.n].iter().map(|u| u.alpha).sum::<f64>()
            - self.lower[self.m..].iter().map(|l| l.alpha).sum::<f64>()
    }

    /// `Σ b_i − Σ a_i`.
    pub fn shift_sum(&self) -> Complex64 {
        self.lower.iter().map(|l| l.a).sum::<Complex64>() - self.upper.iter().map(|u| u.a).sum::<Complex64>()
    }

    /// Half-opening of the sector of convergence of the vertical contour,
    /// `Σ_{i≤m} β + Σ_{i≤n} α − Σ_{i>m} β − Σ_{i>n} α`.
    pub fn aperture(&self) -> f64 {
        self.delta_star() + 2.0 * self.y_constant()
    }
}
