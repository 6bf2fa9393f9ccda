//! Gauss–Kronrod quadrature for complex-valued integrands of a real variable.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Compensated (Neumaier) accumulator for complex sums.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: Complex64,
    comp: Complex64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: Complex64) {
        self.sum.re = two_sum(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = two_sum(self.sum.im, x.im, &mut self.comp.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn two_sum(s: f64, x: f64, comp: &mut f64) -> f64 {
    let t = s + x;
    if s.abs() >= x.abs() {
        *comp += (s - t) + x;
    } else {
        *comp += (x - t) + s;
    }
    t
}

/// One 15-point Kronrod panel with its embedded 7-point Gauss estimate.
#[derive(Debug, Clone, Copy)]
pub struct Panel {
    /// Caller-defined piece index, passed back to the integrand.
    pub piece: usize,
    pub a: f64,
    pub b: f64,
    pub value: Complex64,
    pub error: f64,
    /// Integral of `|f|` over the panel.
    pub abs: f64,
}

/// Evaluates the 15-point rule on `[a, b]` for piece `piece`.
pub fn gk15<F>(f: &F, piece: usize, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(usize, f64) -> Result<Complex64> + ?Sized,
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let fc = f(piece, mid)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    let mut abs = fc.norm() * WGK[7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = f(piece, mid - dx)?;
        let f2 = f(piece, mid + dx)?;
        kron += (f1 + f2) * WGK[j];
        abs += (f1.norm() + f2.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    let value = kron * half;
    let error = ((kron - gauss) * half).norm();
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::QuadratureFailure(format!(
            "non-finite integrand on [{a}, {b}] of piece {piece}"
        )));
    }
    Ok(Panel { piece, a, b, value, error, abs: abs * half.abs() })
}

/// Relative size of the rounding noise in integrand values assembled from
/// logarithms; a panel whose error estimate is below this fraction of its
/// `∫|f|` cannot be improved by bisection.
const ROUNDING: f64 = 64.0 * f64::EPSILON;

/// Number of integrand evaluations per panel.
pub const NODES_PER_PANEL: usize = 15;

#[derive(Debug, Clone, Copy)]
struct ByError(Panel, usize);

impl PartialEq for ByError {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for ByError {}
impl PartialOrd for ByError {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ByError {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .error
            .total_cmp(&other.0.error)
            .then_with(|| other.1.cmp(&self.1))
    }
}

/// Result of a global adaptive refinement.
#[derive(Debug, Clone)]
pub struct Refined {
    pub panels: Vec<Panel>,
    pub value: Complex64,
    pub error: f64,
    pub abs: f64,
    pub evaluations: usize,
}

/// Totals over a set of panels, summed in order.
pub fn totals(panels: &[Panel]) -> (Complex64, f64, f64) {
    let mut s = NeumaierSum::new();
    let mut err = 0.0;
    let mut abs = 0.0;
    for p in panels {
        s.add(p.value);
        err += p.error;
        abs += p.abs;
    }
    (s.value(), err, abs)
}

/// Bisects the worst panel until `target(value, abs)` bounds the summed error.
///
/// Fails when the panel budget is exhausted or when the worst panel's error
/// is already at the rounding level of the integrand.
///
/// Refinement order is deterministic; the returned panels are sorted by
/// `(piece, a)`.
pub fn refine<F, T>(f: &F, initial: Vec<Panel>, target: T, max_panels: usize) -> Result<Refined>
where
    F: Fn(usize, f64) -> Result<Complex64> + ?Sized,
    T: Fn(Complex64, f64) -> f64,
{
    let mut heap = BinaryHeap::new();
    let mut serial = 0usize;
    let mut evaluations = 0usize;
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut abs = 0.0;
    for p in initial {
        value += p.value;
        err += p.error;
        abs += p.abs;
        heap.push(ByError(p, serial));
        serial += 1;
    }
    loop {
        let goal = target(value, abs);
        if err <= goal {
            let mut panels: Vec<Panel> = heap.into_iter().map(|b| b.0).collect();
            panels.sort_by(|x, y| x.piece.cmp(&y.piece).then(x.a.total_cmp(&y.a)));
            let (value, error, abs) = totals(&panels);
            return Ok(Refined { panels, value, error, abs, evaluations });
        }
        if heap.len() >= max_panels {
            return Err(Error::QuadratureFailure(format!(
                "error estimate {err:.3e} above target {goal:.3e} after {} panels",
                heap.len()
            )));
        }
        let ByError(worst, _) = heap.pop().expect("non-empty panel set");
        if worst.error <= ROUNDING * worst.abs {
            return Err(Error::QuadratureFailure(format!(
                "error estimate {err:.3e} stagnates at the rounding level of the integrand, above target {goal:.3e}"
            )));
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            return Err(Error::QuadratureFailure(format!(
                "panel [{}, {}] cannot be bisected further",
                worst.a, worst.b
            )));
        }
        let left = gk15(f, worst.piece, worst.a, mid)?;
        let right = gk15(f, worst.piece, mid, worst.b)?;
        evaluations += 2 * NODES_PER_PANEL;
        value += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        abs += left.abs + right.abs - worst.abs;
        err = err.max(0.0);
        heap.push(ByError(left, serial));
        heap.push(ByError(right, serial + 1));
        serial += 2;
    }
}

/// Adaptive integral of `f` over `[a, b]` to absolute tolerance `abs_tol`.
pub fn integrate<F>(f: F, a: f64, b: f64, abs_tol: f64) -> Result<(Complex64, f64)>
where
    F: Fn(f64) -> Complex64,
{
    let g = |_: usize, x: f64| Ok(f(x));
    let first = gk15(&g, 0, a, b)?;
    let r = refine(&g, vec![first], |_, _| abs_tol, 4000)?;
    Ok((r.value, r.error))
}
