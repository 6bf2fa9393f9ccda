use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the evaluation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("gamma function pole at {0}")]
    GammaPole(Complex64),

    #[error("integrand pole at s = {0}")]
    IntegrandPole(Complex64),

    #[error("zero lattice: z = {z} coincides with -({m})*tau - {n} for tau = {tau}")]
    ZeroLattice { z: Complex64, tau: f64, m: u64, n: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("no convergent contour: {0}")]
    NoConvergentContour(String),

    #[error("truncation failure: {0}")]
    TruncationFailure(String),

    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    #[error("pole of order {order} at s = {at}; only simple poles are summed")]
    NonSimplePole { at: Complex64, order: i64 },

    #[error("series diverges in this parameter regime: {0}")]
    DivergentRegime(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_finite(z: Complex64, what: &'static str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite(what))
    }
}
