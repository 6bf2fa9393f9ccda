//! Double gamma function, Fox-Barnes I-function and Kilbas–Saigo function
//! evaluation.

pub mod dgamma;
pub mod error;
pub mod eval;
pub mod gamma;
pub mod kilbas_saigo;
pub mod params;
pub mod quad;

pub use error::{Error, Result};
pub use num_complex::Complex64;
