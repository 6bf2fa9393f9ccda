//! Book snippets, compiled and run as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/double-gamma.md")]
pub mod double_gamma {}

#[doc = include_str!("../../../book/src/parameters.md")]
pub mod parameters {}

#[doc = include_str!("../../../book/src/contours.md")]
pub mod contours {}

#[doc = include_str!("../../../book/src/evaluation.md")]
pub mod evaluation {}

#[doc = include_str!("../../../book/src/transformations.md")]
pub mod transformations {}

#[doc = include_str!("../../../book/src/kilbas-saigo.md")]
pub mod kilbas_saigo {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}

#[doc = include_str!("../../../README.md")]
pub mod readme {}
