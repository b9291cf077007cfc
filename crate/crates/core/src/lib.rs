//! Numerical laboratory for the full-dispersion Kadomtsev–Petviashvili
//! equation: dispersion symbol, asymmetric Bessel functions, the
//! frequency-localised kernel, spectral fields, and a pseudo-spectral solver.

pub mod error;
pub mod symbol;
pub mod quad;
pub mod besselasym;
pub mod oscint;
pub mod spectral;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
