//! Unified transform solution of the forced linear Schrödinger equation on the
//! half-line and half-space, a Picard solver for the cubic NLS initial-boundary
//! value problem, Bourgain-type norm estimators, and numerical checks of the
//! associated estimates.

pub mod cutoffs;
pub mod error;
pub mod fokas;
pub mod grid;
pub mod lab;
pub mod nls;
pub mod norms;
pub mod oracle;
pub mod quadrature;
pub mod transforms;

pub use error::{FokasError, Result};
pub use num_complex::Complex64 as C64;
