//! qaxiom: a workbench for noncommutative operator algebras.
//!
//! The crate has an exact symbolic layer and a numeric layer:
//!
//! - [`symalg`]: noncommutative polynomials with Gaussian-rational
//!   coefficients, normal ordering under central commutator tables, and
//!   the Jacobi / equivalence / dimension consistency checks.
//! - [`repr`]: finite-dimensional matrix representations (truncated
//!   ladder and periodic grid) with truncation-aware residual audits.
//! - [`spectra`]: eigenvalue and uncertainty diagnostics on those
//!   representations.
//! - [`flux`]: gauge potentials, loop integrals and flux-quantization
//!   detection.
//! - [`frontend`]: the expression and file parsers plus the CLI command
//!   dispatch that drives everything above.

pub mod error;
pub mod flux;
pub mod frontend;
pub mod repr;
pub mod spectra;
pub mod symalg;

pub use error::{Error, Result};
