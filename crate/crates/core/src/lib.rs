//! Exact Chevalley–Eilenberg, Hodge and Kuranishi computations for
//! finite-dimensional Lie algebras.
//!
//! Everything is computed over the Gaussian rationals ℚ(i); no floating
//! point is used anywhere. The main entry points are
//! [`ce::Dga::ce_complex`], [`decomp::split_complex`] and
//! [`kuranishi::kuranishi_series`].

pub mod ce;
pub mod cli;
pub mod decomp;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod jordan;
pub mod kuranishi;
pub mod liealg;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod scalar;

pub use error::{GermError, Result};
pub use scalar::Scalar;
