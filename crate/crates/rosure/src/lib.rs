//! Recovery of a union of low-dimensional subspaces from data corrupted by
//! element-wise sparse errors.
//!
//! The central piece is a linearized alternating-direction solver that
//! decomposes a data matrix `X` into `L + E`, where `L` is sparsely
//! self-representative (`L = L W` with a sparse, zero-diagonal `W`) and `E`
//! is an element-wise sparse error. Around it sit synthetic data
//! generators, a robust-PCA baseline, a spectral clustering stage that
//! turns `W` into labels, and file formats plus a CLI to drive the
//! pipelines.

pub mod cluster;
pub mod error;
pub mod io;
pub mod linalg;
pub mod model;
pub mod rpca;
pub mod solver;
pub mod synth;

pub use error::{Error, Result};
pub use linalg::DenseMatrix;
