//! Step-kernel calculus for locally dense graphons.
//!
//! Exact homomorphism densities of finite graphs in block-constant kernels, exact
//! membership tests for the copositive and positive semidefinite cones (and hence for
//! local density and regularity), the graph operations that interact with them (gluing,
//! subdivision, generalized theta graphs), and a seeded search for PSD 0-regular kernels
//! in which a graph has negative density.
//!
//! The kernel algebra and density engines are generic over [`Scalar`]; the crate-root
//! aliases fix the two instantiations used in practice: exact [`Rational`] kernels for
//! every decision, `f64` kernels for spectra and search.

pub mod cones;
pub mod error;
pub mod graphs;
pub mod homdensity;
pub mod kernels;
pub mod matrix;
pub mod scalar;
pub mod search;
pub mod suite;

pub use error::{Error, Result};
pub use graphs::{GlueSpec, Graph};
pub use kernels::{BlockFunction, StepKernel};
pub use matrix::Matrix;
pub use scalar::{Rational, Ring, Scalar};

/// Exact step kernel.
pub type Kernel = StepKernel<Rational>;
/// Floating-point step kernel.
pub type KernelF64 = StepKernel<f64>;
/// Exact block function.
pub type BlockFn = BlockFunction<Rational>;
/// Exact dense matrix.
pub type RationalMatrix = Matrix<Rational>;
