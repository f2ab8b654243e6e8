//! Two-sided two-dimensional quaternion linear canonical transform (2D QLCT)
//! and the quaternion probability layer built on it.
//!
//! Functions on the plane are represented as [`SampledField`]s: a quaternion
//! value per node of a uniform rectangular grid. Every integral in the crate
//! is a tensor-product quadrature over such a grid, and every sandwich
//! product keeps the `i`-kernel on the left and the `j`-kernel on the right.
//!
//! The crate is `no_std` (it needs `alloc`). The `parallel` feature spreads
//! the transform sums over threads with rayon; results are bit-identical
//! with and without it because each output node is reduced sequentially.

#![no_std]

extern crate alloc;
#[cfg(any(feature = "std", test))]
extern crate std;

mod error;
mod exec;

pub mod field;
pub mod fixtures;
pub mod lct;
pub mod prob;
pub mod quaternion;
pub mod transform;

pub use error::{Error, Result};
pub use field::{GridSpec, Rule, SampledField};
pub use lct::{fourier_params, LctParams, TransformParams};
pub use quaternion::Quaternion;
pub use transform::Spectrum;
