//! Posit(32,2) arithmetic and a BLAS/LAPACK subset (GEMM, TRSM, Cholesky,
//! LU) written against it, with a mirrored binary32 path.
//!
//! Scalar operations are bit-exact and correctly rounded: operands are
//! decoded to a sign-magnitude working format, combined exactly (or with a
//! sticky bit), and encoded with round-to-nearest, ties to the even
//! pattern. Results saturate at ±maxpos / ±minpos and never round to zero.
//!
//! ```
//! use posit_core::Posit32;
//!
//! let one = Posit32::ONE;
//! assert_eq!((one + one).to_bits(), 0x4800_0000);
//! assert_eq!(one.eps_at(), 2f64.powi(-27));
//! ```
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod arith;
mod config;
mod counters;
mod decode;
mod posit;
mod unpacked;

#[doc(hidden)]
pub mod instrument;
pub mod linalg;

pub use config::PositConfig;
pub use counters::OpCounters;
pub use decode::{Decoded, DecodedPosit};
pub use posit::Posit32;
pub use unpacked::{RealClass, UnpackedReal};
