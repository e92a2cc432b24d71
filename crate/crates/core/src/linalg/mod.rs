//! Dense linear algebra in the style of LAPACK's R-routines.
//!
//! The generic routines ([`gemm`], [`trsm`], [`potrf`], [`getrf`],
//! [`potrs`], [`getrs`]) are written once over [`Scalar`]; the `r*`, `s*`
//! and `d*` functions are the Posit(32,2), binary32 and binary64
//! instantiations. Because all three share one code path, blocking and
//! accumulation order are identical and only the number format differs.
//!
//! Conventions follow LAPACK: column-major storage with a leading
//! dimension, 1-based pivot indices, and an `info` status where `0` means
//! success.

mod gemm;
mod getrf;
mod matrix;
mod potrf;
mod scalar;
mod solve;
mod trsm;

use alloc::vec::Vec;

pub use gemm::{gemm, gemm_dims, GemmBackend, Serial};
pub use getrf::getrf;
pub use matrix::{DMatrix, MatMut, MatRef, Matrix, PMatrix, SMatrix};
pub use potrf::potrf;
pub use scalar::Scalar;
pub use solve::{getrs, potrs};
pub use trsm::trsm;

use crate::Posit32;

/// Default tile / panel width.
pub const DEFAULT_BLOCK: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Trans {
    N,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Uplo {
    Lower,
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Diag {
    Unit,
    NonUnit,
}

/// LAPACK-style status: `info == 0` is success; `info == k > 0` names the
/// 1-based column whose pivot failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FactorizationStatus {
    pub info: usize,
}

impl FactorizationStatus {
    pub fn is_ok(&self) -> bool {
        self.info == 0
    }
}

/// Row interchanges from [`getrf`]: row `i` was swapped with row
/// `ipiv[i] - 1`, applied in increasing `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PivotVector {
    pub ipiv: Vec<usize>,
}

impl PivotVector {
    /// Applies the interchanges to the rows of `b`.
    pub fn apply<T: Copy>(&self, mut b: MatMut<'_, T>) {
        for (i, &r) in self.ipiv.iter().enumerate() {
            b.swap_rows(i, r - 1);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
    #[error("leading dimension {ld} is smaller than the row count {rows}")]
    LeadingDimension { ld: usize, rows: usize },
    #[error("zero on the diagonal of a triangular factor at column {column}")]
    ZeroDiagonal { column: usize },
    #[error("NaR/NaN input at ({row}, {col})")]
    NaRInput { row: usize, col: usize },
    #[error("pivot {index} has out-of-range value {value}")]
    InvalidPivot { index: usize, value: usize },
}

macro_rules! typed_routines {
    ($t:ty, $gemm:ident, $trsm:ident, $potrf:ident, $getrf:ident, $potrs:ident, $getrs:ident) => {
        /// GEMM with the default block size.
        #[allow(clippy::too_many_arguments)]
        pub fn $gemm(
            transa: Trans,
            transb: Trans,
            alpha: $t,
            a: MatRef<'_, $t>,
            b: MatRef<'_, $t>,
            beta: $t,
            c: MatMut<'_, $t>,
        ) -> Result<(), LinalgError> {
            gemm(transa, transb, alpha, a, b, beta, c, DEFAULT_BLOCK)
        }

        pub fn $trsm(
            side: Side,
            uplo: Uplo,
            trans: Trans,
            diag: Diag,
            alpha: $t,
            a: MatRef<'_, $t>,
            b: MatMut<'_, $t>,
        ) -> Result<(), LinalgError> {
            trsm(side, uplo, trans, diag, alpha, a, b)
        }

        pub fn $potrf(a: MatMut<'_, $t>, block: usize) -> Result<FactorizationStatus, LinalgError> {
            potrf(a, block, &Serial { block })
        }

        pub fn $getrf(a: MatMut<'_, $t>, block: usize) -> Result<(PivotVector, FactorizationStatus), LinalgError> {
            getrf(a, block, &Serial { block })
        }

        pub fn $potrs(l: MatRef<'_, $t>, b: MatMut<'_, $t>) -> Result<(), LinalgError> {
            potrs(l, b)
        }

        pub fn $getrs(lu: MatRef<'_, $t>, ipiv: &PivotVector, b: MatMut<'_, $t>) -> Result<(), LinalgError> {
            getrs(lu, ipiv, b)
        }
    };
}

typed_routines!(Posit32, rgemm, rtrsm, rpotrf, rgetrf, rpotrs, rgetrs);
typed_routines!(f32, sgemm, strsm, spotrf, sgetrf, spotrs, sgetrs);
typed_routines!(f64, dgemm, dtrsm, dpotrf, dgetrf, dpotrs, dgetrs);
