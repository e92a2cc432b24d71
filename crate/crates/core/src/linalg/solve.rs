use super::matrix::{MatMut, MatRef};
use super::scalar::Scalar;
use super::trsm::trsm;
use super::{Diag, LinalgError, PivotVector, Side, Trans, Uplo};

/// Solves `A X = B` given the Cholesky factor from [`potrf`](super::potrf).
pub fn potrs<T: Scalar>(l: MatRef<'_, T>, mut b: MatMut<'_, T>) -> Result<(), LinalgError> {
    trsm(Side::Left, Uplo::Lower, Trans::N, Diag::NonUnit, T::ONE, l, b.rb_mut())?;
    trsm(Side::Left, Uplo::Lower, Trans::T, Diag::NonUnit, T::ONE, l, b)
}

/// Solves `A X = B` given the packed LU factors and pivots from
/// [`getrf`](super::getrf).
pub fn getrs<T: Scalar>(lu: MatRef<'_, T>, ipiv: &PivotVector, mut b: MatMut<'_, T>) -> Result<(), LinalgError> {
    let n = lu.rows();
    if lu.cols() != n {
        return Err(LinalgError::DimensionMismatch("getrs: LU must be square"));
    }
    if b.rows() != n || ipiv.ipiv.len() != n {
        return Err(LinalgError::DimensionMismatch(
            "getrs: right-hand side or pivots do not conform",
        ));
    }
    for (i, &r) in ipiv.ipiv.iter().enumerate() {
        if r == 0 || r > n {
            return Err(LinalgError::InvalidPivot { index: i, value: r });
        }
        b.swap_rows(i, r - 1);
    }
    trsm(Side::Left, Uplo::Lower, Trans::N, Diag::Unit, T::ONE, lu, b.rb_mut())?;
    trsm(Side::Left, Uplo::Upper, Trans::N, Diag::NonUnit, T::ONE, lu, b)
}
