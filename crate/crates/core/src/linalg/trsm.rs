use alloc::vec::Vec;

use super::matrix::{MatMut, MatRef};
use super::scalar::Scalar;
use super::{Diag, LinalgError, Side, Trans, Uplo};

/// Triangular solve with multiple right-hand sides.
///
/// Left: `B <- alpha * op(A)^-1 * B`. Right: `B <- alpha * B * op(A)^-1`.
/// Every solution entry is `(alpha*b - t) / a_rr`, where `t` is the dot
/// product with already-solved entries accumulated in ascending index order
/// (the division is skipped for a unit diagonal).
#[allow(clippy::too_many_arguments)]
#[allow(clippy::needless_range_loop)]
pub fn trsm<T: Scalar>(
    side: Side,
    uplo: Uplo,
    trans: Trans,
    diag: Diag,
    alpha: T,
    a: MatRef<'_, T>,
    mut b: MatMut<'_, T>,
) -> Result<(), LinalgError> {
    let n = a.rows();
    if a.cols() != n {
        return Err(LinalgError::DimensionMismatch("trsm: A must be square"));
    }
    let expected = match side {
        Side::Left => b.rows(),
        Side::Right => b.cols(),
    };
    if expected != n {
        return Err(LinalgError::DimensionMismatch("trsm: A and B do not conform"));
    }
    if diag == Diag::NonUnit {
        if let Some(i) = (0..n).find(|&i| a.get(i, i).is_zero()) {
            return Err(LinalgError::ZeroDiagonal { column: i + 1 });
        }
    }

    // Element (r, k) of the matrix actually being inverted, and whether it
    // is lower triangular. The right-side case solves op(A)^T x = b per row.
    let transposed = match side {
        Side::Left => trans == Trans::T,
        Side::Right => trans == Trans::N,
    };
    let lower = (uplo == Uplo::Lower) != transposed;
    let elem = |r: usize, k: usize| if transposed { a.get(k, r) } else { a.get(r, k) };

    let mut x: Vec<T> = Vec::with_capacity(n);
    let count = match side {
        Side::Left => b.cols(),
        Side::Right => b.rows(),
    };
    for v in 0..count {
        x.clear();
        match side {
            Side::Left => x.extend((0..n).map(|r| b.get(r, v))),
            Side::Right => x.extend((0..n).map(|r| b.get(v, r))),
        }
        if lower {
            for r in 0..n {
                let mut t = T::ZERO;
                for k in 0..r {
                    t = t.add(elem(r, k).mul(x[k]));
                }
                x[r] = finish(alpha, x[r], t, diag, elem(r, r));
            }
        } else {
            for r in (0..n).rev() {
                let mut t = T::ZERO;
                for k in r + 1..n {
                    t = t.add(elem(r, k).mul(x[k]));
                }
                x[r] = finish(alpha, x[r], t, diag, elem(r, r));
            }
        }
        for (r, &xr) in x.iter().enumerate() {
            match side {
                Side::Left => b.set(r, v, xr),
                Side::Right => b.set(v, r, xr),
            }
        }
    }
    Ok(())
}

#[inline(always)]
fn finish<T: Scalar>(alpha: T, b: T, t: T, diag: Diag, d: T) -> T {
    let v = alpha.mul(b).sub(t);
    match diag {
        Diag::Unit => v,
        Diag::NonUnit => v.div(d),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Matrix, PMatrix};
    use crate::Posit32;

    fn p(x: f64) -> Posit32 {
        Posit32::from_f64(x)
    }

    #[test]
    fn identity_scales_by_alpha() {
        let a = PMatrix::identity(3);
        let mut b = Matrix::from_fn(3, 2, |i, j| p((i + 3 * j) as f64));
        let expect = b.map(|x| x * p(2.0));
        trsm(
            Side::Left,
            Uplo::Lower,
            Trans::N,
            Diag::NonUnit,
            p(2.0),
            a.as_ref(),
            b.as_mut(),
        )
        .unwrap();
        assert_eq!(b, expect);
    }

    #[test]
    fn diagonal_solve() {
        let a = Matrix::from_fn(2, 2, |i, j| if i == j { p([2.0, 4.0][i]) } else { Posit32::ZERO });
        let mut b = Matrix::from_fn(2, 1, |i, _| p([2.0, 4.0][i]));
        trsm(
            Side::Left,
            Uplo::Lower,
            Trans::N,
            Diag::NonUnit,
            Posit32::ONE,
            a.as_ref(),
            b.as_mut(),
        )
        .unwrap();
        assert_eq!(b, PMatrix::from_elem(2, 1, Posit32::ONE));
    }

    #[test]
    fn zero_diagonal_reports_column() {
        let mut a = PMatrix::identity(3);
        a.set(1, 1, Posit32::ZERO);
        let mut b = PMatrix::zeros(3, 1);
        let err = trsm(
            Side::Left,
            Uplo::Upper,
            Trans::N,
            Diag::NonUnit,
            Posit32::ONE,
            a.as_ref(),
            b.as_mut(),
        );
        assert_eq!(err, Err(LinalgError::ZeroDiagonal { column: 2 }));
        // A unit diagonal is never read.
        trsm(
            Side::Left,
            Uplo::Upper,
            Trans::N,
            Diag::Unit,
            Posit32::ONE,
            a.as_ref(),
            b.as_mut(),
        )
        .unwrap();
    }

    /// Every side/uplo/trans combination solves the system it claims to,
    /// checked in binary64 on small integer data.
    #[test]
    fn all_variants_f64() {
        let n = 4;
        let lower = Matrix::from_fn(n, n, |i, j| if i >= j { (1 + i + 2 * j) as f64 } else { 0.0 });
        let upper = lower.transpose();
        let x = Matrix::from_fn(n, 2, |i, j| (i as f64) - (j as f64) * 0.5 + 1.0);
        for side in [Side::Left, Side::Right] {
            for (uplo, a) in [(Uplo::Lower, &lower), (Uplo::Upper, &upper)] {
                for trans in [Trans::N, Trans::T] {
                    let opa = if trans == Trans::N { a.clone() } else { a.transpose() };
                    let xs = if side == Side::Left { x.clone() } else { x.transpose() };
                    let mut b = match side {
                        Side::Left => mul(&opa, &xs),
                        Side::Right => mul(&xs, &opa),
                    };
                    trsm(side, uplo, trans, Diag::NonUnit, 1.0, a.as_ref(), b.as_mut()).unwrap();
                    for j in 0..b.cols() {
                        for i in 0..b.rows() {
                            assert!(
                                (b.get(i, j) - xs.get(i, j)).abs() < 1e-12,
                                "{side:?} {uplo:?} {trans:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    fn mul(a: &Matrix<f64>, b: &Matrix<f64>) -> Matrix<f64> {
        Matrix::from_fn(a.rows(), b.cols(), |i, j| {
            (0..a.cols()).map(|k| a.get(i, k) * b.get(k, j)).sum()
        })
    }
}
