use alloc::vec;

use super::gemm::GemmBackend;
use super::matrix::{MatMut, MatRef};
use super::scalar::Scalar;
use super::{FactorizationStatus, LinalgError, Trans};

/// Blocked Cholesky factorization `A = L * L^T` of the lower triangle.
///
/// Crout ordering: for each panel of `block` columns, one GEMM forms the
/// dot-product contributions of all previous columns, then the panel kernel
/// continues those sums in ascending order and subtracts once. Each entry of
/// L is therefore `(a - sum_k l_ik l_ck) / l_cc` with a fixed summation
/// order, and the result is bit-identical for every block size.
///
/// The strict upper triangle is not referenced. Stops at the first
/// non-positive (or NaR) pivot and reports it through `info`.
pub fn potrf<T: Scalar, G: GemmBackend<T>>(
    mut a: MatMut<'_, T>,
    block: usize,
    backend: &G,
) -> Result<FactorizationStatus, LinalgError> {
    let n = a.rows();
    if a.cols() != n {
        return Err(LinalgError::DimensionMismatch("potrf: A must be square"));
    }
    for j in 0..n {
        for i in j..n {
            if a.get(i, j).is_nar() {
                return Err(LinalgError::NaRInput { row: i, col: j });
            }
        }
    }
    let nb = block.max(1);
    let mut work = vec![T::ZERO; n * nb.min(n.max(1))];

    for j in (0..n).step_by(nb) {
        let jb = nb.min(n - j);
        let rows = n - j;
        let w = &mut work[..rows * jb];
        w.fill(T::ZERO);
        if j > 0 {
            let l = a.rb();
            let wm = MatMut::new(w, rows, jb, rows)?;
            backend.gemm(
                Trans::N,
                Trans::T,
                T::ONE,
                l.sub(j, 0, rows, j),
                l.sub(j, 0, jb, j),
                T::ZERO,
                wm,
            )?;
        }
        let wr = MatRef::new(w, rows, jb, rows)?;
        for c in j..j + jb {
            let cc = c - j;
            let mut t = wr.get(cc, cc);
            for k in j..c {
                let l = a.get(c, k);
                t = t.add(l.mul(l));
            }
            let d = a.get(c, c).sub(t);
            if !d.is_positive() {
                a.set(c, c, d);
                return Ok(FactorizationStatus { info: c + 1 });
            }
            let lcc = d.sqrt();
            a.set(c, c, lcc);
            for i in c + 1..n {
                let mut t = wr.get(i - j, cc);
                for k in j..c {
                    t = t.add(a.get(i, k).mul(a.get(c, k)));
                }
                a.set(i, c, a.get(i, c).sub(t).div(lcc));
            }
        }
    }
    Ok(FactorizationStatus { info: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Matrix, PMatrix, Serial};
    use crate::Posit32;

    fn p(x: f64) -> Posit32 {
        Posit32::from_f64(x)
    }

    #[test]
    fn identity() {
        let mut a = PMatrix::identity(5);
        let st = potrf(a.as_mut(), 2, &Serial { block: 2 }).unwrap();
        assert_eq!(st.info, 0);
        assert_eq!(a, PMatrix::identity(5));
    }

    #[test]
    fn diagonal() {
        let mut a = Matrix::from_fn(2, 2, |i, j| if i == j { p([4.0, 9.0][i]) } else { Posit32::ZERO });
        potrf(a.as_mut(), 64, &Serial::default()).unwrap();
        assert_eq!((a.get(0, 0), a.get(1, 1), a.get(1, 0)), (p(2.0), p(3.0), Posit32::ZERO));
    }

    #[test]
    fn not_positive_definite() {
        // [[1, 2], [2, 1]] has a negative second pivot.
        let mut a = Matrix::from_fn(2, 2, |i, j| p(if i == j { 1.0 } else { 2.0 }));
        let st = potrf(a.as_mut(), 1, &Serial { block: 1 }).unwrap();
        assert_eq!(st.info, 2);
        let mut z = PMatrix::zeros(3, 3);
        assert_eq!(potrf(z.as_mut(), 1, &Serial { block: 1 }).unwrap().info, 1);
    }

    #[test]
    fn upper_triangle_untouched() {
        let mut a = Matrix::from_fn(3, 3, |i, j| match (i, j) {
            (i, j) if i == j => 4.0f64,
            (i, j) if i > j => 1.0,
            _ => 99.0,
        });
        potrf(a.as_mut(), 2, &Serial { block: 2 }).unwrap();
        assert_eq!((a.get(0, 1), a.get(0, 2), a.get(1, 2)), (99.0, 99.0, 99.0));
    }

    #[test]
    fn rejects_nar() {
        let mut a = PMatrix::identity(3);
        a.set(2, 1, Posit32::NAR);
        assert_eq!(
            potrf(a.as_mut(), 1, &Serial { block: 1 }),
            Err(LinalgError::NaRInput { row: 2, col: 1 })
        );
    }
}
