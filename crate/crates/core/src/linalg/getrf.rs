use alloc::vec;
use alloc::vec::Vec;

use super::gemm::GemmBackend;
use super::matrix::{MatMut, MatRef};
use super::scalar::Scalar;
use super::trsm::trsm;
use super::{Diag, FactorizationStatus, LinalgError, PivotVector, Side, Trans, Uplo};

/// Blocked LU factorization with partial pivoting, `P * A = L * U`.
///
/// Crout ordering, so every entry is formed by a single subtraction of an
/// ascending-order dot product and results do not depend on `block`:
///
/// 1. rows above the panel are finished with a unit-lower TRSM,
/// 2. one GEMM accumulates the contributions of all earlier columns to the
///    rows below,
/// 3. the panel kernel continues those sums, picks the pivot (largest
///    magnitude, lowest row on ties), swaps whole rows and divides by it.
///
/// An exactly zero pivot sets `info` (first occurrence) and the column is
/// left unscaled; the factorization carries on.
#[allow(clippy::needless_range_loop)]
pub fn getrf<T: Scalar, G: GemmBackend<T>>(
    mut a: MatMut<'_, T>,
    block: usize,
    backend: &G,
) -> Result<(PivotVector, FactorizationStatus), LinalgError> {
    let (m, n) = (a.rows(), a.cols());
    if let Some((row, col)) = a.rb().any(|x| x.is_nar()) {
        return Err(LinalgError::NaRInput { row, col });
    }
    let mn = m.min(n);
    let nb = block.max(1);
    let mut ipiv: Vec<usize> = vec![0; mn];
    let mut info = 0;
    let mut work = vec![T::ZERO; m * nb.min(n.max(1))];

    for j in (0..n).step_by(nb) {
        let jb = nb.min(n - j);
        let jt = j.min(m);
        let wrows = m - jt;

        {
            let (left, mut right) = a.rb_mut().split_cols(j);
            let left = left.rb();
            let mut panel = right.sub_mut(0, 0, m, jb);
            if jt > 0 {
                trsm(
                    Side::Left,
                    Uplo::Lower,
                    Trans::N,
                    Diag::Unit,
                    T::ONE,
                    left.sub(0, 0, jt, jt),
                    panel.sub_mut(0, 0, jt, jb),
                )?;
            }
            let w = &mut work[..wrows * jb];
            w.fill(T::ZERO);
            if jt > 0 && wrows > 0 {
                backend.gemm(
                    Trans::N,
                    Trans::N,
                    T::ONE,
                    left.sub(jt, 0, wrows, jt),
                    panel.rb().sub(0, 0, jt, jb),
                    T::ZERO,
                    MatMut::new(w, wrows, jb, wrows)?,
                )?;
            }
        }

        for c in j..j + jb {
            let cc = c - j;
            let w = MatRef::new(&work[..wrows * jb], wrows, jb, wrows.max(1))?;
            // U entries inside the panel rows.
            for r in jt..c.min(m) {
                let mut t = w.get(r - jt, cc);
                for k in jt..r {
                    t = t.add(a.get(r, k).mul(a.get(k, c)));
                }
                a.set(r, c, a.get(r, c).sub(t));
            }
            if c >= m {
                continue;
            }
            for i in c..m {
                let mut t = w.get(i - jt, cc);
                for k in jt..c {
                    t = t.add(a.get(i, k).mul(a.get(k, c)));
                }
                a.set(i, c, a.get(i, c).sub(t));
            }
            let mut piv = c;
            for i in c + 1..m {
                if a.get(i, c).magnitude_gt(a.get(piv, c)) {
                    piv = i;
                }
            }
            ipiv[c] = piv + 1;
            if piv != c {
                a.swap_rows(piv, c);
                let mut wm = MatMut::new(&mut work[..wrows * jb], wrows, jb, wrows.max(1))?;
                wm.swap_rows(piv - jt, c - jt);
            }
            let pivot = a.get(c, c);
            if pivot.is_zero() {
                if info == 0 {
                    info = c + 1;
                }
            } else {
                for i in c + 1..m {
                    a.set(i, c, a.get(i, c).div(pivot));
                }
            }
        }
    }
    Ok((PivotVector { ipiv }, FactorizationStatus { info }))
}
