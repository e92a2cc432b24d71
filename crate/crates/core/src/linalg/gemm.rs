use alloc::vec;

use super::matrix::{MatMut, MatRef};
use super::scalar::Scalar;
use super::{LinalgError, Trans};

/// Executes `C <- alpha * op(A) * op(B) + beta * C`.
///
/// Implementations may traverse or partition C however they like, but every
/// element must see the same operation sequence as [`gemm`]: an ascending-k
/// dot product starting from zero, then `alpha*t + beta*c`.
pub trait GemmBackend<T: Scalar> {
    #[allow(clippy::too_many_arguments)]
    fn gemm(
        &self,
        transa: Trans,
        transb: Trans,
        alpha: T,
        a: MatRef<'_, T>,
        b: MatRef<'_, T>,
        beta: T,
        c: MatMut<'_, T>,
    ) -> Result<(), LinalgError>;

    /// Tile edge used for the panel width of blocked factorizations.
    fn block(&self) -> usize;
}

/// Single-threaded cache-blocked execution.
#[derive(Debug, Clone, Copy)]
pub struct Serial {
    pub block: usize,
}

impl Default for Serial {
    fn default() -> Self {
        Serial {
            block: super::DEFAULT_BLOCK,
        }
    }
}

impl<T: Scalar> GemmBackend<T> for Serial {
    fn gemm(
        &self,
        transa: Trans,
        transb: Trans,
        alpha: T,
        a: MatRef<'_, T>,
        b: MatRef<'_, T>,
        beta: T,
        c: MatMut<'_, T>,
    ) -> Result<(), LinalgError> {
        gemm(transa, transb, alpha, a, b, beta, c, self.block)
    }

    fn block(&self) -> usize {
        self.block
    }
}

#[inline(always)]
fn op_get<T: Copy>(m: &MatRef<'_, T>, t: Trans, i: usize, j: usize) -> T {
    match t {
        Trans::N => m.get(i, j),
        Trans::T => m.get(j, i),
    }
}

fn op_shape<T: Copy>(m: &MatRef<'_, T>, t: Trans) -> (usize, usize) {
    match t {
        Trans::N => (m.rows(), m.cols()),
        Trans::T => (m.cols(), m.rows()),
    }
}

/// Shape check shared by every backend: returns `(m, n, k)`.
pub fn gemm_dims<T: Copy>(
    transa: Trans,
    transb: Trans,
    a: &MatRef<'_, T>,
    b: &MatRef<'_, T>,
    c_rows: usize,
    c_cols: usize,
) -> Result<(usize, usize, usize), LinalgError> {
    let (m, ka) = op_shape(a, transa);
    let (kb, n) = op_shape(b, transb);
    if ka != kb {
        return Err(LinalgError::DimensionMismatch("gemm: inner dimensions differ"));
    }
    if m != c_rows || n != c_cols {
        return Err(LinalgError::DimensionMismatch("gemm: C has the wrong shape"));
    }
    Ok((m, n, ka))
}

/// Blocked `C <- alpha * op(A) * op(B) + beta * C`.
///
/// C is walked in `block x block` tiles; for each tile the k range is swept
/// in blocks while per-element accumulators persist, so each element is the
/// same ascending-k sum whatever the block size.
#[allow(clippy::too_many_arguments)]
pub fn gemm<T: Scalar>(
    transa: Trans,
    transb: Trans,
    alpha: T,
    a: MatRef<'_, T>,
    b: MatRef<'_, T>,
    beta: T,
    mut c: MatMut<'_, T>,
    block: usize,
) -> Result<(), LinalgError> {
    let (m, n, k) = gemm_dims(transa, transb, &a, &b, c.rows(), c.cols())?;
    let nb = block.max(1);
    let tile = nb.min(m.max(1)) * nb.min(n.max(1));
    let mut acc = vec![T::ZERO; tile];

    for j0 in (0..n).step_by(nb) {
        let jb = nb.min(n - j0);
        for i0 in (0..m).step_by(nb) {
            let ib = nb.min(m - i0);
            acc[..ib * jb].fill(T::ZERO);
            for k0 in (0..k).step_by(nb) {
                let kb = nb.min(k - k0);
                for jj in 0..jb {
                    let col = &mut acc[jj * ib..(jj + 1) * ib];
                    for kk in k0..k0 + kb {
                        let bv = op_get(&b, transb, kk, j0 + jj);
                        for (ii, t) in col.iter_mut().enumerate() {
                            *t = t.add(op_get(&a, transa, i0 + ii, kk).mul(bv));
                        }
                    }
                }
            }
            for jj in 0..jb {
                for ii in 0..ib {
                    let (i, j) = (i0 + ii, j0 + jj);
                    let v = alpha.mul(acc[ii + jj * ib]).add(beta.mul(c.get(i, j)));
                    c.set(i, j, v);
                }
            }
        }
    }
    Ok(())
}
