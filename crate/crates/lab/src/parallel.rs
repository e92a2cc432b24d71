//! Multi-threaded GEMM over disjoint column chunks of C.

use posit_core::linalg::{gemm, gemm_dims, GemmBackend, LinalgError, MatMut, MatRef, Scalar, Trans};
use rayon::prelude::*;

/// Splits C into contiguous column chunks and runs the serial blocked kernel
/// on each in a rayon pool. Every element keeps the serial operation order,
/// so results are bit-identical to [`posit_core::linalg::Serial`].
#[derive(Debug, Clone, Copy)]
pub struct Threaded {
    pub block: usize,
    pub threads: usize,
}

impl Threaded {
    pub fn new(block: usize, threads: usize) -> Threaded {
        Threaded {
            block: block.max(1),
            threads: threads.max(1),
        }
    }
}

impl<T: Scalar> GemmBackend<T> for Threaded {
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
        let (_, n, k) = gemm_dims(transa, transb, &a, &b, c.rows(), c.cols())?;
        let per = n.div_ceil(self.threads).div_ceil(self.block).max(1) * self.block;
        if self.threads == 1 || n <= per {
            return gemm(transa, transb, alpha, a, b, beta, c, self.block);
        }
        let mut chunks = Vec::new();
        let mut rest = c;
        let mut c0 = 0;
        while rest.cols() > per {
            let (left, right) = rest.split_cols(per);
            chunks.push((c0, left));
            c0 += per;
            rest = right;
        }
        chunks.push((c0, rest));
        chunks.into_par_iter().try_for_each(|(c0, chunk)| {
            let w = chunk.cols();
            let bs = match transb {
                Trans::N => b.sub(0, c0, k, w),
                Trans::T => b.sub(c0, 0, w, k),
            };
            gemm(transa, transb, alpha, a, bs, beta, chunk, self.block)
        })
    }

    fn block(&self) -> usize {
        self.block
    }
}
