//! Kernel timing with exact operation counts.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use posit_core::linalg::{GemmBackend, Matrix, PMatrix, Trans};
use posit_core::{OpCounters, Posit32};

use crate::error::{LabError, Result};
use crate::experiment::{gen_normal, make_spd, to_posit};
use crate::rng::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kernel {
    GemmSquare,
    GemmTrailing,
    Potrf,
    Getrf,
}

impl Kernel {
    pub const ALL: [Kernel; 4] = [Kernel::GemmSquare, Kernel::GemmTrailing, Kernel::Potrf, Kernel::Getrf];

    pub fn name(self) -> &'static str {
        match self {
            Kernel::GemmSquare => "gemm_square",
            Kernel::GemmTrailing => "gemm_trailing",
            Kernel::Potrf => "potrf",
            Kernel::Getrf => "getrf",
        }
    }
}

impl fmt::Display for Kernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kernel {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Kernel> {
        match s.trim().to_ascii_lowercase().as_str() {
            "square" | "gemm_square" => Ok(Kernel::GemmSquare),
            "trailing" | "gemm_trailing" => Ok(Kernel::GemmTrailing),
            "potrf" | "cholesky" => Ok(Kernel::Potrf),
            "getrf" | "lu" => Ok(Kernel::Getrf),
            other => Err(LabError::Config(format!(
                "unknown bench mode '{other}' (expected square, trailing, potrf or getrf)"
            ))),
        }
    }
}

/// Nominal operation count: `2N^3`, `2N^2 K`, `N^3/3` or `2N^3/3`.
pub fn ops(kernel: Kernel, n: usize, k: usize) -> f64 {
    let n = n as f64;
    match kernel {
        Kernel::GemmSquare => 2.0 * n * n * n,
        Kernel::GemmTrailing => 2.0 * n * n * k as f64,
        Kernel::Potrf => n * n * n / 3.0,
        Kernel::Getrf => 2.0 * n * n * n / 3.0,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub kernel: Kernel,
    pub n: usize,
    pub k: usize,
    pub sigma: f64,
    pub ops: f64,
    pub seconds: f64,
    pub gflops: f64,
}

impl BenchRecord {
    fn timed(kernel: Kernel, n: usize, k: usize, sigma: f64, seconds: f64) -> BenchRecord {
        let ops = ops(kernel, n, k);
        BenchRecord {
            kernel,
            n,
            k,
            sigma,
            ops,
            seconds,
            gflops: if seconds > 0.0 { ops / seconds * 1e-9 } else { 0.0 },
        }
    }
}

/// Operands for a GEMM kernel: square uses `N x N` times `N x N`; trailing
/// uses `N x K` times `K x N`.
pub fn gemm_operands(kernel: Kernel, n: usize, k: usize, sigma: f64, rng: &mut Rng) -> (PMatrix, PMatrix, PMatrix) {
    let k = if kernel == Kernel::GemmSquare { n } else { k };
    let a = to_posit(&gen_normal(rng, n, k, sigma));
    let b = to_posit(&gen_normal(rng, k, n, sigma));
    let c = to_posit(&gen_normal(rng, n, n, sigma));
    (a, b, c)
}

fn gemm_coefficients(kernel: Kernel) -> (Posit32, Posit32) {
    match kernel {
        Kernel::GemmTrailing => (Posit32::MINUS_ONE, Posit32::ONE),
        _ => (Posit32::ONE, Posit32::ZERO),
    }
}

/// Times one posit GEMM: `C <- A B` (square) or `C <- C - A B` (trailing).
pub fn gemm_bench<G: GemmBackend<Posit32>>(
    kernel: Kernel,
    n: usize,
    k: usize,
    sigma: f64,
    rng: &mut Rng,
    backend: &G,
) -> Result<BenchRecord> {
    if !matches!(kernel, Kernel::GemmSquare | Kernel::GemmTrailing) {
        return Err(LabError::Config(format!("{kernel} is not a GEMM kernel")));
    }
    let (a, b, mut c) = gemm_operands(kernel, n, k, sigma, rng);
    let (alpha, beta) = gemm_coefficients(kernel);
    let start = Instant::now();
    backend.gemm(Trans::N, Trans::N, alpha, a.as_ref(), b.as_ref(), beta, c.as_mut())?;
    let seconds = start.elapsed().as_secs_f64();
    std::hint::black_box(&c);
    let k = if kernel == Kernel::GemmSquare { n } else { k };
    Ok(BenchRecord::timed(kernel, n, k, sigma, seconds))
}

/// Times a posit factorization of an `N x N` input (SPD for potrf).
pub fn factor_bench<G: GemmBackend<Posit32>>(
    kernel: Kernel,
    n: usize,
    sigma: f64,
    rng: &mut Rng,
    block: usize,
    backend: &G,
) -> Result<BenchRecord> {
    let x = gen_normal(rng, n, n, sigma);
    let mut a = match kernel {
        Kernel::Potrf => to_posit(&make_spd(&x)),
        Kernel::Getrf => to_posit(&x),
        other => return Err(LabError::Config(format!("{other} is not a factorization kernel"))),
    };
    let start = Instant::now();
    match kernel {
        Kernel::Potrf => {
            posit_core::linalg::potrf(a.as_mut(), block, backend)?;
        }
        _ => {
            posit_core::linalg::getrf(a.as_mut(), block, backend)?;
        }
    }
    let seconds = start.elapsed().as_secs_f64();
    std::hint::black_box(&a);
    Ok(BenchRecord::timed(kernel, n, n, sigma, seconds))
}

/// Result of [`counted_gemm`].
#[derive(Debug, Clone, PartialEq)]
pub struct CountedGemm {
    pub c: PMatrix,
    /// Multiplies and adds of the inner products (the epilogue
    /// `alpha*t + beta*c` is not included).
    pub flops: u64,
    pub counters: OpCounters,
}

/// `C <- alpha A B + beta C` with the same per-element operation order as
/// the blocked kernel, counting every inner-product operation.
pub fn counted_gemm(alpha: Posit32, a: &PMatrix, b: &PMatrix, beta: Posit32, c: &PMatrix) -> Result<CountedGemm> {
    let (m, k, n) = (a.rows(), a.cols(), b.cols());
    if b.rows() != k || c.rows() != m || c.cols() != n {
        return Err(LabError::Config("counted_gemm: shape mismatch".into()));
    }
    let mut out = Matrix::from_elem(m, n, Posit32::ZERO);
    let mut counters = OpCounters::new();
    let mut flops = 0u64;
    for j in 0..n {
        for i in 0..m {
            let mut t = Posit32::ZERO;
            for p in 0..k {
                let prod = a.get(i, p).mul_counted(b.get(p, j), &mut counters);
                t = t.add_counted(prod, &mut counters);
                flops += 2;
            }
            out.set(i, j, alpha.mul(t).add(beta.mul(c.get(i, j))));
        }
    }
    Ok(CountedGemm {
        c: out,
        flops,
        counters,
    })
}

/// Mean counters per inner-product operation of a GEMM kernel on
/// N(0, sigma^2) data.
pub fn gemm_step_profile(kernel: Kernel, n: usize, k: usize, sigma: f64, seed: u64) -> Result<(u64, OpCounters)> {
    let mut rng = Rng::new(seed);
    let (a, b, c) = gemm_operands(kernel, n, k, sigma, &mut rng);
    let (alpha, beta) = gemm_coefficients(kernel);
    let r = counted_gemm(alpha, &a, &b, beta, &c)?;
    Ok((r.flops, r.counters))
}
