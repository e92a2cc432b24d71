//! Backward-error comparison of Posit(32,2) and binary32 linear solves.

use std::fmt;
use std::str::FromStr;

use posit_core::linalg::{getrf, getrs, potrf, potrs, DMatrix, GemmBackend, Matrix, Scalar, Serial};
use posit_core::Posit32;
use rayon::prelude::*;

use crate::error::{LabError, Result};
use crate::rng::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algo {
    Cholesky,
    Lu,
}

impl Algo {
    pub const ALL: [Algo; 2] = [Algo::Cholesky, Algo::Lu];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Cholesky => "cholesky",
            Algo::Lu => "lu",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Algo> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cholesky" | "potrf" | "chol" => Ok(Algo::Cholesky),
            "lu" | "getrf" => Ok(Algo::Lu),
            other => Err(LabError::Config(format!(
                "unknown algorithm '{other}' (expected cholesky or lu)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub algo: Algo,
    pub n: usize,
    pub sigma: f64,
    pub seeds: Vec<u64>,
    pub block: usize,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(LabError::Config(format!("N must be at least 2, got {}", self.n)));
        }
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(LabError::Config(format!(
                "sigma must be positive and finite, got {}",
                self.sigma
            )));
        }
        if self.seeds.is_empty() {
            return Err(LabError::Config("at least one seed is required".into()));
        }
        if self.block == 0 {
            return Err(LabError::Config("block size must be positive".into()));
        }
        Ok(())
    }
}

/// One (algorithm, N, sigma, seed) outcome.
///
/// Errors are NaN when the factorization reported a nonzero `info` in that
/// format; `digits` is NaN if either error is NaN, `+inf`/`-inf` when only
/// the posit/binary32 error is exactly zero, and 0 when both are.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRecord {
    pub algo: Algo,
    pub n: usize,
    pub sigma: f64,
    pub seed: u64,
    pub e_posit: f64,
    pub e_binary32: f64,
    pub digits: f64,
    pub info_posit: usize,
    pub info_binary32: usize,
}

/// `log10(e_binary32 / e_posit)` with the sentinel rules of [`ErrorRecord`].
pub fn digit_advantage(e_binary32: f64, e_posit: f64) -> f64 {
    if e_binary32.is_nan() || e_posit.is_nan() {
        f64::NAN
    } else if e_binary32 == 0.0 && e_posit == 0.0 {
        0.0
    } else if e_posit == 0.0 {
        f64::INFINITY
    } else if e_binary32 == 0.0 {
        f64::NEG_INFINITY
    } else {
        (e_binary32 / e_posit).log10()
    }
}

/// `rows x cols` matrix of N(0, sigma^2) entries drawn in column-major order.
pub fn gen_normal(rng: &mut Rng, rows: usize, cols: usize, sigma: f64) -> DMatrix {
    let mut data = Vec::with_capacity(rows * cols);
    for _ in 0..rows * cols {
        data.push(sigma * rng.normal());
    }
    Matrix::from_col_major(rows, cols, data).expect("packed storage")
}

pub fn to_posit(a: &DMatrix) -> Matrix<Posit32> {
    a.map(Posit32::from_f64)
}

pub fn to_binary32(a: &DMatrix) -> Matrix<f32> {
    a.map(|v| v as f32)
}

/// `X^T X` in binary64; the lower triangle is computed and mirrored.
pub fn make_spd(x: &DMatrix) -> DMatrix {
    let (m, n) = (x.rows(), x.cols());
    let mut a = DMatrix::zeros(n, n);
    for j in 0..n {
        for i in j..n {
            let mut s = 0.0;
            for k in 0..m {
                s += x.get(k, i) * x.get(k, j);
            }
            a.set(i, j, s);
            a.set(j, i, s);
        }
    }
    a
}

/// `A x` in binary64, accumulating in ascending column order.
pub fn matvec(a: &DMatrix, x: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; a.rows()];
    for (j, &xj) in x.iter().enumerate().take(a.cols()) {
        for (i, yi) in y.iter_mut().enumerate() {
            *yi += a.get(i, j) * xj;
        }
    }
    y
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `||b - A x||_2 / ||b||_2` in binary64.
pub fn backward_error(a: &DMatrix, x: &[f64], b: &[f64]) -> Result<f64> {
    if a.cols() != x.len() || a.rows() != b.len() {
        return Err(LabError::Config(format!(
            "backward_error: A is {}x{}, x has {}, b has {}",
            a.rows(),
            a.cols(),
            x.len(),
            b.len()
        )));
    }
    let nb = norm2(b);
    if nb == 0.0 {
        return Err(LabError::ZeroNormRhs);
    }
    let ax = matvec(a, x);
    let r: Vec<f64> = b.iter().zip(&ax).map(|(bi, axi)| bi - axi).collect();
    Ok(norm2(&r) / nb)
}

/// Factors `a` and solves for `b` in the element format of `T`. Returns the
/// solution (None if the factorization reported a nonzero info) and info.
pub fn factor_and_solve<T: Scalar, G: GemmBackend<T>>(
    algo: Algo,
    a: &Matrix<T>,
    b: &[T],
    block: usize,
    backend: &G,
) -> Result<(Option<Vec<T>>, usize)> {
    let n = a.rows();
    let mut f = a.clone();
    let mut rhs = Matrix::from_col_major(n, 1, b.to_vec())?;
    match algo {
        Algo::Cholesky => {
            let st = potrf(f.as_mut(), block, backend)?;
            if st.info != 0 {
                return Ok((None, st.info));
            }
            potrs(f.as_ref(), rhs.as_mut())?;
        }
        Algo::Lu => {
            let (piv, st) = getrf(f.as_mut(), block, backend)?;
            if st.info != 0 {
                return Ok((None, st.info));
            }
            getrs(f.as_ref(), &piv, rhs.as_mut())?;
        }
    }
    Ok((Some(rhs.into_vec()), 0))
}

/// Runs both formats on the same binary64 system.
pub fn solve_and_compare(algo: Algo, a: &DMatrix, b: &[f64], block: usize) -> Result<(f64, f64, usize, usize)> {
    let ap = to_posit(a);
    let bp: Vec<Posit32> = b.iter().map(|&v| Posit32::from_f64(v)).collect();
    let (xp, info_p) = factor_and_solve(algo, &ap, &bp, block, &Serial { block })?;
    let e_posit = match xp {
        Some(x) => {
            let x64: Vec<f64> = x.iter().map(|p| p.to_f64()).collect();
            backward_error(a, &x64, b)?
        }
        None => f64::NAN,
    };

    let a32 = to_binary32(a);
    let b32: Vec<f32> = b.iter().map(|&v| v as f32).collect();
    let (xs, info_s) = factor_and_solve(algo, &a32, &b32, block, &Serial { block })?;
    let e_binary32 = match xs {
        Some(x) => {
            let x64: Vec<f64> = x.iter().map(|&v| v as f64).collect();
            backward_error(a, &x64, b)?
        }
        None => f64::NAN,
    };
    Ok((e_posit, e_binary32, info_p, info_s))
}

/// Builds the system for one cell: SPD `X^T X` for Cholesky, the raw normal
/// matrix for LU, with `b = A x_sol` and `x_sol = 1/sqrt(N)`.
pub fn build_system(algo: Algo, n: usize, sigma: f64, seed: u64) -> (DMatrix, Vec<f64>) {
    let mut rng = Rng::new(seed);
    let x = gen_normal(&mut rng, n, n, sigma);
    let a = match algo {
        Algo::Cholesky => make_spd(&x),
        Algo::Lu => x,
    };
    let x_sol = vec![1.0 / (n as f64).sqrt(); n];
    let b = matvec(&a, &x_sol);
    (a, b)
}

pub fn run_cell(algo: Algo, n: usize, sigma: f64, seed: u64, block: usize) -> Result<ErrorRecord> {
    let (a, b) = build_system(algo, n, sigma, seed);
    let (e_posit, e_binary32, info_posit, info_binary32) = solve_and_compare(algo, &a, &b, block)?;
    Ok(ErrorRecord {
        algo,
        n,
        sigma,
        seed,
        e_posit,
        e_binary32,
        digits: digit_advantage(e_binary32, e_posit),
        info_posit,
        info_binary32,
    })
}

/// One record per seed, in seed-list order. Seeds run concurrently on the
/// current rayon pool.
pub fn run_error_experiment(cfg: &ExperimentConfig) -> Result<Vec<ErrorRecord>> {
    cfg.validate()?;
    cfg.seeds
        .par_iter()
        .map(|&seed| run_cell(cfg.algo, cfg.n, cfg.sigma, seed, cfg.block))
        .collect()
}

/// Median of the finite-or-infinite values, ignoring NaN.
pub fn median(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut v: Vec<f64> = values.into_iter().filter(|x| !x.is_nan()).collect();
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spd_examples() {
        let i3 = DMatrix::identity(3);
        assert_eq!(make_spd(&i3), i3);
        let mut d = DMatrix::zeros(2, 2);
        d.set(0, 0, 2.0);
        d.set(1, 1, 3.0);
        let a = make_spd(&d);
        assert_eq!(a.as_slice(), &[4.0, 0.0, 0.0, 9.0]);
    }

    #[test]
    fn spd_random_is_symmetric_and_factors() {
        let mut rng = Rng::new(3);
        let x = gen_normal(&mut rng, 40, 40, 1.0);
        let a = make_spd(&x);
        for i in 0..40 {
            assert!(a.get(i, i) >= 0.0);
            for j in 0..40 {
                assert_eq!(a.get(i, j).to_bits(), a.get(j, i).to_bits());
            }
        }
        let mut l = a.clone();
        assert_eq!(posit_core::linalg::dpotrf(l.as_mut(), 8).unwrap().info, 0);
    }

    #[test]
    fn backward_error_examples() {
        let n = 64;
        let (a, b) = build_system(Algo::Lu, n, 1.0, 5);
        let mut lu = a.clone();
        let (piv, st) = posit_core::linalg::dgetrf(lu.as_mut(), 16).unwrap();
        assert!(st.is_ok());
        let mut x = Matrix::from_col_major(n, 1, b.clone()).unwrap();
        posit_core::linalg::dgetrs(lu.as_ref(), &piv, x.as_mut()).unwrap();
        assert!(backward_error(&a, x.as_slice(), &b).unwrap() < 1e-12);
        assert_eq!(backward_error(&a, &vec![0.0; n], &b).unwrap(), 1.0);
        assert!(matches!(
            backward_error(&a, &vec![0.0; n], &vec![0.0; n]),
            Err(LabError::ZeroNormRhs)
        ));
    }

    #[test]
    fn identity_system_is_exact_in_both_formats() {
        let n = 16;
        let a = DMatrix::identity(n);
        let x_sol = vec![0.25; n];
        for algo in Algo::ALL {
            let (ep, es, ip, is) = solve_and_compare(algo, &a, &x_sol, 4).unwrap();
            assert_eq!((ep, es, ip, is), (0.0, 0.0, 0, 0));
            assert_eq!(digit_advantage(es, ep), 0.0);
        }
    }

    #[test]
    fn digit_sentinels() {
        assert!((digit_advantage(1e-6, 1e-7) - 1.0).abs() < 1e-12);
        assert_eq!(digit_advantage(1e-6, 0.0), f64::INFINITY);
        assert_eq!(digit_advantage(0.0, 1e-6), f64::NEG_INFINITY);
        assert!(digit_advantage(f64::NAN, 1.0).is_nan());
    }

    #[test]
    fn failed_factorization_is_recorded() {
        let mut a = DMatrix::identity(4);
        a.set(2, 2, -1.0);
        let b = vec![1.0; 4];
        let (ep, es, ip, is) = solve_and_compare(Algo::Cholesky, &a, &b, 2).unwrap();
        assert!(ep.is_nan() && es.is_nan());
        assert_eq!((ip, is), (3, 3));
    }

    #[test]
    fn small_cells_are_reproducible() {
        let cfg = ExperimentConfig {
            algo: Algo::Cholesky,
            n: 24,
            sigma: 1.0,
            seeds: vec![1, 2],
            block: 8,
        };
        let r1 = run_error_experiment(&cfg).unwrap();
        let r2 = run_error_experiment(&cfg).unwrap();
        assert_eq!(r1, r2);
        assert!(r1.iter().all(|r| r.e_posit > 0.0 && r.e_posit < 1e-5));
    }

    #[test]
    fn config_validation() {
        let mut cfg = ExperimentConfig {
            algo: Algo::Lu,
            n: 1,
            sigma: 1.0,
            seeds: vec![1],
            block: 8,
        };
        assert!(cfg.validate().is_err());
        cfg.n = 4;
        cfg.sigma = 0.0;
        assert!(cfg.validate().is_err());
        cfg.sigma = 1.0;
        assert!(cfg.validate().is_ok());
    }
}
