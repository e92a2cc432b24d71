mod common;

use common::{frob, matmul, normal_matrix, SplitMix};
use posit_core::linalg::{
    rgetrf, rgetrs, rpotrf, rpotrs, rtrsm, sgetrf, spotrf, DMatrix, Diag, Matrix, PMatrix, Side, Trans, Uplo,
};
use posit_core::Posit32;

fn spd(rng: &mut SplitMix, n: usize) -> DMatrix {
    let x = normal_matrix(rng, n, n, 1.0);
    let a = matmul(&x.transpose(), &x);
    Matrix::from_fn(n, n, |i, j| if i >= j { a.get(i, j) } else { a.get(j, i) })
}

fn lower_of<T: Copy>(m: &Matrix<T>, zero: T) -> Matrix<T> {
    Matrix::from_fn(m.rows(), m.cols(), |i, j| if i >= j { m.get(i, j) } else { zero })
}

#[test]
fn cholesky_block_size_invariance() {
    let mut rng = SplitMix(21);
    let a = spd(&mut rng, 70).map(Posit32::from_f64);
    let mut reference = a.clone();
    assert_eq!(rpotrf(reference.as_mut(), 1).unwrap().info, 0);
    for block in [8, 32, 64, 5, 70, 100] {
        let mut f = a.clone();
        rpotrf(f.as_mut(), block).unwrap();
        assert_eq!(f, reference, "block {block}");
    }
}

#[test]
fn lu_block_size_invariance() {
    let mut rng = SplitMix(22);
    for (m, n) in [(70, 70), (45, 70), (70, 45)] {
        let a = normal_matrix(&mut rng, m, n, 1.0).map(Posit32::from_f64);
        let mut reference = a.clone();
        let (p_ref, _) = rgetrf(reference.as_mut(), 1).unwrap();
        for block in [8, 32, 64, 7] {
            let mut f = a.clone();
            let (p, _) = rgetrf(f.as_mut(), block).unwrap();
            assert_eq!(p, p_ref, "{m}x{n} block {block}");
            assert_eq!(f, reference, "{m}x{n} block {block}");
        }
    }
}

#[test]
fn f32_block_size_invariance() {
    let mut rng = SplitMix(23);
    let a = spd(&mut rng, 40).map(|x| x as f32);
    let mut r1 = a.clone();
    let mut r2 = a.clone();
    spotrf(r1.as_mut(), 1).unwrap();
    spotrf(r2.as_mut(), 16).unwrap();
    assert_eq!(r1, r2);
    let g = normal_matrix(&mut rng, 40, 40, 1.0).map(|x| x as f32);
    let (mut l1, mut l2) = (g.clone(), g.clone());
    assert_eq!(sgetrf(l1.as_mut(), 1).unwrap().0, sgetrf(l2.as_mut(), 16).unwrap().0);
    assert_eq!(l1, l2);
}

#[test]
fn cholesky_residual_64() {
    let mut rng = SplitMix(31);
    let a = spd(&mut rng, 64);
    let mut f = a.map(Posit32::from_f64);
    assert_eq!(rpotrf(f.as_mut(), 16).unwrap().info, 0);
    let l = lower_of(&f.map(|x| x.to_f64()), 0.0);
    let llt = matmul(&l, &l.transpose());
    let r = Matrix::from_fn(64, 64, |i, j| a.get(i, j) - llt.get(i, j));
    let rel = frob(&r) / frob(&a);
    assert!(rel < 10.0 * 2f64.powi(-27), "{rel:e}");
}

#[test]
fn lu_residual_64() {
    let mut rng = SplitMix(32);
    let a = normal_matrix(&mut rng, 64, 64, 1.0);
    let mut f = a.map(Posit32::from_f64);
    let (piv, st) = rgetrf(f.as_mut(), 16).unwrap();
    assert_eq!(st.info, 0);
    for (i, &r) in piv.ipiv.iter().enumerate() {
        assert!(r > i && r <= 64);
    }
    let fd = f.map(|x| x.to_f64());
    let l = Matrix::from_fn(64, 64, |i, j| {
        if i == j {
            1.0
        } else if i > j {
            fd.get(i, j)
        } else {
            0.0
        }
    });
    let u = Matrix::from_fn(64, 64, |i, j| if i <= j { fd.get(i, j) } else { 0.0 });
    let mut pa = a.clone();
    piv.apply(pa.as_mut());
    let lu = matmul(&l, &u);
    let r = Matrix::from_fn(64, 64, |i, j| pa.get(i, j) - lu.get(i, j));
    let rel = frob(&r) / frob(&a);
    assert!(rel < 10.0 * 2f64.powi(-27), "{rel:e}");
}

#[test]
fn solves_have_small_backward_error() {
    let mut rng = SplitMix(33);
    let n = 64;
    let a = spd(&mut rng, n);
    let xs = vec![1.0 / (n as f64).sqrt(); n];
    let b: Vec<f64> = (0..n).map(|i| (0..n).map(|k| a.get(i, k) * xs[k]).sum()).collect();
    let pb = Matrix::from_fn(n, 1, |i, _| Posit32::from_f64(b[i]));

    let mut f = a.map(Posit32::from_f64);
    rpotrf(f.as_mut(), 8).unwrap();
    let mut x = pb.clone();
    rpotrs(f.as_ref(), x.as_mut()).unwrap();
    assert!(backward(&a, &x, &b) < 1e-6);

    let mut g = a.map(Posit32::from_f64);
    let (piv, _) = rgetrf(g.as_mut(), 8).unwrap();
    let mut x = pb.clone();
    rgetrs(g.as_ref(), &piv, x.as_mut()).unwrap();
    assert!(backward(&a, &x, &b) < 1e-6);
}

fn backward(a: &DMatrix, x: &PMatrix, b: &[f64]) -> f64 {
    let n = b.len();
    let num: f64 = (0..n)
        .map(|i| {
            let r = b[i] - (0..n).map(|k| a.get(i, k) * x.get(k, 0).to_f64()).sum::<f64>();
            r * r
        })
        .sum();
    num.sqrt() / b.iter().map(|v| v * v).sum::<f64>().sqrt()
}

/// Element-wise forward substitution in the same order as the routine.
#[test]
#[allow(clippy::needless_range_loop)]
fn trsm_matches_substitution_oracle() {
    let mut rng = SplitMix(41);
    for _ in 0..20 {
        let l = Matrix::from_fn(8, 8, |i, j| {
            if i == j {
                Posit32::from_f64(1.0 + rng.uniform() * 3.0)
            } else if i > j {
                Posit32::from_f64(rng.normal())
            } else {
                Posit32::ZERO
            }
        });
        let b = Matrix::from_fn(8, 3, |_, _| Posit32::from_f64(rng.normal()));
        let mut x = b.clone();
        rtrsm(
            Side::Left,
            Uplo::Lower,
            Trans::N,
            Diag::NonUnit,
            Posit32::ONE,
            l.as_ref(),
            x.as_mut(),
        )
        .unwrap();
        for j in 0..3 {
            let mut y = [Posit32::ZERO; 8];
            for r in 0..8 {
                let mut t = Posit32::ZERO;
                for k in 0..r {
                    t = t + l.get(r, k) * y[k];
                }
                y[r] = (Posit32::ONE * b.get(r, j) - t) / l.get(r, r);
            }
            for r in 0..8 {
                assert_eq!(x.get(r, j), y[r]);
            }
        }
    }
}

/// Small integer SPD input whose factor has power-of-two diagonal: every
/// intermediate is exact in both formats, so they must agree bit for bit.
#[test]
fn posit_and_binary32_agree_when_exact() {
    let l = Matrix::from_fn(4, 4, |i, j| match (i, j) {
        (i, j) if i == j => [1.0, 2.0, 4.0, 2.0][i],
        (i, j) if i > j => ((i + 2 * j) % 3) as f64 - 1.0,
        _ => 0.0,
    });
    let a = matmul(&l, &l.transpose());
    let mut pa = a.map(Posit32::from_f64);
    let mut sa = a.map(|x| x as f32);
    rpotrf(pa.as_mut(), 2).unwrap();
    spotrf(sa.as_mut(), 2).unwrap();
    for i in 0..4 {
        for j in 0..=i {
            assert_eq!(pa.get(i, j).to_f64(), sa.get(i, j) as f64);
            assert_eq!(sa.get(i, j) as f64, l.get(i, j));
        }
    }
}
