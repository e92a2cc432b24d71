mod common;

use common::SplitMix;
use posit_core::linalg::{gemm, Matrix, PMatrix, Trans};
use posit_core::Posit32;
use proptest::prelude::*;

/// Fixed-order triple loop: t = 0 + a0*b0 + a1*b1 + ..., then alpha*t + beta*c.
fn naive(ta: Trans, tb: Trans, alpha: Posit32, a: &PMatrix, b: &PMatrix, beta: Posit32, c: &PMatrix) -> PMatrix {
    let at = |i: usize, k: usize| if ta == Trans::N { a.get(i, k) } else { a.get(k, i) };
    let bt = |k: usize, j: usize| if tb == Trans::N { b.get(k, j) } else { b.get(j, k) };
    let kk = if ta == Trans::N { a.cols() } else { a.rows() };
    Matrix::from_fn(c.rows(), c.cols(), |i, j| {
        let mut t = Posit32::ZERO;
        for k in 0..kk {
            t = t + at(i, k) * bt(k, j);
        }
        alpha * t + beta * c.get(i, j)
    })
}

fn random_posit(rng: &mut SplitMix) -> Posit32 {
    // Mostly normal-ish magnitudes, sometimes arbitrary finite patterns.
    if rng.below(8) == 0 {
        let b = rng.next_u64() as u32;
        Posit32::from_bits(if b == 0x8000_0000 { 0 } else { b })
    } else {
        Posit32::from_f64(rng.normal() * 10f64.powi(rng.below(7) as i32 - 3))
    }
}

fn random_pmatrix(rng: &mut SplitMix, rows: usize, cols: usize) -> PMatrix {
    Matrix::from_fn(rows, cols, |_, _| random_posit(rng))
}

const MODES: [(Trans, Trans); 4] = [
    (Trans::N, Trans::N),
    (Trans::N, Trans::T),
    (Trans::T, Trans::N),
    (Trans::T, Trans::T),
];

#[test]
fn blocked_matches_naive_all_modes() {
    let mut rng = SplitMix(7);
    for trial in 0..1000 {
        let (m, n, k) = (1 + rng.below(16), 1 + rng.below(16), 1 + rng.below(16));
        let (ta, tb) = MODES[trial % 4];
        let a = if ta == Trans::N {
            random_pmatrix(&mut rng, m, k)
        } else {
            random_pmatrix(&mut rng, k, m)
        };
        let b = if tb == Trans::N {
            random_pmatrix(&mut rng, k, n)
        } else {
            random_pmatrix(&mut rng, n, k)
        };
        let c0 = random_pmatrix(&mut rng, m, n);
        let alpha = random_posit(&mut rng);
        let beta = random_posit(&mut rng);
        let expect = naive(ta, tb, alpha, &a, &b, beta, &c0);
        for block in [1, 3, 8, 64] {
            let mut c = c0.clone();
            gemm(ta, tb, alpha, a.as_ref(), b.as_ref(), beta, c.as_mut(), block).unwrap();
            assert_eq!(c, expect, "trial {trial} {m}x{n}x{k} {ta:?}{tb:?} block {block}");
        }
    }
}

#[test]
fn transpose_coherence() {
    let mut rng = SplitMix(11);
    for _ in 0..50 {
        let (m, n, k) = (1 + rng.below(20), 1 + rng.below(20), 1 + rng.below(20));
        let a = random_pmatrix(&mut rng, k, m);
        let b = random_pmatrix(&mut rng, n, k);
        let mut c1 = PMatrix::zeros(m, n);
        let mut c2 = PMatrix::zeros(m, n);
        gemm(
            Trans::T,
            Trans::T,
            Posit32::ONE,
            a.as_ref(),
            b.as_ref(),
            Posit32::ZERO,
            c1.as_mut(),
            8,
        )
        .unwrap();
        let (at, bt) = (a.transpose(), b.transpose());
        gemm(
            Trans::N,
            Trans::N,
            Posit32::ONE,
            at.as_ref(),
            bt.as_ref(),
            Posit32::ZERO,
            c2.as_mut(),
            8,
        )
        .unwrap();
        assert_eq!(c1, c2);
    }
}

#[test]
fn nar_poisons_one_row() {
    let mut rng = SplitMix(3);
    let mut a = Matrix::from_fn(6, 5, |_, _| Posit32::from_f64(rng.normal()));
    let b = Matrix::from_fn(5, 4, |_, _| Posit32::from_f64(rng.normal()));
    a.set(2, 3, Posit32::NAR);
    let mut c = PMatrix::zeros(6, 4);
    gemm(
        Trans::N,
        Trans::N,
        Posit32::ONE,
        a.as_ref(),
        b.as_ref(),
        Posit32::ZERO,
        c.as_mut(),
        2,
    )
    .unwrap();
    for i in 0..6 {
        for j in 0..4 {
            assert_eq!(c.get(i, j).is_nar(), i == 2, "({i},{j})");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn f32_gemm_matches_naive(seed in any::<u64>(), m in 1usize..12, n in 1usize..12, k in 1usize..12) {
        let mut rng = SplitMix(seed);
        let a = Matrix::from_fn(m, k, |_, _| rng.normal() as f32);
        let b = Matrix::from_fn(k, n, |_, _| rng.normal() as f32);
        let mut c = Matrix::from_elem(m, n, 0.5f32);
        gemm(Trans::N, Trans::N, 2.0f32, a.as_ref(), b.as_ref(), -1.0, c.as_mut(), 4).unwrap();
        for i in 0..m {
            for j in 0..n {
                let mut t = 0.0f32;
                for kk in 0..k {
                    t += a.get(i, kk) * b.get(kk, j);
                }
                prop_assert_eq!(c.get(i, j), 2.0 * t + -0.5);
            }
        }
    }
}
