use posit_core::linalg::{DMatrix, PMatrix, SMatrix};
use posit_core::Posit32;
use posit_lab::matfile::MatrixFile;
use proptest::prelude::*;

fn dims() -> impl Strategy<Value = (usize, usize)> {
    (0usize..6, 0usize..6)
}

proptest! {
    #[test]
    fn posit_matrices_round_trip((r, c) in dims(), seed in any::<u64>()) {
        let m = PMatrix::from_fn(r, c, |i, j| Posit32::from_bits((seed ^ (i * 31 + j) as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15) as u32));
        let f = MatrixFile::Posit32(m);
        prop_assert_eq!(MatrixFile::from_bytes(&f.to_bytes()).unwrap(), f);
    }

    #[test]
    fn float_matrices_round_trip_bitwise((r, c) in dims(), v in any::<f64>()) {
        let d = DMatrix::from_fn(r, c, |i, j| v * (i + 2 * j) as f64);
        let bytes = MatrixFile::F64(d.clone()).to_bytes();
        match MatrixFile::from_bytes(&bytes).unwrap() {
            MatrixFile::F64(back) => {
                for (x, y) in back.as_slice().iter().zip(d.as_slice()) {
                    prop_assert_eq!(x.to_bits(), y.to_bits());
                }
            }
            other => prop_assert!(false, "wrong kind {:?}", other.kind()),
        }
        let s = SMatrix::from_fn(r, c, |i, j| (v as f32) - (i * j) as f32);
        let bytes = MatrixFile::F32(s.clone()).to_bytes();
        prop_assert_eq!(bytes.len(), 22 + 4 * r * c);
        match MatrixFile::from_bytes(&bytes).unwrap() {
            MatrixFile::F32(back) => {
                for (x, y) in back.as_slice().iter().zip(s.as_slice()) {
                    prop_assert_eq!(x.to_bits(), y.to_bits());
                }
            }
            other => prop_assert!(false, "wrong kind {:?}", other.kind()),
        }
    }

    #[test]
    fn truncated_files_are_rejected((r, c) in (1usize..5, 1usize..5), cut in 1usize..8) {
        let bytes = MatrixFile::Posit32(PMatrix::from_elem(r, c, Posit32::ONE)).to_bytes();
        let cut = cut.min(bytes.len());
        prop_assert!(MatrixFile::from_bytes(&bytes[..bytes.len() - cut]).is_err());
    }
}

#[test]
fn files_on_disk_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.pmat");
    let f = MatrixFile::Posit32(PMatrix::from_fn(3, 2, |i, j| {
        Posit32::from_f64((i as f64) - 0.5 * j as f64)
    }));
    f.save(&path).unwrap();
    assert_eq!(MatrixFile::load(&path).unwrap(), f);
    assert!(MatrixFile::load(dir.path().join("missing")).is_err());
}
