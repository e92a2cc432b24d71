//! `PMAT1` matrix container.
//!
//! Layout: the ASCII magic `PMAT1`, one element-kind byte (1 = posit32,
//! 2 = binary32, 3 = binary64), rows and cols as u64 little-endian, then
//! `rows * cols` column-major elements, each little-endian (posit32 as its
//! 32-bit pattern).

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use posit_core::linalg::{DMatrix, Matrix, PMatrix, SMatrix};
use posit_core::Posit32;

use crate::error::{LabError, Result};

pub const MAGIC: &[u8; 5] = b"PMAT1";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ElementKind {
    Posit32 = 1,
    F32 = 2,
    F64 = 3,
}

impl ElementKind {
    fn from_byte(b: u8) -> Result<ElementKind> {
        match b {
            1 => Ok(ElementKind::Posit32),
            2 => Ok(ElementKind::F32),
            3 => Ok(ElementKind::F64),
            other => Err(LabError::Format(format!("unknown element kind {other}"))),
        }
    }

    pub fn width(self) -> usize {
        match self {
            ElementKind::Posit32 | ElementKind::F32 => 4,
            ElementKind::F64 => 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum MatrixFile {
    Posit32(PMatrix),
    F32(SMatrix),
    F64(DMatrix),
}

impl MatrixFile {
    pub fn kind(&self) -> ElementKind {
        match self {
            MatrixFile::Posit32(_) => ElementKind::Posit32,
            MatrixFile::F32(_) => ElementKind::F32,
            MatrixFile::F64(_) => ElementKind::F64,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            MatrixFile::Posit32(m) => (m.rows(), m.cols()),
            MatrixFile::F32(m) => (m.rows(), m.cols()),
            MatrixFile::F64(m) => (m.rows(), m.cols()),
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let (rows, cols) = self.shape();
        let mut out = Vec::with_capacity(22 + rows * cols * self.kind().width());
        out.extend_from_slice(MAGIC);
        out.push(self.kind() as u8);
        out.extend_from_slice(&(rows as u64).to_le_bytes());
        out.extend_from_slice(&(cols as u64).to_le_bytes());
        match self {
            MatrixFile::Posit32(m) => m
                .to_packed()
                .iter()
                .for_each(|p| out.extend_from_slice(&p.to_bits().to_le_bytes())),
            MatrixFile::F32(m) => m
                .to_packed()
                .iter()
                .for_each(|v| out.extend_from_slice(&v.to_le_bytes())),
            MatrixFile::F64(m) => m
                .to_packed()
                .iter()
                .for_each(|v| out.extend_from_slice(&v.to_le_bytes())),
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<MatrixFile> {
        if bytes.len() < 5 || &bytes[..5] != MAGIC {
            return Err(LabError::Format("missing PMAT1 header".into()));
        }
        if bytes.len() < 22 {
            return Err(LabError::Format("truncated PMAT1 header".into()));
        }
        let kind = ElementKind::from_byte(bytes[5])?;
        let rows = u64::from_le_bytes(bytes[6..14].try_into().unwrap());
        let cols = u64::from_le_bytes(bytes[14..22].try_into().unwrap());
        let body = &bytes[22..];
        let count = rows
            .checked_mul(cols)
            .and_then(|c| usize::try_from(c).ok())
            .ok_or_else(|| LabError::Format(format!("dimensions {rows}x{cols} overflow")))?;
        let expected = count
            .checked_mul(kind.width())
            .ok_or_else(|| LabError::Format(format!("dimensions {rows}x{cols} overflow")))?;
        if body.len() != expected {
            return Err(LabError::Format(format!(
                "{rows}x{cols} {kind:?} needs {expected} data bytes, found {}",
                body.len()
            )));
        }
        let (rows, cols) = (rows as usize, cols as usize);
        let w = kind.width();
        let words = body.chunks_exact(w);
        Ok(match kind {
            ElementKind::Posit32 => {
                let data = words
                    .map(|c| Posit32::from_bits(u32::from_le_bytes(c.try_into().unwrap())))
                    .collect();
                MatrixFile::Posit32(Matrix::from_col_major(rows, cols, data)?)
            }
            ElementKind::F32 => {
                let data = words.map(|c| f32::from_le_bytes(c.try_into().unwrap())).collect();
                MatrixFile::F32(Matrix::from_col_major(rows, cols, data)?)
            }
            ElementKind::F64 => {
                let data = words.map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
                MatrixFile::F64(Matrix::from_col_major(rows, cols, data)?)
            }
        })
    }

    pub fn write_to(&self, w: &mut impl Write) -> std::io::Result<()> {
        w.write_all(&self.to_bytes())
    }

    pub fn read_from(r: &mut impl Read) -> Result<MatrixFile> {
        let mut buf = Vec::new();
        r.read_to_end(&mut buf).map_err(|e| LabError::io("<reader>", e))?;
        MatrixFile::from_bytes(&buf)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_bytes()).map_err(|e| LabError::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<MatrixFile> {
        let path = path.as_ref();
        let bytes = fs::read(path).map_err(|e| LabError::io(path, e))?;
        MatrixFile::from_bytes(&bytes)
    }
}
