use alloc::vec;
use alloc::vec::Vec;

use super::scalar::Scalar;
use super::LinalgError;
use crate::Posit32;

/// Dense column-major matrix with a leading dimension.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    ld: usize,
    data: Vec<T>,
}

pub type PMatrix = Matrix<Posit32>;
pub type SMatrix = Matrix<f32>;
pub type DMatrix = Matrix<f64>;

fn required_len(rows: usize, cols: usize, ld: usize) -> usize {
    if rows == 0 || cols == 0 {
        0
    } else {
        (cols - 1) * ld + rows
    }
}

impl<T: Copy> Matrix<T> {
    pub fn from_elem(rows: usize, cols: usize, value: T) -> Self {
        Matrix {
            rows,
            cols,
            ld: rows.max(1),
            data: vec![value; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Matrix {
            rows,
            cols,
            ld: rows.max(1),
            data,
        }
    }

    /// Packed column-major data (`ld == rows`).
    pub fn from_col_major(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, LinalgError> {
        Self::with_ld(rows, cols, rows.max(1), data)
    }

    pub fn with_ld(rows: usize, cols: usize, ld: usize, data: Vec<T>) -> Result<Self, LinalgError> {
        if ld < rows.max(1) {
            return Err(LinalgError::LeadingDimension { ld, rows });
        }
        if data.len() < required_len(rows, cols, ld) {
            return Err(LinalgError::DimensionMismatch("data shorter than ld * cols"));
        }
        Ok(Matrix { rows, cols, ld, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn ld(&self) -> usize {
        self.ld
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i + j * self.ld]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i + j * self.ld] = v;
    }

    pub fn as_ref(&self) -> MatRef<'_, T> {
        MatRef {
            data: &self.data,
            rows: self.rows,
            cols: self.cols,
            ld: self.ld,
        }
    }

    pub fn as_mut(&mut self) -> MatMut<'_, T> {
        MatMut {
            data: &mut self.data,
            rows: self.rows,
            cols: self.cols,
            ld: self.ld,
        }
    }

    pub fn map<U: Copy>(&self, mut f: impl FnMut(T) -> U) -> Matrix<U> {
        Matrix::from_fn(self.rows, self.cols, |i, j| f(self.get(i, j)))
    }

    pub fn transpose(&self) -> Matrix<T> {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    /// Column-major copy of the logical elements, dropping any padding.
    pub fn to_packed(&self) -> Vec<T> {
        let mut out = Vec::with_capacity(self.rows * self.cols);
        if self.rows == 0 {
            return out;
        }
        for j in 0..self.cols {
            out.extend_from_slice(&self.data[j * self.ld..j * self.ld + self.rows]);
        }
        out
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_elem(rows, cols, T::ZERO)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { T::ONE } else { T::ZERO })
    }
}

/// Borrowed read-only view.
#[derive(Clone, Copy, Debug)]
pub struct MatRef<'a, T> {
    data: &'a [T],
    rows: usize,
    cols: usize,
    ld: usize,
}

impl<'a, T: Copy> MatRef<'a, T> {
    pub fn new(data: &'a [T], rows: usize, cols: usize, ld: usize) -> Result<Self, LinalgError> {
        if ld < rows.max(1) {
            return Err(LinalgError::LeadingDimension { ld, rows });
        }
        if data.len() < required_len(rows, cols, ld) {
            return Err(LinalgError::DimensionMismatch("view exceeds data"));
        }
        Ok(MatRef { data, rows, cols, ld })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline(always)]
    pub fn get(&self, i: usize, j: usize) -> T {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i + j * self.ld]
    }

    /// Sub-view starting at `(r0, c0)`. Panics if out of range.
    pub fn sub(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> MatRef<'a, T> {
        assert!(
            r0 + rows <= self.rows && c0 + cols <= self.cols,
            "sub-view out of range"
        );
        let start = if rows == 0 || cols == 0 { 0 } else { r0 + c0 * self.ld };
        MatRef {
            data: &self.data[start..],
            rows,
            cols,
            ld: self.ld,
        }
    }

    pub fn to_owned(&self) -> Matrix<T> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j))
    }

    pub fn any(&self, mut pred: impl FnMut(T) -> bool) -> Option<(usize, usize)> {
        for j in 0..self.cols {
            for i in 0..self.rows {
                if pred(self.get(i, j)) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

/// Borrowed mutable view.
#[derive(Debug)]
pub struct MatMut<'a, T> {
    data: &'a mut [T],
    rows: usize,
    cols: usize,
    ld: usize,
}

impl<'a, T: Copy> MatMut<'a, T> {
    pub fn new(data: &'a mut [T], rows: usize, cols: usize, ld: usize) -> Result<Self, LinalgError> {
        if ld < rows.max(1) {
            return Err(LinalgError::LeadingDimension { ld, rows });
        }
        if data.len() < required_len(rows, cols, ld) {
            return Err(LinalgError::DimensionMismatch("view exceeds data"));
        }
        Ok(MatMut { data, rows, cols, ld })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline(always)]
    pub fn get(&self, i: usize, j: usize) -> T {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i + j * self.ld]
    }

    #[inline(always)]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i + j * self.ld] = v;
    }

    pub fn rb(&self) -> MatRef<'_, T> {
        MatRef {
            data: self.data,
            rows: self.rows,
            cols: self.cols,
            ld: self.ld,
        }
    }

    pub fn rb_mut(&mut self) -> MatMut<'_, T> {
        MatMut {
            data: self.data,
            rows: self.rows,
            cols: self.cols,
            ld: self.ld,
        }
    }

    pub fn sub_mut(&mut self, r0: usize, c0: usize, rows: usize, cols: usize) -> MatMut<'_, T> {
        assert!(
            r0 + rows <= self.rows && c0 + cols <= self.cols,
            "sub-view out of range"
        );
        let start = if rows == 0 || cols == 0 { 0 } else { r0 + c0 * self.ld };
        MatMut {
            data: &mut self.data[start..],
            rows,
            cols,
            ld: self.ld,
        }
    }

    /// Splits into columns `[0, c)` and `[c, cols)`.
    pub fn split_cols(self, c: usize) -> (MatMut<'a, T>, MatMut<'a, T>) {
        assert!(c <= self.cols);
        let at = (c * self.ld).min(self.data.len());
        let (left, right) = self.data.split_at_mut(at);
        (
            MatMut {
                data: left,
                rows: self.rows,
                cols: c,
                ld: self.ld,
            },
            MatMut {
                data: right,
                rows: self.rows,
                cols: self.cols - c,
                ld: self.ld,
            },
        )
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a + j * self.ld, b + j * self.ld);
        }
    }
}
