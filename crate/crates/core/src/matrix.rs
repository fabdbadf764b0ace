//! Dense max-plus matrices.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::maxplus::MaxPlus;
use crate::scalar::Scalar;

/// Row-major dense matrix over `MaxPlus<T>`. Shape is fixed at construction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix<T>", bound(serialize = "T: Scalar", deserialize = "T: Scalar"))]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<MaxPlus<T>>,
}

#[derive(Deserialize)]
#[serde(bound(deserialize = "T: Scalar"))]
struct RawMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<MaxPlus<T>>,
}

impl<T: Scalar> TryFrom<RawMatrix<T>> for Matrix<T> {
    type Error = Error;

    fn try_from(raw: RawMatrix<T>) -> Result<Self> {
        Matrix::new(raw.rows, raw.cols, raw.entries)
    }
}

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<MaxPlus<T>>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::BadShape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn filled(rows: usize, cols: usize, value: MaxPlus<T>) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![value; rows * cols],
        }
    }

    /// `Z`: every entry `ε`.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, MaxPlus::Epsilon)
    }

    /// `I`: `e` on the diagonal, `ε` elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = MaxPlus::e();
        }
        m
    }

    /// `E`: every entry `e`.
    pub fn ones(rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, MaxPlus::e())
    }

    pub fn from_rows(rows: Vec<Vec<MaxPlus<T>>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::BadShape {
                    rows: nrows,
                    cols: ncols,
                    len: entries.len() + row.len(),
                });
            }
            entries.extend(row);
        }
        Self::new(nrows, ncols, entries)
    }

    /// Convenience constructor where `f64::NEG_INFINITY` denotes `ε`.
    pub fn from_f64_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| MaxPlus::from_f64(x)).collect())
                .collect(),
        )
    }

    pub fn column(values: Vec<MaxPlus<T>>) -> Self {
        let rows = values.len();
        Matrix {
            rows,
            cols: 1,
            entries: values,
        }
    }

    pub fn column_from_values(values: &[T]) -> Self {
        Self::column(values.iter().copied().map(MaxPlus::Finite).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[MaxPlus<T>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> MaxPlus<T> {
        self[(i, j)]
    }

    pub fn row(&self, i: usize) -> &[MaxPlus<T>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Column `j` as an `n×1` matrix.
    pub fn col(&self, j: usize) -> Self {
        Self::column((0..self.rows).map(|i| self[(i, j)]).collect())
    }

    pub fn is_all_epsilon(&self) -> bool {
        self.entries.iter().all(MaxPlus::is_epsilon)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn map(&self, f: impl Fn(MaxPlus<T>) -> MaxPlus<T>) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&x| f(x)).collect(),
        }
    }

    fn require_same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// Entrywise max.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        self.require_same_shape(other, "oplus")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| a.oplus(b))
                .collect(),
        })
    }

    /// Max-plus product `[A⊗C]_ij = max_p (A_ip + C_pj)`.
    pub fn otimes(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "otimes",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for p in 0..self.cols {
                let a = match self[(i, p)] {
                    MaxPlus::Finite(a) => a,
                    MaxPlus::Epsilon => continue,
                };
                for j in 0..other.cols {
                    if let MaxPlus::Finite(c) = other[(p, j)] {
                        let cell = &mut out[(i, j)];
                        *cell = cell.oplus(MaxPlus::Finite(a + c));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Scalar broadcast `α ⊗ A`.
    pub fn scale(&self, alpha: MaxPlus<T>) -> Self {
        self.map(|x| alpha.otimes(x))
    }

    /// Shorthand for `scale(Finite(alpha))`.
    pub fn shift(&self, alpha: T) -> Self {
        self.scale(MaxPlus::Finite(alpha))
    }

    /// `A^⊗p` by binary exponentiation; `A^⊗0 = I`.
    pub fn power(&self, p: u32) -> Result<Self> {
        let n = self.require_square()?;
        let mut result = Self::identity(n);
        let mut base = self.clone();
        let mut exp = p;
        while exp > 0 {
            if exp & 1 == 1 {
                result = result.otimes(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.otimes(&base)?;
            }
        }
        Ok(result)
    }

    /// `(I ⊕ A)^⊗k` for the first power of two `k >= n-1`, without checking
    /// for positive circuits.
    pub(crate) fn star_unchecked(&self) -> Result<Self> {
        let n = self.require_square()?;
        let mut closure = Self::identity(n).oplus(self)?;
        let mut reach = 1usize;
        while reach + 1 < n {
            closure = closure.otimes(&closure)?;
            reach *= 2;
        }
        Ok(closure)
    }

    /// Kleene star `A* = ⊕_{p>=0} A^⊗p`.
    ///
    /// Fails with [`Error::PositiveCircuit`] when the precedence graph has a
    /// circuit of strictly positive weight.
    pub fn kleene_star(&self) -> Result<Self> {
        let star = self.star_unchecked()?;
        let plus = self.otimes(&star)?;
        for i in 0..self.rows {
            if let MaxPlus::Finite(d) = plus[(i, i)] {
                if d > T::zero() {
                    return Err(Error::PositiveCircuit { node: i });
                }
            }
        }
        Ok(star)
    }

    /// `A⁺ = A ⊗ A*`.
    pub fn kleene_plus(&self) -> Result<Self> {
        self.otimes(&self.kleene_star()?)
    }

    /// True iff `self ⊕ other = self`, i.e. entrywise `self >= other`.
    pub fn overcomes(&self, other: &Self) -> Result<bool> {
        self.require_same_shape(other, "overcomes")?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .all(|(&a, &b)| a.oplus(b) == a))
    }

    /// Least `p0 <= n` with `A^⊗p0 = Z`, or `None` if the matrix is not nilpotent.
    pub fn nilpotency_index(&self) -> Result<Option<usize>> {
        let n = self.require_square()?;
        let mut acc = self.clone();
        for p in 1..=n.max(1) {
            if acc.is_all_epsilon() {
                return Ok(Some(p));
            }
            acc = acc.otimes(self)?;
        }
        Ok(None)
    }

    pub fn is_nilpotent(&self) -> Result<bool> {
        Ok(self.nilpotency_index()?.is_some())
    }

    /// Least solution `x = A* ⊗ b` of `x = A ⊗ x ⊕ b`.
    pub fn solve_affine(&self, b: &Self) -> Result<Self> {
        let n = self.require_square()?;
        if b.rows != n || b.cols != 1 {
            return Err(Error::DimensionMismatch {
                op: "solve_affine",
                left: self.shape(),
                right: b.shape(),
            });
        }
        self.kleene_star()?.otimes(b)
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.shape() == other.shape()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Copy of the `rows×cols` block starting at `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        m
    }

    /// Assemble a matrix from a grid of blocks with consistent row/column sizes.
    pub fn from_blocks(grid: &[Vec<Self>]) -> Result<Self> {
        let heights: Vec<usize> = grid.iter().map(|r| r.first().map_or(0, Matrix::rows)).collect();
        let widths: Vec<usize> = grid.first().map_or_else(Vec::new, |r| r.iter().map(Matrix::cols).collect());
        let mut out = Self::zeros(heights.iter().sum(), widths.iter().sum());
        let mut r0 = 0;
        for (bi, row) in grid.iter().enumerate() {
            if row.len() != widths.len() {
                return Err(Error::BadShape {
                    rows: grid.len(),
                    cols: widths.len(),
                    len: row.len(),
                });
            }
            let mut c0 = 0;
            for (bj, block) in row.iter().enumerate() {
                if block.shape() != (heights[bi], widths[bj]) {
                    return Err(Error::DimensionMismatch {
                        op: "from_blocks",
                        left: (heights[bi], widths[bj]),
                        right: block.shape(),
                    });
                }
                out.paste(r0, c0, block);
                c0 += widths[bj];
            }
            r0 += heights[bi];
        }
        Ok(out)
    }

    pub(crate) fn paste(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = MaxPlus<T>;

    fn index(&self, (i, j): (usize, usize)) -> &MaxPlus<T> {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut MaxPlus<T> {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(|c| c.chars().count()).max().unwrap_or(1);
        for i in 0..self.rows {
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
