//! Dense exact matrices.
//!
//! All indices in the public API are 1-based.

mod index;
mod rank;

use std::fmt;

pub use index::{IndexSet, Permutation};
pub(crate) use rank::RankKernel;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

/// The three ranks in `r(A) = r(A1) + r(A/A1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GuttmanReport {
    pub rank_matrix: usize,
    pub rank_block: usize,
    pub rank_schur: usize,
    pub holds: bool,
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = field.one();
        }
        m
    }

    /// Builds a matrix from integer rows, embedding each entry into `field`.
    pub fn from_ints<R: AsRef<[i64]>>(field: FieldSpec, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for row in rows {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: row.len(),
                });
            }
            entries.extend(row.iter().map(|&x| field.from_integer(x)));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            field,
            entries,
        })
    }

    /// Builds a matrix from row-major scalars, all of which must lie in `field`.
    pub fn from_scalars(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                actual: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch {
                left: field.to_string(),
                right: bad.field().to_string(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    /// Entry at 1-based `(i, j)`. Panics when out of range.
    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        assert!(
            (1..=self.rows).contains(&i) && (1..=self.cols).contains(&j),
            "entry ({i}, {j}) outside {}x{}",
            self.rows,
            self.cols
        );
        &self.entries[(i - 1) * self.cols + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) -> Result<()> {
        self.check_row(i)?;
        self.check_col(j)?;
        if value.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: value.field().to_string(),
            });
        }
        self.entries[(i - 1) * self.cols + (j - 1)] = value;
        Ok(())
    }

    #[inline]
    pub(crate) fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub(crate) fn at_mut(&mut self, r: usize, c: usize) -> &mut Scalar {
        &mut self.entries[r * self.cols + c]
    }

    fn check_row(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.rows {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.rows,
            });
        }
        Ok(())
    }

    fn check_col(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.cols {
            return Err(Error::IndexOutOfRange {
                index: j,
                dim: self.cols,
            });
        }
        Ok(())
    }

    pub(crate) fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.at(r, c).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    /// Exact rank over the matrix's field; 0 for empty matrices.
    pub fn rank(&self) -> usize {
        let rows: Vec<usize> = (0..self.rows).collect();
        let cols: Vec<usize> = (0..self.cols).collect();
        RankKernel::new(self).rank_of(&rows, &cols)
    }

    /// The submatrix keeping rows and columns in `indices`, order preserved.
    pub fn principal_submatrix(&self, indices: &IndexSet) -> Result<Matrix> {
        let n = self.require_square()?;
        indices.check_within(n)?;
        let idx = indices.zero_based();
        Ok(self.select(&idx, &idx))
    }

    fn select(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows {
            entries.extend(cols.iter().map(|&c| self.at(r, c).clone()));
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            field: self.field,
            entries,
        }
    }

    /// Schur complement `A4 - A3 A1^{-1} A2` where `A1` is the principal block
    /// on `block` and the complement keeps its relative order.
    pub fn schur_complement(&self, block: &IndexSet) -> Result<Matrix> {
        let n = self.require_square()?;
        block.check_within(n)?;
        let inner = block.zero_based();
        let outer = block.complement(n).zero_based();

        let a1_inv = self
            .select(&inner, &inner)
            .inverse()
            .ok_or_else(|| Error::SingularBlock(block.to_string()))?;
        let a2 = self.select(&inner, &outer);
        let a3 = self.select(&outer, &inner);
        let a4 = self.select(&outer, &outer);

        let correction = a3.mul(&a1_inv.mul(&a2));
        Ok(a4.sub(&correction))
    }

    /// Checks Guttman rank additivity for the principal block on `block`.
    pub fn guttman_check(&self, block: &IndexSet) -> Result<GuttmanReport> {
        let schur = self.schur_complement(block)?;
        let rank_matrix = self.rank();
        let rank_block = self.principal_submatrix(block)?.rank();
        let rank_schur = schur.rank();
        Ok(GuttmanReport {
            rank_matrix,
            rank_block,
            rank_schur,
            holds: rank_matrix == rank_block + rank_schur,
        })
    }

    pub fn scale_row(&self, i: usize, s: &Scalar) -> Result<Matrix> {
        self.check_row(i)?;
        self.check_scalar(s)?;
        let mut out = self.clone();
        for c in 0..self.cols {
            *out.at_mut(i - 1, c) = self.at(i - 1, c) * s;
        }
        Ok(out)
    }

    pub fn scale_col(&self, j: usize, s: &Scalar) -> Result<Matrix> {
        self.check_col(j)?;
        self.check_scalar(s)?;
        let mut out = self.clone();
        for r in 0..self.rows {
            *out.at_mut(r, j - 1) = self.at(r, j - 1) * s;
        }
        Ok(out)
    }

    /// Computes `diag(row) * M * diag(col)`.
    pub fn scale(&self, row: &[Scalar], col: &[Scalar]) -> Result<Matrix> {
        if row.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                actual: row.len(),
            });
        }
        if col.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: col.len(),
            });
        }
        for s in row.iter().chain(col) {
            self.check_scalar(s)?;
        }
        let mut out = self.clone();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let x = self.at(r, c);
                if !x.is_zero() {
                    *out.at_mut(r, c) = &(&row[r] * x) * &col[c];
                }
            }
        }
        Ok(out)
    }

    fn check_scalar(&self, s: &Scalar) -> Result<()> {
        if s.field() != self.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: s.field().to_string(),
            });
        }
        if s.is_zero() {
            return Err(Error::ZeroScalar);
        }
        Ok(())
    }

    /// Simultaneous reordering: `result[i][j] = M[π(i)][π(j)]`.
    pub fn permute_simultaneous(&self, perm: &Permutation) -> Result<Matrix> {
        let n = self.require_square()?;
        if perm.len() != n {
            return Err(Error::InvalidPermutation(format!(
                "permutation of {} elements applied to an {n}x{n} matrix",
                perm.len()
            )));
        }
        let idx: Vec<usize> = perm.images().iter().map(|x| x - 1).collect();
        Ok(self.select(&idx, &idx))
    }

    /// `M^T = -M` with an explicitly zero diagonal. Non-square matrices are
    /// never skew-symmetric; the empty matrix is.
    pub fn is_skew_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        (0..n).all(|i| {
            self.at(i, i).is_zero()
                && (i + 1..n).all(|j| *self.at(i, j) == -self.at(j, i))
        })
    }

    pub(crate) fn mul(&self, other: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let x = self.at(r, k);
                if x.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let y = other.at(k, c);
                    if !y.is_zero() {
                        let acc = out.at(r, c) + &(x * y);
                        *out.at_mut(r, c) = acc;
                    }
                }
            }
        }
        out
    }

    pub(crate) fn sub(&self, other: &Matrix) -> Matrix {
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| x - y)
            .collect();
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries,
        }
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub(crate) fn inverse(&self) -> Option<Matrix> {
        let n = self.rows;
        debug_assert!(self.is_square());
        let mut a = self.clone();
        let mut inv = Matrix::identity(self.field, n);
        for c in 0..n {
            let piv = (c..n).find(|&r| !a.at(r, c).is_zero())?;
            if piv != c {
                for j in 0..n {
                    a.entries.swap(piv * n + j, c * n + j);
                    inv.entries.swap(piv * n + j, c * n + j);
                }
            }
            let p_inv = a.at(c, c).inv().expect("pivot is nonzero");
            for j in 0..n {
                *a.at_mut(c, j) = a.at(c, j) * &p_inv;
                *inv.at_mut(c, j) = inv.at(c, j) * &p_inv;
            }
            for r in 0..n {
                if r == c || a.at(r, c).is_zero() {
                    continue;
                }
                let factor = a.at(r, c).clone();
                for j in 0..n {
                    *a.at_mut(r, j) = a.at(r, j) - &(&factor * a.at(c, j));
                    *inv.at_mut(r, j) = inv.at(r, j) - &(&factor * inv.at(c, j));
                }
            }
        }
        Some(inv)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|c| self.at(r, c).balanced_string())
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
