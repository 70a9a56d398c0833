//! Dense matrices over an exact field, with the row-reduction kernel the rest
//! of the crate is built on.

use std::fmt;
use std::ops::{Index, IndexMut};

use thiserror::Error;

use crate::field::{FieldSpec, Scalar};

/// A column vector of field elements.
pub type Vector = Vec<Scalar>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("ragged rows: row {row} has {got} entries, expected {expected}")]
    Ragged {
        row: usize,
        got: usize,
        expected: usize,
    },
    #[error("entry field mismatch")]
    FieldMismatch,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DenseMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`DenseMatrix::row_reduce`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowReduction {
    pub rref: DenseMatrix,
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
}

impl DenseMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        DenseMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = field.one();
        }
        m
    }

    /// Elementary matrix with a single one at `(i, j)` (0-based).
    pub fn unit(field: FieldSpec, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        m[(i, j)] = field.one();
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self, MatrixError> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(MatrixError::Ragged {
                    row: i,
                    got: row.len(),
                    expected: cols,
                });
            }
            if row.iter().any(|s| s.field() != field) {
                return Err(MatrixError::FieldMismatch);
            }
            data.extend(row);
        }
        Ok(DenseMatrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Build from small integers; handy in tests and fixtures.
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular integer matrix")
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, rhs: &DenseMatrix) -> Result<DenseMatrix, MatrixError> {
        if self.cols != rhs.rows {
            return Err(MatrixError::SizeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector size");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &DenseMatrix) -> Result<DenseMatrix, MatrixError> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &DenseMatrix) -> Result<DenseMatrix, MatrixError> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(
        &self,
        rhs: &DenseMatrix,
        f: impl Fn(&Scalar, &Scalar) -> Scalar,
    ) -> Result<DenseMatrix, MatrixError> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(MatrixError::SizeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(DenseMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> DenseMatrix {
        DenseMatrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self - c * I`.
    pub fn shift(&self, c: &Scalar) -> DenseMatrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] = &m[(i, i)] - c;
        }
        m
    }

    pub fn pow(&self, e: u32) -> DenseMatrix {
        let mut acc = Self::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self).expect("square");
        }
        acc
    }

    /// Stack matrices with the same column count on top of each other.
    pub fn vstack(field: FieldSpec, cols: usize, blocks: &[&DenseMatrix]) -> DenseMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column count");
            data.extend_from_slice(&b.data);
            rows += b.rows;
        }
        DenseMatrix {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn hstack(&self, rhs: &DenseMatrix) -> DenseMatrix {
        assert_eq!(self.rows, rhs.rows, "hstack row count");
        let mut out = Self::zeros(self.field, self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    /// Block-diagonal matrix `diag(self, rhs)`.
    pub fn block_diag(&self, rhs: &DenseMatrix) -> DenseMatrix {
        let mut out = Self::zeros(self.field, self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out[(self.rows + i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    /// Reduced row echelon form. Pivots are chosen deterministically: columns
    /// left to right, and within a column the first row at or below the
    /// current one holding a nonzero entry.
    pub fn row_reduce(&self) -> RowReduction {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("nonzero pivot");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let factor = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        let d = &factor * &m[(r, j)];
                        m[(i, j)] = &m[(i, j)] - &d;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        RowReduction {
            rref: m,
            rank: r,
            pivot_cols,
        }
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of the right null space, one vector per free column in
    /// ascending order (the free coordinate set to one).
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let RowReduction {
            rref, pivot_cols, ..
        } = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivot_cols {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (r, &pc) in pivot_cols.iter().enumerate() {
                    v[pc] = -&rref[(r, f)];
                }
                v
            })
            .collect()
    }

    /// One solution of `self * x = b` (free variables set to zero), or `None`
    /// if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let aug = self.hstack(&DenseMatrix::from_columns(self.field, self.rows, &[b.to_vec()]));
        let red = aug.row_reduce();
        if red.pivot_cols.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &pc) in red.pivot_cols.iter().enumerate() {
            x[pc] = red.rref[(r, self.cols)].clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> Scalar {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut m = self.clone();
        let n = m.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let factor = &m[(i, c)] * &inv;
                for j in c..n {
                    let d = &factor * &m[(c, j)];
                    m[(i, j)] = &m[(i, j)] - &d;
                }
            }
        }
        det
    }

    /// Characteristic polynomial `det(tI - A)` as coefficients, constant term
    /// first. Uses a Hessenberg reduction, so it works over any field.
    pub fn charpoly(&self) -> Vec<Scalar> {
        assert!(self.is_square(), "charpoly of a non-square matrix");
        let n = self.rows;
        let zero = self.field.zero();
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            if i != m {
                h.swap_rows(i, m);
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let t = h[(m, m - 1)].inv().expect("nonzero");
            for j in m + 1..n {
                let u = &h[(j, m - 1)] * &t;
                if u.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let d = &u * &h[(m, c)];
                    h[(j, c)] = &h[(j, c)] - &d;
                }
                for r in 0..n {
                    let d = &u * &h[(r, j)];
                    h[(r, m)] = &h[(r, m)] + &d;
                }
            }
        }
        // p[k] is the charpoly of the leading k x k block.
        let mut p: Vec<Vec<Scalar>> = vec![vec![self.field.one()]];
        for m in 1..=n {
            let prev = &p[m - 1];
            let mut next = vec![zero.clone(); m + 1];
            for (k, c) in prev.iter().enumerate() {
                next[k + 1] = &next[k + 1] + c;
                next[k] = &next[k] - &(c * &h[(m - 1, m - 1)]);
            }
            let mut t = self.field.one();
            for i in 1..m {
                t = &t * &h[(m - i, m - i - 1)];
                let coef = &t * &h[(m - i - 1, m - 1)];
                if coef.is_zero() {
                    continue;
                }
                for (k, c) in p[m - i - 1].iter().enumerate() {
                    next[k] = &next[k] - &(&coef * c);
                }
            }
            p.push(next);
        }
        p.pop().expect("nonempty")
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            write!(f, "\n  [")?;
            for (j, v) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Evaluate a univariate polynomial (constant term first) by Horner's rule.
pub fn eval_univariate(coeffs: &[Scalar], x: &Scalar) -> Scalar {
    let mut acc = x.field().zero();
    for c in coeffs.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Scalar, v: &[Scalar]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::rational()
    }

    #[test]
    fn identity_has_full_rank() {
        let r = DenseMatrix::identity(q(), 3).row_reduce();
        assert_eq!(r.rank, 3);
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);
        assert!(DenseMatrix::identity(q(), 3).kernel_basis().is_empty());
    }

    #[test]
    fn zero_matrix_has_no_pivots() {
        let z = DenseMatrix::zeros(q(), 2, 4);
        let r = z.row_reduce();
        assert_eq!(r.rank, 0);
        assert!(r.pivot_cols.is_empty());
        assert_eq!(DenseMatrix::zeros(q(), 1, 2).kernel_basis().len(), 2);
    }

    #[test]
    fn proportional_rows_rank_one() {
        let m = DenseMatrix::from_i64(q(), &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_of_all_ones_row_over_f2() {
        let f2 = FieldSpec::prime(2).unwrap();
        let m = DenseMatrix::from_i64(f2, &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![f2.one(), f2.one()]]);
    }

    #[test]
    fn rref_is_idempotent_on_example() {
        let m = DenseMatrix::from_i64(q(), &[&[0, 2, 4, 1], &[1, 1, 0, 3], &[1, 3, 4, 4]]);
        let r = m.row_reduce();
        assert_eq!(r.rref.row_reduce().rref, r.rref);
        assert_eq!(r.rank, 2);
        assert_eq!(r.pivot_cols, vec![0, 1]);
    }

    #[test]
    fn solve_reports_inconsistency() {
        let m = DenseMatrix::from_i64(q(), &[&[1, 1], &[2, 2]]);
        assert!(m.solve(&[q().one(), q().zero()]).is_none());
        let x = m.solve(&[q().from_i64(3), q().from_i64(6)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q().from_i64(3), q().from_i64(6)]);
    }

    #[test]
    fn determinant_and_charpoly_small() {
        let m = DenseMatrix::from_i64(q(), &[&[2, 1], &[1, 3]]);
        assert_eq!(m.determinant(), q().from_i64(5));
        // t^2 - 5t + 5
        assert_eq!(
            m.charpoly(),
            vec![q().from_i64(5), q().from_i64(-5), q().one()]
        );
    }

    #[test]
    fn charpoly_of_companion_matrix() {
        // companion of t^3 - 2t^2 + 3t - 7
        let m = DenseMatrix::from_i64(q(), &[&[0, 0, 7], &[1, 0, -3], &[0, 1, 2]]);
        assert_eq!(
            m.charpoly(),
            vec![q().from_i64(-7), q().from_i64(3), q().from_i64(-2), q().one()]
        );
    }

    #[test]
    fn size_mismatch_is_reported() {
        let a = DenseMatrix::zeros(q(), 2, 3);
        assert!(matches!(a.mul(&a), Err(MatrixError::SizeMismatch(_))));
        assert!(DenseMatrix::from_rows(q(), vec![vec![q().one()], vec![]]).is_err());
    }
}
