//! Dense matrices over a finite field, with the solvers every rank
//! condition in this crate relies on.

use super::field::FieldSpec;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("no T with T*M = B exists: row space of B is not contained in row space of M")]
    Infeasible,
    #[error("matrix is singular")]
    Singular,
}

/// Row-major dense matrix. Entries are canonical field encodings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zero(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: &FieldSpec, rows: &[Vec<u64>]) -> Result<Self, MatrixError> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * ncols);
        for r in rows {
            if r.len() != ncols {
                return Err(MatrixError::DimensionMismatch("ragged rows".into()));
            }
            for &v in r {
                if !field.contains(v) {
                    return Err(MatrixError::DimensionMismatch(format!(
                        "entry {v} out of range for field of order {}",
                        field.order()
                    )));
                }
                data.push(v);
            }
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols: ncols,
            data,
        })
    }

    /// Matrix with a single row.
    pub fn row_vector(field: &FieldSpec, row: &[u64]) -> Self {
        Matrix {
            field: field.clone(),
            rows: 1,
            cols: row.len(),
            data: row.to_vec(),
        }
    }

    /// e_i as a 1 x n row (0-based index).
    pub fn basis_row(field: &FieldSpec, n: usize, i: usize) -> Self {
        let mut m = Matrix::zero(field, 1, n);
        m.set(0, i, 1);
        m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        debug_assert!(self.field.contains(v));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[u64]> {
        self.data.chunks(self.cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    fn check_field(&self, other: &Matrix) -> Result<(), MatrixError> {
        if self.field != other.field {
            return Err(MatrixError::FieldMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, s: u64) -> Matrix {
        let data = self.data.iter().map(|&a| self.field.mul(a, s)).collect();
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn neg(&self) -> Matrix {
        let data = self.data.iter().map(|&a| self.field.neg(a)).collect();
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Matrix::zero(f, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product, vector as a column given by a slice.
    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::DimensionMismatch(format!(
                "{}x{} * {}-vector",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let f = &self.field;
        let mut out = vec![0u64; self.rows];
        for i in 0..self.rows {
            let mut acc = 0;
            for (l, &x) in v.iter().enumerate() {
                acc = f.add(acc, f.mul(self.get(i, l), x));
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Vertical stack; all operands must share the column count and field.
    pub fn vstack(parts: &[&Matrix]) -> Result<Matrix, MatrixError> {
        let first = parts.first().ok_or_else(|| {
            MatrixError::DimensionMismatch("vstack of zero matrices".into())
        })?;
        let cols = first.cols;
        let field = first.field.clone();
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            if p.field != field {
                return Err(MatrixError::FieldMismatch);
            }
            if p.cols != cols {
                return Err(MatrixError::DimensionMismatch("vstack column mismatch".into()));
            }
            data.extend_from_slice(&p.data);
            rows += p.rows;
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Horizontal stack.
    pub fn hstack(parts: &[&Matrix]) -> Result<Matrix, MatrixError> {
        let first = parts.first().ok_or_else(|| {
            MatrixError::DimensionMismatch("hstack of zero matrices".into())
        })?;
        let rows = first.rows;
        let field = first.field.clone();
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut out = Matrix::zero(&field, rows, cols);
        let mut off = 0;
        for p in parts {
            if p.field != field {
                return Err(MatrixError::FieldMismatch);
            }
            if p.rows != rows {
                return Err(MatrixError::DimensionMismatch("hstack row mismatch".into()));
            }
            for i in 0..rows {
                for j in 0..p.cols {
                    out.set(i, off + j, p.get(i, j));
                }
            }
            off += p.cols;
        }
        Ok(out)
    }

    /// Submatrix by explicit row and column index lists.
    pub fn select(&self, row_idx: &[usize], col_idx: &[usize]) -> Matrix {
        let mut out = Matrix::zero(&self.field, row_idx.len(), col_idx.len());
        for (i, &r) in row_idx.iter().enumerate() {
            for (j, &c) in col_idx.iter().enumerate() {
                out.set(i, j, self.get(r, c));
            }
        }
        out
    }

    /// Reduced row echelon form and rank. RREF is unique for a given row space.
    pub fn rref_rank(&self) -> (Matrix, usize) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(sel) = (pivot_row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if sel != pivot_row {
                for j in 0..m.cols {
                    let a = m.get(sel, j);
                    let b = m.get(pivot_row, j);
                    m.set(sel, j, b);
                    m.set(pivot_row, j, a);
                }
            }
            let inv = f.inv(m.get(pivot_row, col)).expect("pivot nonzero");
            for j in col..m.cols {
                m.set(pivot_row, j, f.mul(m.get(pivot_row, j), inv));
            }
            for r in 0..m.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for j in col..m.cols {
                    let v = f.sub(m.get(r, j), f.mul(factor, m.get(pivot_row, j)));
                    m.set(r, j, v);
                }
            }
            pivot_row += 1;
        }
        (m, pivot_row)
    }

    pub fn rank(&self) -> usize {
        self.rref_rank().1
    }

    pub fn is_nonsingular(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Basis of the right nullspace {x : M x = 0}, rows of the returned matrix.
    pub fn nullspace(&self) -> Matrix {
        let (rref, rank) = self.rref_rank();
        let f = &self.field;
        let mut pivot_cols = Vec::with_capacity(rank);
        for r in 0..rank {
            let c = (0..self.cols).find(|&c| rref.get(r, c) != 0).unwrap();
            pivot_cols.push(c);
        }
        let free_cols: Vec<usize> = (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut out = Matrix::zero(f, free_cols.len(), self.cols);
        for (i, &fc) in free_cols.iter().enumerate() {
            out.set(i, fc, 1);
            for (r, &pc) in pivot_cols.iter().enumerate() {
                out.set(i, pc, f.neg(rref.get(r, fc)));
            }
        }
        out
    }

    /// Solves M X = B for X, requiring the solution to be unique.
    pub fn solve_unique(&self, b: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(b)?;
        if b.rows != self.rows {
            return Err(MatrixError::DimensionMismatch("solve rhs rows".into()));
        }
        let aug = Matrix::hstack(&[self, b])?;
        let (rref, _) = aug.rref_rank();
        // coefficient part must have full column rank and the system must be consistent
        let coeff_rank = self.rank();
        if coeff_rank != self.cols {
            return Err(MatrixError::Singular);
        }
        let mut x = Matrix::zero(&self.field, self.cols, b.cols);
        for r in 0..rref.rows {
            let pivot = (0..self.cols).find(|&c| rref.get(r, c) != 0);
            match pivot {
                Some(c) => {
                    for j in 0..b.cols {
                        x.set(c, j, rref.get(r, self.cols + j));
                    }
                }
                None => {
                    // zero coefficient row: rhs must be zero too
                    for j in 0..b.cols {
                        if rref.get(r, self.cols + j) != 0 {
                            return Err(MatrixError::Infeasible);
                        }
                    }
                }
            }
        }
        Ok(x)
    }

    /// Solves T * M = B for T. When the system is underdetermined, free
    /// variables are fixed to zero after RREF back-substitution, so the
    /// returned T is deterministic.
    pub fn solve_left(&self, b: &Matrix) -> Result<Matrix, MatrixError> {
        self.check_field(b)?;
        if b.cols != self.cols {
            return Err(MatrixError::DimensionMismatch("solve_left column mismatch".into()));
        }
        // T M = B  <=>  M^T T^T = B^T ; solve column by column with free vars = 0
        let mt = self.transpose();
        let bt = b.transpose();
        let aug = Matrix::hstack(&[&mt, &bt])?;
        let (rref, _) = aug.rref_rank();
        let n = mt.cols; // = self.rows
        let mut tt = Matrix::zero(&self.field, n, bt.cols);
        for r in 0..rref.rows {
            let pivot = (0..n).find(|&c| rref.get(r, c) != 0);
            match pivot {
                Some(c) => {
                    // free variables are zero, so pivot value is the rhs directly;
                    // but the pivot row may involve free columns with nonzero
                    // coefficients -- those contribute nothing since free vars = 0.
                    for j in 0..bt.cols {
                        tt.set(c, j, rref.get(r, n + j));
                    }
                }
                None => {
                    for j in 0..bt.cols {
                        if rref.get(r, n + j) != 0 {
                            return Err(MatrixError::Infeasible);
                        }
                    }
                }
            }
        }
        Ok(tt.transpose())
    }

    pub fn inverse(&self) -> Result<Matrix, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::DimensionMismatch("inverse of non-square".into()));
        }
        self.solve_unique(&Matrix::identity(&self.field, self.rows))
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn to_nested(&self) -> Vec<Vec<u64>> {
        self.rows_iter().map(|r| r.to_vec()).collect()
    }
}
