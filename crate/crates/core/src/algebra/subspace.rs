//! Subspaces of F_q^n as canonical RREF bases.
//!
//! Two subspaces are equal iff their basis matrices are entry-wise equal,
//! which is what the interference-alignment checks lean on.

use super::field::FieldSpec;
use super::matrix::{Matrix, MatrixError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SubspaceError {
    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A subspace of F_q^ambient. The basis is in RREF with no zero rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    /// Canonical row space of an arbitrary matrix.
    pub fn row_space(m: &Matrix) -> Subspace {
        let (rref, rank) = m.rref_rank();
        let rows: Vec<usize> = (0..rank).collect();
        let cols: Vec<usize> = (0..m.cols()).collect();
        Subspace {
            ambient: m.cols(),
            basis: rref.select(&rows, &cols),
        }
    }

    pub fn zero(field: &FieldSpec, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::zero(field, 0, ambient),
        }
    }

    pub fn full(field: &FieldSpec, ambient: usize) -> Subspace {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn field(&self) -> &FieldSpec {
        self.basis.field()
    }

    /// Membership test by reduction against the RREF basis.
    pub fn contains_vector(&self, v: &[u64]) -> bool {
        if v.len() != self.ambient {
            return false;
        }
        let f = self.field();
        let mut rem = v.to_vec();
        for r in 0..self.basis.rows() {
            let pivot = (0..self.ambient).find(|&c| self.basis.get(r, c) != 0).unwrap();
            let factor = rem[pivot];
            if factor != 0 {
                for c in 0..self.ambient {
                    rem[c] = f.sub(rem[c], f.mul(factor, self.basis.get(r, c)));
                }
            }
        }
        rem.iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.rows_iter().all(|r| self.contains_vector(r))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<(), SubspaceError> {
        if self.ambient != other.ambient {
            return Err(SubspaceError::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// U + V as the row space of the stacked bases.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.check_ambient(other)?;
        if self.dim() == 0 {
            return Ok(other.clone());
        }
        if other.dim() == 0 {
            return Ok(self.clone());
        }
        let stacked = Matrix::vstack(&[&self.basis, &other.basis])?;
        Ok(Subspace::row_space(&stacked))
    }

    /// U intersect V via the kernel of the stacked basis: coefficient vectors
    /// (x, y) with x*U_basis = y*V_basis span the intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        self.check_ambient(other)?;
        let f = self.field().clone();
        let a = self.dim();
        let b = other.dim();
        if a == 0 || b == 0 {
            return Ok(Subspace::zero(&f, self.ambient));
        }
        let stacked = Matrix::vstack(&[&self.basis, &other.basis])?;
        // kernel vectors c of stacked^T satisfy sum_i c_i row_i = 0,
        // i.e. (c_1..c_a)*U_basis = -(c_{a+1}..)*V_basis lies in both spaces
        let kernel = stacked.transpose().nullspace();
        if kernel.rows() == 0 {
            return Ok(Subspace::zero(&f, self.ambient));
        }
        let u_coeffs: Vec<usize> = (0..a).collect();
        let coeff = kernel.select(&(0..kernel.rows()).collect::<Vec<_>>(), &u_coeffs);
        let vectors = coeff.mul(&self.basis)?;
        Ok(Subspace::row_space(&vectors))
    }

    /// The image subspace { v*A : v in self }.
    pub fn transform(&self, a: &Matrix) -> Result<Subspace, SubspaceError> {
        if a.rows() != self.ambient {
            return Err(SubspaceError::AmbientMismatch(self.ambient, a.rows()));
        }
        if self.dim() == 0 {
            return Ok(Subspace::zero(self.field(), a.cols()));
        }
        Ok(Subspace::row_space(&self.basis.mul(a)?))
    }
}
