use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{Matrix, Vector};

/// A subspace of `k^d`, stored as the nonzero rows of its reduced row
/// echelon basis. Two subspaces are equal iff their bases are identical.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace { field, ambient_dim, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Matrix::identity(field, ambient_dim).row_space()
    }

    /// Span of arbitrary vectors of length `ambient_dim`.
    pub fn span(field: FieldSpec, ambient_dim: usize, vectors: &[Vector]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "vector of length {} in a space of dimension {ambient_dim}",
                    v.len()
                )));
            }
            if let Some(bad) = v.iter().find(|x| x.field() != field) {
                return Err(Error::FieldMismatch(field, bad.field()));
            }
        }
        if vectors.is_empty() {
            return Ok(Self::zero(field, ambient_dim));
        }
        Ok(Matrix::from_rows_unchecked(field, vectors.to_vec(), ambient_dim).row_space())
    }

    pub(crate) fn from_rref(field: FieldSpec, ambient_dim: usize, rref: &Matrix, pivots: &[usize]) -> Self {
        let basis = (0..pivots.len()).map(|i| rref.row(i).to_vec()).collect();
        Subspace { field, ambient_dim, basis, pivots: pivots.to_vec() }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Pivot coordinate of each basis vector, increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates not used as pivots; the unit vectors there span a
    /// complement.
    pub fn free_coordinates(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// `v` minus its projection along the complement: zero at every pivot.
    pub fn reduce(&self, v: &[FieldElement]) -> Vector {
        let mut v = v.to_vec();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let c = v[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = &*x - &(&c * y);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        v.len() == self.ambient_dim && self.reduce(v).iter().all(FieldElement::is_zero)
    }

    /// Coordinates of `v` in [`Self::basis`], if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[FieldElement]) -> Option<Vector> {
        self.contains(v).then(|| self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// The vector with the given coordinates in [`Self::basis`].
    pub fn combine(&self, coords: &[FieldElement]) -> Vector {
        let mut out = vec![self.field.zero(); self.ambient_dim];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(b) {
                *x = &*x + &(c * y);
            }
        }
        out
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch("subspaces of different ambient spaces".into()));
        }
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Self::span(self.field, self.ambient_dim, &all)
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// Basis vectors as the columns of an `ambient_dim x dim` matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient_dim, &self.basis)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} of {}, basis {:?})", self.dim(), self.ambient_dim, self.basis)
    }
}
