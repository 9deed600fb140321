//! Finite-dimensional `k[t1..tn]`-modules as tuples of commuting matrices,
//! their invariant subspaces, sub- and quotient modules.

mod decompose;
mod ideal;

pub use decompose::{
    maximal_ideal_key, primary_decomposition, radical_filtration, radical_submodule, LocalPiece,
    MaximalIdealKey,
};
pub use ideal::{annihilator_ideal, Ideal};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::linalg::{Matrix, Subspace, TrackedEchelon, Vector};

/// `n` pairwise commuting `d x d` matrices over one field: the action of
/// `t1, ..., tn` on `k^d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CommutingTuple {
    field: FieldSpec,
    nvars: usize,
    dim: usize,
    mats: Vec<Matrix>,
}

impl CommutingTuple {
    /// Checks shapes, fields and pairwise commutation.
    pub fn new(field: FieldSpec, nvars: usize, dim: usize, mats: Vec<Matrix>) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::Precondition("a tuple needs at least one variable".into()));
        }
        if mats.len() != nvars {
            return Err(Error::ArityMismatch { expected: nvars, found: mats.len() });
        }
        for (i, m) in mats.iter().enumerate() {
            if m.field() != field {
                return Err(Error::FieldMismatch(field, m.field()));
            }
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "matrix {i} is {}x{}, expected {dim}x{dim}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        for i in 0..nvars {
            for j in i + 1..nvars {
                if &mats[i] * &mats[j] != &mats[j] * &mats[i] {
                    return Err(Error::NonCommuting(i, j));
                }
            }
        }
        Ok(CommutingTuple { field, nvars, dim, mats })
    }

    /// A single matrix as a one-variable tuple.
    pub fn single(m: Matrix) -> Result<Self> {
        Self::new(m.field(), 1, m.rows(), vec![m])
    }

    pub(crate) fn new_unchecked(field: FieldSpec, nvars: usize, dim: usize, mats: Vec<Matrix>) -> Self {
        CommutingTuple { field, nvars, dim, mats }
    }

    /// The zero module.
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Self::new_unchecked(field, nvars, 0, vec![Matrix::zeros(field, 0, 0); nvars])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    /// Direct sum.
    pub fn block_diag(&self, other: &Self) -> Result<Self> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| Matrix::block_diag(self.field, &[a, b]))
            .collect::<Result<_>>()?;
        Ok(Self::new_unchecked(self.field, self.nvars, self.dim + other.dim, mats))
    }

    pub fn is_invariant(&self, space: &Subspace) -> bool {
        space.ambient_dim() == self.dim
            && space.field() == self.field
            && space
                .basis()
                .iter()
                .all(|v| self.mats.iter().all(|m| space.contains(&m.mul_vec(v))))
    }

    /// Action on an invariant submodule, in the echelon basis of `s`.
    pub fn restrict(&self, s: &InvariantSubmodule) -> Result<Self> {
        self.check_submodule(s)?;
        let space = &s.space;
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let cols: Vec<Vector> = space
                    .basis()
                    .iter()
                    .map(|b| space.coordinates(&m.mul_vec(b)).ok_or(Error::NotInvariant))
                    .collect::<Result<_>>()?;
                Ok(Matrix::from_columns(self.field, space.dim(), &cols))
            })
            .collect::<Result<_>>()?;
        Ok(Self::new_unchecked(self.field, self.nvars, space.dim(), mats))
    }

    /// Induced action on `V / s`, with basis the images of the unit vectors
    /// at the non-pivot coordinates of `s`.
    pub fn quotient(&self, s: &InvariantSubmodule) -> Result<Self> {
        self.check_submodule(s)?;
        let space = &s.space;
        let free = space.free_coordinates();
        let mats = self
            .mats
            .iter()
            .map(|m| {
                let cols: Vec<Vector> = free
                    .iter()
                    .map(|&c| {
                        let image = space.reduce(&m.column(c));
                        free.iter().map(|&r| image[r].clone()).collect()
                    })
                    .collect();
                Matrix::from_columns(self.field, free.len(), &cols)
            })
            .collect();
        Ok(Self::new_unchecked(self.field, self.nvars, free.len(), mats))
    }

    fn check_submodule(&self, s: &InvariantSubmodule) -> Result<()> {
        if s.space.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "submodule of a {}-dimensional space in a {}-dimensional module",
                s.space.ambient_dim(),
                self.dim
            )));
        }
        if s.space.field() != self.field {
            return Err(Error::FieldMismatch(self.field, s.space.field()));
        }
        if !self.is_invariant(&s.space) {
            return Err(Error::NotInvariant);
        }
        Ok(())
    }
}

impl std::fmt::Debug for CommutingTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CommutingTuple({}, n={}, d={}, {:?})", self.field, self.nvars, self.dim, self.mats)
    }
}

/// A subspace of `k^d` stable under every matrix of a tuple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantSubmodule {
    space: Subspace,
}

impl InvariantSubmodule {
    pub fn new(t: &CommutingTuple, space: Subspace) -> Result<Self> {
        let s = InvariantSubmodule { space };
        t.check_submodule(&s)?;
        Ok(s)
    }

    pub(crate) fn new_unchecked(space: Subspace) -> Self {
        InvariantSubmodule { space }
    }

    pub fn zero(t: &CommutingTuple) -> Self {
        Self::new_unchecked(Subspace::zero(t.field, t.dim))
    }

    pub fn full(t: &CommutingTuple) -> Self {
        Self::new_unchecked(Subspace::full(t.field, t.dim))
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn parent_dim(&self) -> usize {
        self.space.ambient_dim()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// Smallest invariant subspace containing `vectors`, by breadth-first
/// application of the matrices.
pub fn generated_submodule(t: &CommutingTuple, vectors: &[Vector]) -> Result<InvariantSubmodule> {
    let mut echelon = TrackedEchelon::new(t.field);
    let mut accepted: Vec<Vector> = Vec::new();
    let mut queue: std::collections::VecDeque<Vector> = vectors.iter().cloned().collect();
    for v in vectors {
        if v.len() != t.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} in a {}-dimensional module",
                v.len(),
                t.dim
            )));
        }
        if let Some(bad) = v.iter().map(FieldElement::field).find(|f| *f != t.field) {
            return Err(Error::FieldMismatch(t.field, bad));
        }
    }
    while let Some(v) = queue.pop_front() {
        if echelon.insert(&v).is_some() {
            continue;
        }
        for m in &t.mats {
            queue.push_back(m.mul_vec(&v));
        }
        accepted.push(v);
    }
    Ok(InvariantSubmodule::new_unchecked(Subspace::span(t.field, t.dim, &accepted)?))
}

/// Coordinates of a submodule's basis vectors mapped back into the ambient
/// space of `outer`: `outer.basis` combined with each vector of `inner`.
pub(crate) fn embed(outer: &Subspace, inner: &Subspace) -> Result<Subspace> {
    let vectors: Vec<Vector> = inner.basis().iter().map(|c| outer.combine(c)).collect();
    Subspace::span(outer.field(), outer.ambient_dim(), &vectors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn j_zero() -> CommutingTuple {
        let f = f2();
        CommutingTuple::new(
            f,
            2,
            2,
            vec![Matrix::from_i64(f, &[&[0, 1], &[0, 0]]), Matrix::zeros(f, 2, 2)],
        )
        .unwrap()
    }

    fn unit(f: FieldSpec, d: usize, i: usize) -> Vector {
        let mut v = vec![f.zero(); d];
        v[i] = f.one();
        v
    }

    #[test]
    fn construction() {
        let f = f2();
        j_zero();
        let j = Matrix::from_i64(f, &[&[0, 1], &[0, 0]]);
        let k = Matrix::from_i64(f, &[&[0, 0], &[1, 0]]);
        assert_eq!(CommutingTuple::new(f, 2, 2, vec![j, k]), Err(Error::NonCommuting(0, 1)));
        let q = FieldSpec::rationals();
        let m = Matrix::from_i64(q, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert!(CommutingTuple::new(q, 1, 3, vec![m.clone()]).is_ok());
        assert!(matches!(
            CommutingTuple::new(q, 1, 2, vec![m]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn generated() {
        let t = j_zero();
        let f = f2();
        assert_eq!(generated_submodule(&t, &[unit(f, 2, 1)]).unwrap().dim(), 2);
        let s = generated_submodule(&t, &[unit(f, 2, 0)]).unwrap();
        assert_eq!(s.space().basis(), &[unit(f, 2, 0)]);
        assert!(generated_submodule(&t, &[]).unwrap().space().is_zero());
    }

    #[test]
    fn restrict_and_quotient() {
        let t = j_zero();
        let f = f2();
        let s = generated_submodule(&t, &[unit(f, 2, 0)]).unwrap();
        let zero = CommutingTuple::new(f, 2, 1, vec![Matrix::zeros(f, 1, 1); 2]).unwrap();
        assert_eq!(t.restrict(&s).unwrap(), zero);
        assert_eq!(t.quotient(&s).unwrap(), zero);
        assert_eq!(t.restrict(&InvariantSubmodule::full(&t)).unwrap(), t);
        assert_eq!(t.quotient(&InvariantSubmodule::zero(&t)).unwrap(), t);
        let bad = Subspace::span(f, 2, &[unit(f, 2, 1)]).unwrap();
        assert_eq!(InvariantSubmodule::new(&t, bad), Err(Error::NotInvariant));
    }

    #[test]
    fn quotient_of_jordan_block() {
        let q = FieldSpec::rationals();
        let j3 = Matrix::from_i64(q, &[&[2, 1, 0], &[0, 2, 1], &[0, 0, 2]]);
        let t = CommutingTuple::single(j3).unwrap();
        let s = generated_submodule(&t, &[unit(q, 3, 1)]).unwrap();
        assert_eq!(s.dim(), 2);
        let quo = t.quotient(&s).unwrap();
        assert_eq!(quo.mats()[0], Matrix::from_i64(q, &[&[2]]));
        let sub = t.restrict(&s).unwrap();
        assert_eq!(sub.mats()[0], Matrix::from_i64(q, &[&[2, 1], &[0, 2]]));
    }
}
