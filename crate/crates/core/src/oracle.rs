//! Brute-force ground truth over small prime fields, plus the random
//! generators used by tests and examples.
//!
//! Nothing here goes through primary decomposition: classes are computed
//! from a composition series found by enumerating every subspace.

use rand::Rng as _;

use crate::endo::{annihilator_ideal, CommutingTuple, Ideal, InvariantSubmodule, MaximalIdealKey};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::kzero::{k0_class, GrothendieckClass, TildeClass};
use crate::linalg::{eval_uni_at_matrix, Matrix, Subspace, Vector};
use crate::poly::{MultiPoly, UniPoly};
use crate::Rng;

/// Default cap on `p^dim` for exhaustive enumeration.
pub const DEFAULT_BOUND: u128 = 1 << 12;

fn modulus_within(field: FieldSpec, dim: usize, bound: u128) -> Result<u64> {
    let p = field
        .modulus()
        .ok_or_else(|| Error::Precondition("exhaustive enumeration needs a prime field".into()))?;
    let size = (p as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
    if size > bound {
        return Err(Error::BoundExceeded { size, bound });
    }
    Ok(p)
}

/// Every subspace of `F_p^dim`, each once, by reduced echelon shape: for
/// each pivot set, every filling of the free entries right of the pivots.
pub fn all_subspaces(field: FieldSpec, dim: usize, bound: u128) -> Result<Vec<Subspace>> {
    let p = modulus_within(field, dim, bound)?;
    let mut out = Vec::new();
    for mask in 0u32..(1 << dim) {
        let pivots: Vec<usize> = (0..dim).filter(|i| mask >> i & 1 == 1).collect();
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(r, &pc)| {
                let pivots = &pivots;
                (pc + 1..dim).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let count = (p as u128).pow(free.len() as u32);
        for index in 0..count {
            let mut rows: Vec<Vector> = pivots
                .iter()
                .map(|&pc| {
                    let mut v = vec![field.zero(); dim];
                    v[pc] = field.one();
                    v
                })
                .collect();
            let mut k = index;
            for &(r, c) in &free {
                rows[r][c] = field.from_u64((k % p as u128) as u64);
                k /= p as u128;
            }
            out.push(Subspace::span(field, dim, &rows)?);
        }
    }
    Ok(out)
}

/// All subspaces invariant under the tuple.
pub fn all_invariant_submodules(t: &CommutingTuple, bound: u128) -> Result<Vec<InvariantSubmodule>> {
    Ok(all_subspaces(t.field(), t.dim(), bound)?
        .into_iter()
        .filter(|s| t.is_invariant(s))
        .map(|s| InvariantSubmodule::new(t, s).expect("filtered"))
        .collect())
}

/// Simple subquotients of a composition series, found by repeatedly taking
/// a smallest nonzero invariant subspace and passing to the quotient. Each
/// factor is re-checked to have exactly two invariant subspaces.
pub fn composition_factors_bruteforce(t: &CommutingTuple, bound: u128) -> Result<Vec<CommutingTuple>> {
    modulus_within(t.field(), t.dim(), bound)?;
    let mut factors = Vec::new();
    let mut current = t.clone();
    while current.dim() > 0 {
        let minimal = all_invariant_submodules(&current, bound)?
            .into_iter()
            .filter(|s| s.dim() > 0)
            .min_by_key(InvariantSubmodule::dim)
            .expect("the whole space is invariant");
        let simple = current.restrict(&minimal)?;
        if all_invariant_submodules(&simple, bound)?.len() != 2 {
            return Err(Error::Internal("composition factor is not simple".into()));
        }
        factors.push(simple);
        current = current.quotient(&minimal)?;
    }
    Ok(factors)
}

/// `sum [Ann(S)]` over the composition factors `S`.
pub fn k0_class_oracle(t: &CommutingTuple, bound: u128) -> Result<GrothendieckClass> {
    let keys = composition_factors_bruteforce(t, bound)?
        .iter()
        .map(|s| Ok((MaximalIdealKey::from_ideal_unchecked(annihilator_ideal(s)?), 1)))
        .collect::<Result<Vec<_>>>()?;
    GrothendieckClass::from_entries(t.field(), t.nvars(), keys)
}

/// Both classes of `t` and whether they agree.
#[derive(Clone, Debug)]
pub struct OracleReport {
    pub fast: GrothendieckClass,
    pub oracle: GrothendieckClass,
}

impl OracleReport {
    pub fn agrees(&self) -> bool {
        self.fast == self.oracle
    }
}

pub fn oracle_check(t: &CommutingTuple, bound: u128) -> Result<OracleReport> {
    Ok(OracleReport { fast: k0_class(t)?, oracle: k0_class_oracle(t, bound)? })
}

/// Whether `k[T]/I` is a field, by checking that multiplication by every
/// nonzero element is invertible. Prime fields only.
pub fn quotient_is_field(ideal: &Ideal, bound: u128) -> Result<bool> {
    let field = ideal.field();
    let dim = ideal.quotient_dim();
    let p = modulus_within(field, dim, bound)?;
    if dim == 0 {
        return Ok(false);
    }
    let basis = ideal
        .standard_monomials()
        .iter()
        .map(|m| ideal.multiplication_matrix(&MultiPoly::term(field.one(), m.clone())))
        .collect::<Result<Vec<_>>>()?;
    let total = (p as u128).pow(dim as u32);
    for index in 1..total {
        let mut k = index;
        let mut acc = Matrix::zeros(field, dim, dim);
        for b in &basis {
            let c = field.from_u64((k % p as u128) as u64);
            k /= p as u128;
            if !c.is_zero() {
                acc = &acc + &b.scale(&c);
            }
        }
        if acc.rank() < dim {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every `dim x dim` matrix over `F_p` in a fixed order.
pub fn all_matrices(field: FieldSpec, dim: usize, bound: u128) -> Result<Vec<Matrix>> {
    let p = modulus_within(field, dim * dim, bound)? as u128;
    let total = p.pow((dim * dim) as u32);
    Ok((0..total)
        .map(|index| {
            let mut k = index;
            let rows = (0..dim)
                .map(|_| {
                    (0..dim)
                        .map(|_| {
                            let c = field.from_u64((k % p) as u64);
                            k /= p;
                            c
                        })
                        .collect()
                })
                .collect();
            Matrix::from_rows_unchecked(field, rows, dim)
        })
        .collect())
}

/// Uniform residue over `F_p`; an integer in `-3..=3` over `Q`.
pub fn random_scalar(field: FieldSpec, rng: &mut Rng) -> FieldElement {
    match field.modulus() {
        Some(p) => field.from_u64(rng.random_range(0..p)),
        None => field.from_i64(rng.random_range(-3..=3)),
    }
}

pub fn random_vector(field: FieldSpec, dim: usize, rng: &mut Rng) -> Vector {
    (0..dim).map(|_| random_scalar(field, rng)).collect()
}

pub fn random_matrix(field: FieldSpec, dim: usize, rng: &mut Rng) -> Matrix {
    let rows = (0..dim).map(|_| random_vector(field, dim, rng)).collect();
    Matrix::from_rows_unchecked(field, rows, dim)
}

/// Random polynomial of degree at most `max_degree` (possibly zero).
pub fn random_uni(field: FieldSpec, max_degree: usize, rng: &mut Rng) -> UniPoly {
    UniPoly::new(field, random_vector(field, max_degree + 1, rng)).expect("one field")
}

/// Random polynomial with constant term 1 and degree at most `max_degree`.
pub fn random_constant_one(field: FieldSpec, max_degree: usize, rng: &mut Rng) -> UniPoly {
    let mut coeffs = random_vector(field, max_degree + 1, rng);
    coeffs[0] = field.one();
    UniPoly::new(field, coeffs).expect("one field")
}

pub fn random_tilde(field: FieldSpec, max_degree: usize, rng: &mut Rng) -> TildeClass {
    let num = random_constant_one(field, max_degree, rng);
    let den = random_constant_one(field, max_degree, rng);
    TildeClass::new(num, den).expect("constant terms are 1")
}

/// A matrix with some structure: random, nilpotent upper triangular, or a
/// companion matrix of a random monic polynomial (often a prime power).
pub fn random_structured_matrix(field: FieldSpec, dim: usize, rng: &mut Rng) -> Matrix {
    match rng.random_range(0..4) {
        0 if dim > 0 => {
            let mut m = Matrix::zeros(field, dim, dim);
            for i in 0..dim {
                for j in i + 1..dim {
                    m.set(i, j, random_scalar(field, rng));
                }
            }
            m
        }
        1 if dim > 0 => {
            let base = random_uni(field, 2, rng);
            let mut q = UniPoly::x(field);
            if let Some(d) = base.degree().filter(|&d| d > 0 && dim % d == 0) {
                q = base.monic().pow((dim / d) as u64);
            }
            while q.degree().unwrap_or(0) < dim {
                q = &q * &(&UniPoly::x(field) - &UniPoly::constant(random_scalar(field, rng)));
            }
            Matrix::companion(&q).expect("monic")
        }
        _ => random_matrix(field, dim, rng),
    }
}

/// `(g_1(A), ..., g_n(A))` for one random matrix `A` and random `g_i` of
/// degree below `dim`, so the tuple commutes by construction. With
/// probability one half the tuple is instead a direct sum of two such.
pub fn random_commuting_tuple(field: FieldSpec, nvars: usize, dim: usize, rng: &mut Rng) -> CommutingTuple {
    if dim >= 2 && rng.random_bool(0.5) {
        let d1 = rng.random_range(1..dim);
        let a = polynomial_tuple(field, nvars, d1, rng);
        let b = polynomial_tuple(field, nvars, dim - d1, rng);
        return a.block_diag(&b).expect("same shape");
    }
    polynomial_tuple(field, nvars, dim, rng)
}

fn polynomial_tuple(field: FieldSpec, nvars: usize, dim: usize, rng: &mut Rng) -> CommutingTuple {
    let a = random_structured_matrix(field, dim, rng);
    let mats = (0..nvars)
        .map(|i| {
            if i == 0 && rng.random_bool(0.5) {
                return a.clone();
            }
            let g = random_uni(field, dim.saturating_sub(1).min(3), rng);
            eval_uni_at_matrix(&g, &a).expect("square")
        })
        .collect();
    CommutingTuple::new(field, nvars, dim, mats).expect("polynomials in one matrix commute")
}
