//! Radical, radical filtration and the decomposition of a module into local
//! pieces, one for each maximal ideal in its support.
//!
//! A piece on which every `f_i` has a prime-power minimal polynomial need not
//! be local once `n >= 2`: on `Q[t1, t2]/(t1^2 - 2, t2^2 - 2)` both variables
//! have minimal polynomial `t^2 - 2`, yet the algebra is `Q(sqrt 2)^2`. So a
//! piece is accepted only after its semisimple quotient algebra `B` is shown
//! to be a field. Over `F_p` the fixed space of Frobenius on `B` (Berlekamp)
//! has dimension equal to the number of simple factors; over `Q` a linear
//! combination of the generators with `deg minpoly = dim B` is a primitive
//! element, and `B` is a field iff that minimal polynomial is irreducible.
//! Whenever `B` is not a field the same computation produces an element whose
//! minimal polynomial has two coprime factors, which splits the piece.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::endo::ideal::annihilator_with_basis;
use crate::endo::{embed, CommutingTuple, Ideal, InvariantSubmodule};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{eval_poly_at_matrix, eval_uni_at_matrix, Matrix, Subspace, TrackedEchelon};
use crate::poly::{factor_univariate, parse_multi, Monomial, MultiPoly, UniPoly};

/// `Jac(R) V` for `R = k[f1..fn]`, computed as the sum of the images of
/// `s_i(f_i)` where `s_i` is the squarefree part of the minimal polynomial of
/// `f_i`. Over a perfect field these elements generate the Jacobson radical
/// (Seidenberg).
pub fn radical_submodule(t: &CommutingTuple) -> Result<InvariantSubmodule> {
    let mut acc = Subspace::zero(t.field(), t.dim());
    if t.dim() == 0 {
        return Ok(InvariantSubmodule::new_unchecked(acc));
    }
    for f in t.mats() {
        let s = f.minimal_polynomial()?.squarefree_part()?;
        acc = acc.sum(&eval_uni_at_matrix(&s, f)?.image())?;
    }
    Ok(InvariantSubmodule::new_unchecked(acc))
}

/// Semisimple layers `rad^j V / rad^(j+1) V`, top first. Empty for the zero
/// module.
pub fn radical_filtration(t: &CommutingTuple) -> Result<Vec<CommutingTuple>> {
    let mut layers = Vec::new();
    let mut current = t.clone();
    while current.dim() > 0 {
        let rad = radical_submodule(&current)?;
        layers.push(current.quotient(&rad)?);
        current = current.restrict(&rad)?;
    }
    Ok(layers)
}

/// A maximal ideal of `k[t1..tn]`, keyed by its reduced Groebner basis.
///
/// Keys order by residue degree, then by the rendered generator list.
#[derive(Clone, Debug)]
pub struct MaximalIdealKey {
    ideal: Ideal,
    residue_degree: usize,
    rendered: Vec<String>,
}

impl MaximalIdealKey {
    /// Trusts the caller that `k[T]/ideal` is a field.
    pub(crate) fn from_ideal_unchecked(ideal: Ideal) -> Self {
        let residue_degree = ideal.quotient_dim();
        let rendered = ideal.rendered_gens();
        MaximalIdealKey { ideal, residue_degree, rendered }
    }

    /// The one-variable key `(q)` for a monic irreducible `q`.
    pub fn from_irreducible(q: &UniPoly) -> Result<Self> {
        let fac = factor_univariate(q)?;
        if !q.is_monic() || fac.factors.len() != 1 || fac.factors[0].1 != 1 {
            return Err(Error::Precondition(format!("`{q}` is not monic irreducible")));
        }
        let ideal = Ideal::from_reduced_basis(q.field(), 1, vec![MultiPoly::from_uni(q)])?;
        Ok(Self::from_ideal_unchecked(ideal))
    }

    /// `(q)` for a `q` already known to be monic irreducible.
    pub(crate) fn principal_unchecked(q: &UniPoly) -> Result<Self> {
        let ideal = Ideal::from_reduced_basis(q.field(), 1, vec![MultiPoly::from_uni(q)])?;
        Ok(Self::from_ideal_unchecked(ideal))
    }

    /// Rebuilds a key from rendered generators. The generators must form a
    /// reduced Groebner basis; maximality is not re-checked.
    pub fn parse(field: FieldSpec, nvars: usize, gens: &[String]) -> Result<Self> {
        let polys = gens
            .iter()
            .map(|g| parse_multi(g, field, nvars))
            .collect::<Result<Vec<_>>>()?;
        let ideal = Ideal::from_reduced_basis(field, nvars, polys)?;
        if ideal.is_unit() {
            return Err(Error::Precondition("the unit ideal is not maximal".into()));
        }
        Ok(Self::from_ideal_unchecked(ideal))
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// `dim_k k[T]/M`.
    pub fn residue_degree(&self) -> usize {
        self.residue_degree
    }

    pub fn generators(&self) -> &[String] {
        &self.rendered
    }

    pub fn field(&self) -> FieldSpec {
        self.ideal.field()
    }

    pub fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    /// The monic generator of a one-variable key.
    pub fn univariate_generator(&self) -> Option<UniPoly> {
        match self.ideal.gens() {
            [g] if self.nvars() == 1 => g.to_uni().ok(),
            _ => None,
        }
    }

    /// `(t)` in one variable, i.e. `(t1, ..., tn)`.
    pub fn is_origin(&self) -> bool {
        self.residue_degree == 1
            && self.ideal.gens().iter().all(|g| {
                g.terms().count() == 1 && g.leading_monomial().is_some_and(|m| m.degree() == 1)
            })
    }

    /// `g1, g2, ...`.
    pub fn render(&self) -> String {
        self.rendered.join(", ")
    }
}

impl PartialEq for MaximalIdealKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for MaximalIdealKey {}

impl Hash for MaximalIdealKey {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field().hash(state);
        self.nvars().hash(state);
        self.rendered.hash(state);
    }
}

impl PartialOrd for MaximalIdealKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MaximalIdealKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.residue_degree
            .cmp(&other.residue_degree)
            .then_with(|| self.rendered.cmp(&other.rendered))
            .then_with(|| self.field().cmp(&other.field()))
            .then_with(|| self.nvars().cmp(&other.nvars()))
    }
}

impl std::fmt::Display for MaximalIdealKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.render())
    }
}

/// One summand of a primary decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalPiece {
    /// The summand as a subspace of the original module.
    pub submodule: InvariantSubmodule,
    /// The action restricted to it.
    pub tuple: CommutingTuple,
    pub key: MaximalIdealKey,
}

impl LocalPiece {
    /// Composition length: every simple factor has dimension
    /// `key.residue_degree()`.
    pub fn length(&self) -> usize {
        self.submodule.dim() / self.key.residue_degree()
    }
}

enum Analysis {
    Local(MaximalIdealKey),
    /// Nonzero invariant subspaces of the piece, in its own coordinates,
    /// forming a direct sum decomposition into at least two parts.
    Split(Vec<Subspace>),
}

/// `V = sum W_j` with each `W_j` supported at a single maximal ideal, sorted
/// by key. Empty for the zero module.
pub fn primary_decomposition(t: &CommutingTuple) -> Result<Vec<LocalPiece>> {
    let mut pieces = Vec::new();
    if t.dim() == 0 {
        return Ok(pieces);
    }
    let mut work = vec![Subspace::full(t.field(), t.dim())];
    while let Some(w) = work.pop() {
        let submodule = InvariantSubmodule::new_unchecked(w);
        let tuple = t.restrict(&submodule)?;
        match analyze(&tuple)? {
            Analysis::Local(key) => pieces.push(LocalPiece { submodule, tuple, key }),
            Analysis::Split(parts) => {
                for p in parts {
                    work.push(embed(submodule.space(), &p)?);
                }
            }
        }
    }
    pieces.sort_by(|a, b| a.key.cmp(&b.key));
    if pieces.windows(2).any(|w| w[0].key == w[1].key) {
        return Err(Error::Internal("two primary pieces share a maximal ideal".into()));
    }
    Ok(pieces)
}

/// The maximal ideal a local module is supported at: the annihilator of its
/// semisimple quotient `V / Jac V`.
pub fn maximal_ideal_key(t: &CommutingTuple) -> Result<MaximalIdealKey> {
    if t.dim() == 0 {
        return Err(Error::Precondition("the zero module has no maximal ideal".into()));
    }
    match analyze(t)? {
        Analysis::Local(key) => Ok(key),
        Analysis::Split(parts) => Err(Error::NotLocal(format!(
            "module splits into pieces of dimensions {:?}",
            parts.iter().map(Subspace::dim).collect::<Vec<_>>()
        ))),
    }
}

fn analyze(t: &CommutingTuple) -> Result<Analysis> {
    for f in t.mats() {
        if let Some(parts) = split_by_matrix(f)? {
            return Ok(Analysis::Split(parts));
        }
    }
    let top = t.quotient(&radical_submodule(t)?)?;
    let (ideal, basis) = annihilator_with_basis(&top)?;
    if t.nvars() > 1 && ideal.quotient_dim() > 1 {
        if let Some(g) = splitting_element(&top, &ideal, &basis)? {
            let x = eval_poly_at_matrix(&g, t.mats())?;
            return match split_by_matrix(&x)? {
                Some(parts) => Ok(Analysis::Split(parts)),
                None => Err(Error::Internal(format!("splitting element `{g}` did not split"))),
            };
        }
    }
    if top.dim() % ideal.quotient_dim() != 0 {
        return Err(Error::Internal(format!(
            "semisimple dimension {} is not a multiple of the residue degree {}",
            top.dim(),
            ideal.quotient_dim()
        )));
    }
    Ok(Analysis::Local(MaximalIdealKey::from_ideal_unchecked(ideal)))
}

/// Generalized eigenspaces `ker q(x)^e` for the prime-power factors of the
/// minimal polynomial of `x`, or `None` if there is only one.
fn split_by_matrix(x: &Matrix) -> Result<Option<Vec<Subspace>>> {
    let fac = factor_univariate(&x.minimal_polynomial()?)?;
    if fac.factors.len() < 2 {
        return Ok(None);
    }
    fac.factors
        .iter()
        .map(|(q, e)| Ok(eval_uni_at_matrix(&q.pow(*e as u64), x)?.kernel_basis()))
        .collect::<Result<Vec<_>>>()
        .map(Some)
}

/// For a semisimple tuple whose algebra `B` has standard monomials `ideal`
/// and matrices `basis`: `None` if `B` is a field, otherwise a polynomial
/// whose value on the tuple has a reducible minimal polynomial.
fn splitting_element(top: &CommutingTuple, ideal: &Ideal, basis: &[Matrix]) -> Result<Option<MultiPoly>> {
    let field = top.field();
    let n = top.nvars();
    let dim_b = ideal.quotient_dim();
    match field.modulus() {
        Some(p) => {
            let mut echelon = TrackedEchelon::new(field);
            for m in basis {
                echelon.insert(m.entries());
            }
            let mut cols = Vec::with_capacity(dim_b);
            for (j, m) in basis.iter().enumerate() {
                let mut c = echelon
                    .express(m.pow(p)?.entries())
                    .ok_or_else(|| Error::Internal("Frobenius left the algebra".into()))?;
                c[j] = &c[j] - &field.one();
                cols.push(c);
            }
            let kernel = Matrix::from_columns(field, dim_b, &cols).kernel_basis();
            if kernel.dim() == 1 {
                return Ok(None);
            }
            // index 0 is the monomial 1; any kernel vector off that axis
            let v = kernel
                .basis()
                .iter()
                .find(|v| v.iter().skip(1).any(|x| !x.is_zero()))
                .ok_or_else(|| Error::Internal("Berlekamp kernel is scalar".into()))?;
            let mut g = MultiPoly::zero(field, n);
            for (c, s) in v.iter().zip(ideal.standard_monomials()) {
                if !c.is_zero() {
                    g = &g + &MultiPoly::term(c.clone(), s.clone());
                }
            }
            Ok(Some(g))
        }
        None => {
            let limit = n * dim_b * dim_b + 2;
            for k in 1..=limit as i64 {
                let mut g = MultiPoly::zero(field, n);
                let mut c = field.one();
                for i in 0..n {
                    g = &g + &MultiPoly::term(c.clone(), Monomial::var(n, i));
                    c = &c * &field.from_i64(k);
                }
                let x = eval_poly_at_matrix(&g, top.mats())?;
                let mp = x.minimal_polynomial()?;
                if factor_univariate(&mp)?.factors.len() >= 2 {
                    return Ok(Some(g));
                }
                if mp.degree() == Some(dim_b) {
                    return Ok(None);
                }
            }
            Err(Error::Internal("no primitive element found".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::annihilator_ideal;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn dims(pieces: &[LocalPiece]) -> Vec<usize> {
        pieces.iter().map(|p| p.submodule.dim()).collect()
    }

    fn assert_direct_sum(t: &CommutingTuple, pieces: &[LocalPiece]) {
        let mut all = Subspace::zero(t.field(), t.dim());
        for p in pieces {
            all = all.sum(p.submodule.space()).unwrap();
            assert_eq!(t.restrict(&p.submodule).unwrap(), p.tuple);
        }
        assert_eq!(all.dim(), t.dim());
        assert_eq!(dims(pieces).iter().sum::<usize>(), t.dim());
    }

    #[test]
    fn radical_examples() {
        let j = Matrix::from_i64(q(), &[&[0, 1], &[0, 0]]);
        let t = CommutingTuple::single(j).unwrap();
        let r = radical_submodule(&t).unwrap();
        assert_eq!(r.space().basis(), &[vec![q().one(), q().zero()]]);
        let d = CommutingTuple::single(Matrix::from_i64(q(), &[&[0, 0], &[0, 1]])).unwrap();
        assert!(radical_submodule(&d).unwrap().space().is_zero());
        let i = CommutingTuple::single(Matrix::identity(q(), 2)).unwrap();
        assert!(radical_submodule(&i).unwrap().space().is_zero());
    }

    #[test]
    fn filtration_examples() {
        let j3 = Matrix::from_i64(q(), &[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let layers = radical_filtration(&CommutingTuple::single(j3).unwrap()).unwrap();
        assert_eq!(layers.iter().map(CommutingTuple::dim).collect::<Vec<_>>(), [1, 1, 1]);
        let d = CommutingTuple::single(Matrix::from_i64(q(), &[&[0, 0], &[0, 1]])).unwrap();
        assert_eq!(radical_filtration(&d).unwrap(), vec![d]);
        assert!(radical_filtration(&CommutingTuple::zero(q(), 1)).unwrap().is_empty());
    }

    #[test]
    fn decomposition_examples() {
        let d = CommutingTuple::single(Matrix::from_i64(q(), &[&[0, 0], &[0, 1]])).unwrap();
        let pieces = primary_decomposition(&d).unwrap();
        assert_eq!(dims(&pieces), [1, 1]);
        assert_eq!(pieces[0].key.render(), "t");
        assert_eq!(pieces[1].key.render(), "t - 1");
        assert_direct_sum(&d, &pieces);

        let j = CommutingTuple::single(Matrix::from_i64(q(), &[&[0, 1], &[0, 0]])).unwrap();
        let pieces = primary_decomposition(&j).unwrap();
        assert_eq!(dims(&pieces), [2]);
        assert_eq!(pieces[0].length(), 2);

        let f3 = FieldSpec::prime(3).unwrap();
        let c = Matrix::companion(&UniPoly::from_i64s(f3, &[1, 0, 1])).unwrap();
        let m = Matrix::block_diag(f3, &[&c, &Matrix::identity(f3, 1)]).unwrap();
        let t = CommutingTuple::single(m).unwrap();
        let pieces = primary_decomposition(&t).unwrap();
        assert_eq!(dims(&pieces), [1, 2]);
        assert_eq!(pieces[0].key.render(), "t + 2");
        assert_eq!(pieces[1].key.render(), "t^2 + 1");
        assert_direct_sum(&t, &pieces);
    }

    #[test]
    fn key_examples() {
        let j = Matrix::from_i64(q(), &[&[0, 1], &[0, 0]]);
        let key = maximal_ideal_key(&CommutingTuple::single(j).unwrap()).unwrap();
        assert_eq!((key.render(), key.residue_degree()), ("t".to_string(), 1));
        assert!(key.is_origin());

        let f2 = FieldSpec::prime(2).unwrap();
        let j = Matrix::from_i64(f2, &[&[0, 1], &[0, 0]]);
        let t = CommutingTuple::new(f2, 2, 2, vec![j, Matrix::zeros(f2, 2, 2)]).unwrap();
        let key = maximal_ideal_key(&t).unwrap();
        assert_eq!((key.render(), key.residue_degree()), ("t1, t2".to_string(), 1));
        assert!(key.is_origin());

        let f3 = FieldSpec::prime(3).unwrap();
        let c = Matrix::companion(&UniPoly::from_i64s(f3, &[1, 0, 1])).unwrap();
        let key = maximal_ideal_key(&CommutingTuple::single(c).unwrap()).unwrap();
        assert_eq!((key.render(), key.residue_degree()), ("t^2 + 1".to_string(), 2));
        assert!(!key.is_origin());

        let d = CommutingTuple::single(Matrix::from_i64(q(), &[&[0, 0], &[0, 1]])).unwrap();
        assert!(matches!(maximal_ideal_key(&d), Err(Error::NotLocal(_))));
        assert!(maximal_ideal_key(&CommutingTuple::zero(q(), 1)).is_err());
    }

    /// `k[t1, t2]/(t1^2 - a, t2^2 - a)` as multiplication operators on the
    /// tensor square of `k[t]/(t^2 - a)`.
    fn tensor_square(field: FieldSpec, q: &UniPoly) -> CommutingTuple {
        let c = Matrix::companion(q).unwrap();
        let i = Matrix::identity(field, c.rows());
        let d = c.rows() * c.rows();
        CommutingTuple::new(field, 2, d, vec![c.kronecker(&i).unwrap(), i.kronecker(&c).unwrap()])
            .unwrap()
    }

    #[test]
    fn per_variable_locality_is_not_enough_over_q() {
        let t = tensor_square(q(), &UniPoly::from_i64s(q(), &[-2, 0, 1]));
        assert!(matches!(maximal_ideal_key(&t), Err(Error::NotLocal(_))));
        let pieces = primary_decomposition(&t).unwrap();
        assert_eq!(dims(&pieces), [2, 2]);
        assert_direct_sum(&t, &pieces);
        let keys: Vec<String> = pieces.iter().map(|p| p.key.render()).collect();
        assert_eq!(keys, ["t2^2 - 2, t1 + t2", "t2^2 - 2, t1 - t2"]);
        for p in &pieces {
            assert_eq!(p.key.residue_degree(), 2);
            assert_eq!(annihilator_ideal(&p.tuple).unwrap(), *p.key.ideal());
        }
    }

    #[test]
    fn per_variable_locality_is_not_enough_over_f3() {
        let f3 = FieldSpec::prime(3).unwrap();
        let t = tensor_square(f3, &UniPoly::from_i64s(f3, &[1, 0, 1]));
        let pieces = primary_decomposition(&t).unwrap();
        assert_eq!(dims(&pieces), [2, 2]);
        assert_direct_sum(&t, &pieces);
        let keys: Vec<String> = pieces.iter().map(|p| p.key.render()).collect();
        assert_eq!(keys, ["t2^2 + 1, t1 + 2*t2", "t2^2 + 1, t1 + t2"]);
    }

    #[test]
    fn genuinely_local_two_variable_field() {
        // Q(sqrt 2, sqrt 3) = Q[t1, t2]/(t1^2 - 2, t2^2 - 3) is a field
        let a = Matrix::companion(&UniPoly::from_i64s(q(), &[-2, 0, 1])).unwrap();
        let b = Matrix::companion(&UniPoly::from_i64s(q(), &[-3, 0, 1])).unwrap();
        let i = Matrix::identity(q(), 2);
        let t = CommutingTuple::new(q(), 2, 4, vec![a.kronecker(&i).unwrap(), i.kronecker(&b).unwrap()])
            .unwrap();
        let key = maximal_ideal_key(&t).unwrap();
        assert_eq!(key.residue_degree(), 4);
        assert_eq!(key.render(), "t1^2 - 2, t2^2 - 3");
    }

    #[test]
    fn key_parse_round_trip() {
        let f3 = FieldSpec::prime(3).unwrap();
        let t = tensor_square(f3, &UniPoly::from_i64s(f3, &[1, 0, 1]));
        for p in primary_decomposition(&t).unwrap() {
            let again = MaximalIdealKey::parse(f3, 2, p.key.generators()).unwrap();
            assert_eq!(again, p.key);
            assert_eq!(again.residue_degree(), 2);
        }
        let k = MaximalIdealKey::from_irreducible(&UniPoly::from_i64s(q(), &[1, 1])).unwrap();
        assert_eq!(k.render(), "t + 1");
        assert!(MaximalIdealKey::from_irreducible(&UniPoly::from_i64s(q(), &[0, 0, 1])).is_err());
    }
}
