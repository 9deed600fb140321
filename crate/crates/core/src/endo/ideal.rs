use std::collections::BTreeMap;

use crate::endo::CommutingTuple;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::{Matrix, TrackedEchelon};
use crate::poly::{Monomial, MultiPoly};

/// A zero-dimensional ideal of `k[t1..tn]` given by its reduced Groebner
/// basis in graded-lex order, together with the standard monomials.
///
/// Generators are monic and sorted by decreasing leading monomial; standard
/// monomials increase. Two ideals are equal iff these lists are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    field: FieldSpec,
    nvars: usize,
    gens: Vec<MultiPoly>,
    standard: Vec<Monomial>,
}

impl Ideal {
    /// Wraps a reduced Groebner basis. Checks monic generators with pairwise
    /// non-dividing leading monomials, reduced tails, and a finite standard
    /// set.
    pub fn from_reduced_basis(field: FieldSpec, nvars: usize, mut gens: Vec<MultiPoly>) -> Result<Self> {
        for g in &gens {
            if g.field() != field {
                return Err(Error::FieldMismatch(field, g.field()));
            }
            if g.nvars() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: g.nvars() });
            }
            if g.is_zero() {
                return Err(Error::ZeroPolynomial("ideal generator"));
            }
        }
        gens.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
        let leads: Vec<Monomial> = gens.iter().map(|g| g.leading_monomial().unwrap().clone()).collect();
        for (i, g) in gens.iter().enumerate() {
            if !g.leading_term().unwrap().1.is_one() {
                return Err(Error::Precondition(format!("generator `{g}` is not monic")));
            }
            for (m, _) in g.terms() {
                let hit = leads.iter().enumerate().any(|(j, l)| {
                    l.divides(m) && (j != i || m != &leads[i])
                });
                if hit {
                    return Err(Error::Precondition(format!("generator `{g}` is not reduced")));
                }
            }
        }
        let standard = standard_monomials(nvars, &leads)?;
        Ok(Ideal { field, nvars, gens, standard })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    /// `dim_k k[T]/I`.
    pub fn quotient_dim(&self) -> usize {
        self.standard.len()
    }

    pub fn is_unit(&self) -> bool {
        self.standard.is_empty()
    }

    pub fn normal_form(&self, p: &MultiPoly) -> Result<MultiPoly> {
        p.normal_form(&self.gens)
    }

    pub fn contains(&self, p: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    /// Coordinates of `normal_form(p)` in the standard monomials.
    pub fn coordinates(&self, p: &MultiPoly) -> Result<Vec<crate::FieldElement>> {
        let nf = self.normal_form(p)?;
        Ok(self.standard.iter().map(|m| nf.coeff(m)).collect())
    }

    /// Matrix of multiplication by `p` on `k[T]/I` in the standard basis.
    pub fn multiplication_matrix(&self, p: &MultiPoly) -> Result<Matrix> {
        let cols = self
            .standard
            .iter()
            .map(|m| {
                let one = self.field.one();
                self.coordinates(&p.mul_term(&one, m))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(self.field, self.standard.len(), &cols))
    }

    /// Generators as canonical text.
    pub fn rendered_gens(&self) -> Vec<String> {
        self.gens.iter().map(MultiPoly::render).collect()
    }

    /// `g1, g2, ...`.
    pub fn render(&self) -> String {
        self.rendered_gens().join(", ")
    }
}

impl std::fmt::Display for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.render())
    }
}

/// Monomials outside the monomial ideal generated by `leads`, increasing.
fn standard_monomials(nvars: usize, leads: &[Monomial]) -> Result<Vec<Monomial>> {
    for i in 0..nvars {
        let pure = leads.iter().any(|l| {
            l.exponents().iter().enumerate().all(|(j, &e)| j == i || e == 0)
        });
        if !pure {
            return Err(Error::Precondition(format!(
                "ideal is not zero-dimensional: no pure power of variable {} is a leading monomial",
                i + 1
            )));
        }
    }
    let mut out = Vec::new();
    let mut frontier = vec![Monomial::one(nvars)];
    while !frontier.is_empty() {
        let mut next = std::collections::BTreeSet::new();
        for m in frontier {
            if leads.iter().any(|l| l.divides(&m)) {
                continue;
            }
            for i in 0..nvars {
                next.insert(m.mul_var(i));
            }
            out.push(m);
        }
        frontier = next.into_iter().collect();
    }
    out.sort();
    Ok(out)
}

/// The annihilator ideal together with the matrix of each standard monomial.
pub(crate) fn annihilator_with_basis(t: &CommutingTuple) -> Result<(Ideal, Vec<Matrix>)> {
    let field = t.field();
    let n = t.nvars();
    let d = t.dim();
    let mut echelon = TrackedEchelon::new(field);
    let mut standard: Vec<Monomial> = Vec::new();
    let mut std_mats: Vec<Matrix> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut gens: Vec<MultiPoly> = Vec::new();
    let mut queue: BTreeMap<Monomial, Matrix> = BTreeMap::new();
    queue.insert(Monomial::one(n), Matrix::identity(field, d));
    while let Some((m, mat)) = queue.pop_first() {
        if leads.iter().any(|l| l.divides(&m)) {
            continue;
        }
        match echelon.insert(mat.entries()) {
            Some(comb) => {
                // m = sum comb_j s_j with every s_j < m in the order.
                let mut g = MultiPoly::term(field.one(), m.clone());
                for (c, s) in comb.iter().zip(&standard) {
                    if !c.is_zero() {
                        g = &g - &MultiPoly::term(c.clone(), s.clone());
                    }
                }
                leads.push(m);
                gens.push(g);
            }
            None => {
                for (i, f) in t.mats().iter().enumerate() {
                    let next = m.mul_var(i);
                    if !queue.contains_key(&next) {
                        queue.insert(next, f * &mat);
                    }
                }
                standard.push(m);
                std_mats.push(mat);
            }
        }
    }
    gens.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    Ok((Ideal { field, nvars: n, gens, standard }, std_mats))
}

/// Kernel of `k[t1..tn] -> k[f1..fn]`, by a breadth-first search over
/// monomials in increasing order: a monomial whose matrix is independent of
/// the earlier standard ones becomes standard, a dependent one yields a
/// Groebner generator. The zero module gives the unit ideal.
pub fn annihilator_ideal(t: &CommutingTuple) -> Result<Ideal> {
    Ok(annihilator_with_basis(t)?.0)
}
