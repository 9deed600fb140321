//! Grothendieck classes, `lambda_t`, the one-variable splitting
//! `Z x A0~` and the free-abelian description of `A0~`.

use std::collections::BTreeMap;
use std::fmt;

use crate::endo::{primary_decomposition, CommutingTuple, InvariantSubmodule, MaximalIdealKey};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::linalg::Matrix;
use crate::poly::{factor_univariate, signed_reversal, signed_reversal_inverse, UniPoly};

/// A finitely supported integer combination of maximal ideals of
/// `k[t1..tn]`. Zero multiplicities are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrothendieckClass {
    field: FieldSpec,
    nvars: usize,
    support: BTreeMap<MaximalIdealKey, i64>,
}

impl GrothendieckClass {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        GrothendieckClass { field, nvars, support: BTreeMap::new() }
    }

    /// Sums repeated keys and drops zero totals.
    pub fn from_entries(
        field: FieldSpec,
        nvars: usize,
        entries: impl IntoIterator<Item = (MaximalIdealKey, i64)>,
    ) -> Result<Self> {
        let mut c = Self::zero(field, nvars);
        for (key, m) in entries {
            if key.field() != field {
                return Err(Error::FieldMismatch(field, key.field()));
            }
            if key.nvars() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: key.nvars() });
            }
            c.add_entry(key, m);
        }
        Ok(c)
    }

    fn add_entry(&mut self, key: MaximalIdealKey, m: i64) {
        let slot = self.support.entry(key).or_insert(0);
        *slot += m;
        if *slot == 0 {
            self.support.retain(|_, v| *v != 0);
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Entries in key order.
    pub fn support(&self) -> impl Iterator<Item = (&MaximalIdealKey, i64)> {
        self.support.iter().map(|(k, v)| (k, *v))
    }

    pub fn multiplicity(&self, key: &MaximalIdealKey) -> i64 {
        self.support.get(key).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    /// All multiplicities positive, as for the class of a module.
    pub fn is_effective(&self) -> bool {
        self.support.values().all(|&m| m > 0)
    }

    /// `sum mult(M) * dim k[T]/M`: the dimension of any module in the class.
    pub fn rank(&self) -> i64 {
        self.support.iter().map(|(k, m)| m * k.residue_degree() as i64).sum()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch { expected: self.nvars, found: other.nvars });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, m) in other.support() {
            out.add_entry(k.clone(), m);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let support = self.support.iter().map(|(k, m)| (k.clone(), -m)).collect();
        GrothendieckClass { field: self.field, nvars: self.nvars, support }
    }

    /// One `mult * [generators]` line per key, in key order; `0` when empty.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.support
            .iter()
            .map(|(k, m)| format!("{m} * {k}"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

impl fmt::Display for GrothendieckClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `[V]`: each local piece contributes its composition length at its key.
pub fn k0_class(t: &CommutingTuple) -> Result<GrothendieckClass> {
    let mut class = GrothendieckClass::zero(t.field(), t.nvars());
    for piece in primary_decomposition(t)? {
        let (d, r) = (piece.submodule.dim(), piece.key.residue_degree());
        if d % r != 0 {
            return Err(Error::Internal(format!(
                "piece of dimension {d} at a key of residue degree {r}"
            )));
        }
        class.add_entry(piece.key, (d / r) as i64);
    }
    if class.rank() != t.dim() as i64 {
        return Err(Error::Internal("class rank differs from the dimension".into()));
    }
    Ok(class)
}

/// `[V] = [S] + [V/S]` for an invariant subspace `S`.
pub fn verify_additivity(t: &CommutingTuple, s: &InvariantSubmodule) -> Result<bool> {
    let whole = k0_class(t)?;
    let parts = k0_class(&t.restrict(s)?)?.checked_add(&k0_class(&t.quotient(s)?)?)?;
    Ok(whole == parts)
}

/// `det(1 + t f)`, the signed reversal of the characteristic polynomial.
pub fn lambda_t(f: &Matrix) -> Result<UniPoly> {
    signed_reversal(&f.charpoly()?)
}

/// A rational function `num / den` with `num(0) = den(0) = 1` and coprime
/// numerator and denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TildeClass {
    num: UniPoly,
    den: UniPoly,
}

impl TildeClass {
    /// Reduces `num / den`; both must have constant term 1.
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if num.field() != den.field() {
            return Err(Error::FieldMismatch(num.field(), den.field()));
        }
        for p in [&num, &den] {
            if !p.coeff(0).is_one() {
                return Err(Error::Precondition(format!("`{p}` does not have constant term 1")));
            }
        }
        let g = num.gcd(&den)?;
        let (num, den) = (num.exact_div(&g)?, den.exact_div(&g)?);
        // g(0) != 0, so both quotients have constant term 1 / g(0)
        let c = g.coeff(0);
        Ok(TildeClass { num: num.scale(&c), den: den.scale(&c) })
    }

    pub fn one(field: FieldSpec) -> Self {
        TildeClass { num: UniPoly::one(field), den: UniPoly::one(field) }
    }

    pub fn from_poly(p: UniPoly) -> Result<Self> {
        let field = p.field();
        Self::new(p, UniPoly::one(field))
    }

    pub fn field(&self) -> FieldSpec {
        self.num.field()
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        Self::new(self.num.checked_mul(&other.num)?, self.den.checked_mul(&other.den)?)
    }

    pub fn inv(&self) -> Self {
        TildeClass { num: self.den.clone(), den: self.num.clone() }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let k = e.unsigned_abs();
        TildeClass { num: base.num.pow(k), den: base.den.pow(k) }
    }

    /// `num`, or `num // den` when the denominator is not 1.
    pub fn render(&self) -> String {
        if self.den.is_one() {
            self.num.render("t")
        } else {
            format!("{} // {}", self.num.render("t"), self.den.render("t"))
        }
    }
}

impl fmt::Display for TildeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn require_one_variable(t: &CommutingTuple) -> Result<()> {
    if t.nvars() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: t.nvars() });
    }
    Ok(())
}

/// `[M -> M] |-> (dim M, lambda_t(f))` for a one-variable tuple.
pub fn kelley_spanier_split(t: &CommutingTuple) -> Result<(i64, TildeClass)> {
    require_one_variable(t)?;
    Ok((t.dim() as i64, TildeClass::from_poly(lambda_t(&t.mats()[0])?)?))
}

/// Exponents of the irreducible factors of `num` and `den`, each factor
/// indexed by the monic `q` whose signed reversal it is.
pub fn tilde_to_free_abelian(a: &TildeClass) -> Result<GrothendieckClass> {
    let field = a.field();
    let mut class = GrothendieckClass::zero(field, 1);
    for (p, sign) in [(&a.num, 1), (&a.den, -1)] {
        if p.is_one() {
            continue;
        }
        for (q, e) in factor_univariate(p)?.factors {
            let normalized = q.scale(&q.coeff(0).inv()?);
            let key = MaximalIdealKey::principal_unchecked(&signed_reversal_inverse(&normalized)?)?;
            class.add_entry(key, sign * e as i64);
        }
    }
    Ok(class)
}

/// Inverse of [`tilde_to_free_abelian`]; the support must avoid `(t)`.
pub fn free_abelian_to_tilde(v: &GrothendieckClass) -> Result<TildeClass> {
    if v.nvars() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: v.nvars() });
    }
    let field = v.field();
    let (mut num, mut den) = (UniPoly::one(field), UniPoly::one(field));
    for (key, m) in v.support() {
        if key.is_origin() {
            return Err(Error::Precondition("the key (t) has no image in the tilde group".into()));
        }
        let q = key
            .univariate_generator()
            .ok_or_else(|| Error::Precondition(format!("key {key} is not principal")))?;
        let r = signed_reversal(&q)?.pow(m.unsigned_abs());
        if m > 0 {
            num = &num * &r;
        } else {
            den = &den * &r;
        }
    }
    TildeClass::new(num, den)
}

/// Image of a one-variable class in `Z x A0~`: `[(t)] |-> (1, 1)` and
/// `[(q)] |-> (deg q, signed_reversal(q))`.
pub fn comparison_image(class: &GrothendieckClass) -> Result<(i64, TildeClass)> {
    if class.nvars() != 1 {
        return Err(Error::ArityMismatch { expected: 1, found: class.nvars() });
    }
    let rest = GrothendieckClass::from_entries(
        class.field(),
        1,
        class.support().filter(|(k, _)| !k.is_origin()).map(|(k, m)| (k.clone(), m)),
    )?;
    Ok((class.rank(), free_abelian_to_tilde(&rest)?))
}

/// Whether the Kelley-Spanier split of `t` equals the comparison image of
/// its class.
pub fn compare_splittings(t: &CommutingTuple) -> Result<bool> {
    require_one_variable(t)?;
    Ok(kelley_spanier_split(t)? == comparison_image(&k0_class(t)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::generated_submodule;
    use crate::poly::parse_uni;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    fn single(f: FieldSpec, rows: &[&[i64]]) -> CommutingTuple {
        CommutingTuple::single(Matrix::from_i64(f, rows)).unwrap()
    }

    fn companion(f: FieldSpec, coeffs: &[i64]) -> CommutingTuple {
        CommutingTuple::single(Matrix::companion(&UniPoly::from_i64s(f, coeffs)).unwrap()).unwrap()
    }

    fn key(f: FieldSpec, text: &str) -> MaximalIdealKey {
        MaximalIdealKey::from_irreducible(&parse_uni(text, f).unwrap()).unwrap()
    }

    fn tilde(f: FieldSpec, num: &str, den: &str) -> TildeClass {
        TildeClass::new(parse_uni(num, f).unwrap(), parse_uni(den, f).unwrap()).unwrap()
    }

    #[test]
    fn class_examples() {
        let c = k0_class(&single(q(), &[&[0, 0], &[0, 0]])).unwrap();
        assert_eq!(c.render(), "2 * [t]");
        let c = k0_class(&single(q(), &[&[0, 0], &[0, 1]])).unwrap();
        assert_eq!(c.render(), "1 * [t]\n1 * [t - 1]");
        let c = k0_class(&companion(f3(), &[1, 0, 1])).unwrap();
        assert_eq!(c.render(), "1 * [t^2 + 1]");
        let f2 = FieldSpec::prime(2).unwrap();
        let j = Matrix::from_i64(f2, &[&[0, 1], &[0, 0]]);
        let t = CommutingTuple::new(f2, 2, 2, vec![j, Matrix::zeros(f2, 2, 2)]).unwrap();
        assert_eq!(k0_class(&t).unwrap().render(), "2 * [t1, t2]");
        assert_eq!(k0_class(&CommutingTuple::zero(q(), 1)).unwrap().render(), "0");
    }

    #[test]
    fn class_arithmetic() {
        let two = GrothendieckClass::from_entries(q(), 1, [(key(q(), "t"), 2)]).unwrap();
        let minus = GrothendieckClass::from_entries(q(), 1, [(key(q(), "t"), -2)]).unwrap();
        assert!(two.checked_add(&minus).unwrap().is_zero());
        let a = GrothendieckClass::from_entries(q(), 1, [(key(q(), "t"), 1)]).unwrap();
        let b = GrothendieckClass::from_entries(q(), 1, [(key(q(), "t - 1"), 1)]).unwrap();
        let ab = a.checked_add(&b).unwrap();
        assert_eq!(ab.render(), "1 * [t]\n1 * [t - 1]");
        assert_eq!(ab.checked_sub(&b).unwrap(), a);
        let other = GrothendieckClass::zero(f3(), 1);
        assert!(matches!(a.checked_add(&other), Err(Error::FieldMismatch(..))));
        assert!(GrothendieckClass::zero(q(), 2).checked_add(&a).is_err());

        let v = single(q(), &[&[0, 1], &[0, 0]]);
        let w = companion(q(), &[-2, 0, 1]);
        let sum = k0_class(&v.block_diag(&w).unwrap()).unwrap();
        assert_eq!(sum, k0_class(&v).unwrap().checked_add(&k0_class(&w).unwrap()).unwrap());
    }

    #[test]
    fn lambda_examples() {
        assert!(lambda_t(&Matrix::zeros(q(), 3, 3)).unwrap().is_one());
        assert_eq!(lambda_t(&Matrix::identity(q(), 2)).unwrap(), UniPoly::from_i64s(q(), &[1, 2, 1]));
        let c = Matrix::companion(&UniPoly::from_i64s(q(), &[1, 0, 1])).unwrap();
        assert_eq!(lambda_t(&c).unwrap(), UniPoly::from_i64s(q(), &[1, 0, 1]));
        assert!(lambda_t(&Matrix::zeros(q(), 2, 3)).is_err());
    }

    #[test]
    fn split_examples() {
        let (r, a) = kelley_spanier_split(&single(q(), &[&[0, 0], &[0, 1]])).unwrap();
        assert_eq!((r, a.render()), (2, "t + 1".to_string()));
        let (r, a) = kelley_spanier_split(&single(q(), &[&[0, 1], &[0, 0]])).unwrap();
        assert_eq!((r, a.render()), (2, "1".to_string()));
        let (r, a) = kelley_spanier_split(&companion(f3(), &[1, 0, 1])).unwrap();
        assert_eq!((r, a.render()), (2, "t^2 + 1".to_string()));
        let f2 = FieldSpec::prime(2).unwrap();
        let t = CommutingTuple::new(f2, 2, 1, vec![Matrix::zeros(f2, 1, 1); 2]).unwrap();
        assert!(kelley_spanier_split(&t).is_err());
        assert!(compare_splittings(&t).is_err());
    }

    #[test]
    fn tilde_examples() {
        let one_plus_t = tilde(q(), "1 + t", "1");
        assert!(one_plus_t.checked_mul(&one_plus_t.inv()).unwrap().is_one());
        assert_eq!(tilde(q(), "1 + 2*t + t^2", "1 + t"), one_plus_t);
        assert_eq!(one_plus_t.inv(), tilde(q(), "1", "1 + t"));
        assert_eq!(one_plus_t.inv().render(), "1 // t + 1");
        assert!(TildeClass::new(parse_uni("2 + t", q()).unwrap(), UniPoly::one(q())).is_err());
        assert_eq!(one_plus_t.pow(-2), tilde(q(), "1", "1 + 2*t + t^2"));
    }

    #[test]
    fn free_abelian_examples() {
        assert!(tilde_to_free_abelian(&TildeClass::one(q())).unwrap().is_zero());
        let v = tilde_to_free_abelian(&tilde(q(), "1 + t", "1")).unwrap();
        // signed_reversal(t - 1) = 1 + t, so 1 + t sits at the eigenvalue 1
        assert_eq!(v.render(), "1 * [t - 1]");
        let w = tilde_to_free_abelian(&tilde(q(), "1 + 2*t + t^2", "1 + t")).unwrap();
        assert_eq!(w, v);

        assert!(free_abelian_to_tilde(&GrothendieckClass::zero(q(), 1)).unwrap().is_one());
        let e = GrothendieckClass::from_entries(q(), 1, [(key(q(), "t - 1"), 1)]).unwrap();
        assert_eq!(free_abelian_to_tilde(&e).unwrap(), tilde(q(), "1 + t", "1"));
        let e = GrothendieckClass::from_entries(q(), 1, [(key(q(), "t + 1"), -1)]).unwrap();
        assert_eq!(free_abelian_to_tilde(&e).unwrap(), tilde(q(), "1", "1 - t"));
        let origin = GrothendieckClass::from_entries(q(), 1, [(key(q(), "t"), 1)]).unwrap();
        assert!(free_abelian_to_tilde(&origin).is_err());
    }

    #[test]
    fn comparison_examples() {
        for t in [
            single(q(), &[&[0, 0], &[0, 1]]),
            single(q(), &[&[0, 1], &[0, 0]]),
            companion(f3(), &[1, 0, 1]),
            companion(q(), &[3, -1, 0, 1]),
        ] {
            assert!(compare_splittings(&t).unwrap(), "{t:?}");
        }
    }

    #[test]
    fn additivity_examples() {
        let t = single(q(), &[&[0, 1], &[0, 0]]);
        assert!(verify_additivity(&t, &InvariantSubmodule::zero(&t)).unwrap());
        assert!(verify_additivity(&t, &InvariantSubmodule::full(&t)).unwrap());
        let e1 = vec![q().one(), q().zero()];
        let s = generated_submodule(&t, &[e1]).unwrap();
        assert!(verify_additivity(&t, &s).unwrap());
        assert_eq!(k0_class(&t.restrict(&s).unwrap()).unwrap().render(), "1 * [t]");
    }
}
