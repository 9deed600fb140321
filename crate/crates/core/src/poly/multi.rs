use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::poly::UniPoly;

/// Exponent vector of a monomial in `t1, ..., tn`.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// vectors lexicographically, which makes `t1 > t2 > ... > tn`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    /// The variable `t_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn mul_var(&self, i: usize) -> Self {
        let mut e = self.0.clone();
        e[i] += 1;
        Monomial(e)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` if `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn render(&self) -> String {
        let names = var_names(self.0.len());
        let parts: Vec<String> = self
            .0
            .iter()
            .zip(&names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect();
        parts.join("*")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            f.write_str(&self.render())
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// `t` for one variable, `t1, ..., tn` otherwise.
pub fn var_names(nvars: usize) -> Vec<String> {
    if nvars == 1 {
        vec!["t".to_string()]
    } else {
        (1..=nvars).map(|i| format!("t{i}")).collect()
    }
}

/// Sparse polynomial in `nvars` variables with no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl MultiPoly {
    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        MultiPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(c: FieldElement, nvars: usize) -> Self {
        Self::term(c, Monomial::one(nvars))
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Self::constant(field.one(), nvars)
    }

    pub fn var(field: FieldSpec, nvars: usize, i: usize) -> Self {
        Self::term(field.one(), Monomial::var(nvars, i))
    }

    pub fn term(c: FieldElement, m: Monomial) -> Self {
        let mut p = Self::zero(c.field(), m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds from arbitrary `(coefficient, monomial)` pairs, merging duplicates.
    pub fn from_terms(
        field: FieldSpec,
        nvars: usize,
        terms: impl IntoIterator<Item = (FieldElement, Monomial)>,
    ) -> Result<Self> {
        let mut p = Self::zero(field, nvars);
        for (c, m) in terms {
            if c.field() != field {
                return Err(Error::FieldMismatch(field, c.field()));
            }
            if m.nvars() != nvars {
                return Err(Error::ArityMismatch { expected: nvars, found: m.nvars() });
            }
            p.add_term(c, m);
        }
        Ok(p)
    }

    pub fn from_uni(p: &UniPoly) -> Self {
        let terms = p
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Monomial(vec![i as u32]), c.clone()))
            .collect();
        MultiPoly { field: p.field(), nvars: 1, terms }
    }

    /// The univariate polynomial in `t` when `nvars == 1`.
    pub fn to_uni(&self) -> Result<UniPoly> {
        if self.nvars != 1 {
            return Err(Error::ArityMismatch { expected: 1, found: self.nvars });
        }
        let deg = self.terms.keys().map(|m| m.0[0] as usize).max().unwrap_or(0);
        let mut coeffs = vec![self.field.zero(); deg + 1];
        for (m, c) in &self.terms {
            coeffs[m.0[0] as usize] = c.clone();
        }
        Ok(UniPoly::from_vec(self.field, coeffs))
    }

    fn add_term(&mut self, c: FieldElement, m: Monomial) {
        if c.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&m) {
            Some(old) => &old + &c,
            None => c,
        };
        if !merged.is_zero() {
            self.terms.insert(m, merged);
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldElement {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading_term().map(|(m, _)| m)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_monomial().map(Monomial::degree)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, c: &FieldElement, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero(self.field, self.nvars);
        }
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, lc)) => self.scale(&lc.inv().expect("nonzero")),
        }
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
        for (m, c) in &other.terms {
            out.add_term(c.clone(), m.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.field, self.nvars);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(a * b, m.mul(n));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Self::one(self.field, self.nvars), |acc, _| &acc * self)
    }

    /// Remainder of multivariate division by `basis` in graded-lex order:
    /// no term of the result is divisible by a leading monomial of `basis`.
    pub fn normal_form(&self, basis: &[MultiPoly]) -> Result<Self> {
        for b in basis {
            self.check(b)?;
            if b.is_zero() {
                return Err(Error::ZeroPolynomial("normal_form basis"));
            }
        }
        let mut rest = self.clone();
        let mut rem = Self::zero(self.field, self.nvars);
        while let Some((m, c)) = rest.leading_term().map(|(m, c)| (m.clone(), c.clone())) {
            let reducer = basis.iter().find_map(|b| {
                let (lm, lc) = b.leading_term().expect("nonzero");
                lm.quotient_of(&m).map(|q| (b, q, &c / lc))
            });
            match reducer {
                Some((b, q, factor)) => {
                    rest = &rest - &b.mul_term(&factor, &q);
                }
                None => {
                    rest.terms.remove(&m);
                    rem.terms.insert(m, c);
                }
            }
        }
        Ok(rem)
    }

    /// Canonical text, terms descending, variables `t` or `t1..tn`.
    pub fn render(&self) -> String {
        super::render_terms(self.terms().map(|(m, c)| (c, m.render())))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly[{}; {}]({})", self.field, self.nvars, self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_multi;
    use proptest::prelude::*;

    fn p(field: FieldSpec, n: usize, s: &str) -> MultiPoly {
        parse_multi(s, field, n).unwrap()
    }

    #[test]
    fn graded_lex_order() {
        let m = |e: &[u32]| Monomial::new(e.to_vec());
        assert!(m(&[1, 0]) > m(&[0, 1]));
        assert!(m(&[0, 2]) > m(&[1, 0]));
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[0, 0]) < m(&[0, 1]));
    }

    #[test]
    fn ring_examples() {
        let q = FieldSpec::rationals();
        assert_eq!(p(q, 1, "t + 1") * p(q, 1, "t - 1"), p(q, 1, "t^2 - 1"));
        let f2 = FieldSpec::prime(2).unwrap();
        let s = p(f2, 2, "t1 + t2");
        assert_eq!(&s * &s, p(f2, 2, "t1^2 + t2^2"));
        assert_eq!(&s * &MultiPoly::one(f2, 2), s);
        let other = p(f2, 3, "t1");
        assert!(matches!(s.checked_add(&other), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn normal_form_examples() {
        let q = FieldSpec::rationals();
        let nf = p(q, 2, "t1^2").normal_form(&[p(q, 2, "t1"), p(q, 2, "t2")]).unwrap();
        assert!(nf.is_zero());
        let f = p(q, 2, "t1*t2 + 1");
        assert_eq!(f.normal_form(&[p(q, 2, "t1^2"), p(q, 2, "t2^2")]).unwrap(), f);
        let nf = p(q, 2, "t1^2").normal_form(&[p(q, 2, "t1^2 - t2"), p(q, 2, "t2^2")]).unwrap();
        assert_eq!(nf, p(q, 2, "t2"));
    }

    #[test]
    fn rendering() {
        let q = FieldSpec::rationals();
        assert_eq!(p(q, 2, "t2 + t1").render(), "t1 + t2");
        assert_eq!(p(q, 2, "-1/2*t1^2*t2 + 3").render(), "-1/2*t1^2*t2 + 3");
        assert_eq!(p(q, 1, "t^2 + 1").render(), "t^2 + 1");
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        let q = FieldSpec::rationals();
        proptest::collection::vec((-3i64..4, 0u32..3, 0u32..3), 0..6).prop_map(move |ts| {
            MultiPoly::from_terms(
                q,
                2,
                ts.into_iter().map(|(c, a, b)| (q.from_i64(c), Monomial::new(vec![a, b]))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn normal_form_is_idempotent(f in arb_poly(), b1 in arb_poly(), b2 in arb_poly()) {
            let basis: Vec<_> = [b1, b2].into_iter().filter(|b| !b.is_zero()).collect();
            let once = f.normal_form(&basis).unwrap();
            prop_assert_eq!(once.normal_form(&basis).unwrap(), once.clone());
            for (m, _) in once.terms() {
                prop_assert!(basis.iter().all(|b| !b.leading_monomial().unwrap().divides(m)));
            }
        }

        #[test]
        fn multiplication_is_commutative(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
        }
    }
}
