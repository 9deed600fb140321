use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Dense univariate polynomial, coefficients stored low to high with no
/// trailing zeros. The zero polynomial has no coefficients and no degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: FieldSpec, coeffs: Vec<FieldElement>) -> Result<Self> {
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch(field, bad.field()));
        }
        Ok(Self::from_vec(field, coeffs))
    }

    pub(crate) fn from_vec(field: FieldSpec, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(FieldElement::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    /// Coefficients low to high, as integers mapped into `field`.
    pub fn from_i64s(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::from_vec(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: FieldSpec) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::from_vec(c.field(), vec![c])
    }

    /// The variable `t`.
    pub fn x(field: FieldSpec) -> Self {
        Self::monomial(field.one(), 1)
    }

    pub fn monomial(c: FieldElement, k: usize) -> Self {
        let field = c.field();
        let mut coeffs = vec![field.zero(); k];
        coeffs.push(c);
        Self::from_vec(field, coeffs)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading_coeff(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(FieldElement::is_one)
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::from_vec(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field, other.field))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        Ok(Self::from_vec(
            self.field,
            (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect(),
        ))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.field));
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(Self::from_vec(self.field, out))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(self.field), self.clone()));
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * b);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Self::from_vec(self.field, quot), Self::from_vec(self.field, rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Exact quotient; fails if the remainder is nonzero.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.divmod(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal(format!("{divisor} does not divide {self}")))
        }
    }

    pub fn divides(&self, other: &Self) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial("gcd"));
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Extended Euclid: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn xgcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial("xgcd"));
        }
        let field = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(field), Self::zero(field));
        let (mut t0, mut t1) = (Self::zero(field), Self::one(field));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        let inv = r0.leading_coeff().expect("nonzero").inv()?;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// Monic least common multiple of two nonzero polynomials.
    pub fn lcm(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial("lcm"));
        }
        let g = self.gcd(other)?;
        Ok(self.exact_div(&g)?.checked_mul(other)?.monic())
    }

    pub fn derivative(&self) -> Self {
        Self::from_vec(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &self.field.from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = Self::one(self.field);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// `self^exp mod modulus`.
    pub fn powmod(&self, exp: &BigUint, modulus: &Self) -> Result<Self> {
        let base = self.rem(modulus)?;
        let mut acc = Self::one(self.field).rem(modulus)?;
        for i in (0..exp.bits()).rev() {
            acc = (&acc * &acc).rem(modulus)?;
            if exp.bit(i) {
                acc = (&acc * &base).rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// Product of the distinct monic irreducible factors of a nonzero
    /// polynomial.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("squarefree_part"));
        }
        let parts = crate::poly::factor::squarefree_decomposition(self)?;
        Ok(parts
            .into_iter()
            .fold(Self::one(self.field), |acc, (g, _)| &acc * &g))
    }

    /// Order by degree, then by the coefficient sequence low to high.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }

    /// Text rendering in descending powers of `var`.
    pub fn render(&self, var: &str) -> String {
        super::render_terms(self.coeffs.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).map(
            |(i, c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{i}"),
                };
                (c, mono)
            },
        ))
    }
}

/// `q ↦ (−1)^D t^D q(−1/t)` for monic `q` of degree `D`: the coefficient of
/// `t^k` in the result is `(−1)^k` times the coefficient of `t^(D−k)` in `q`.
/// The result has constant term 1, and `t ↦ 1`.
pub fn signed_reversal(q: &UniPoly) -> Result<UniPoly> {
    if !q.is_monic() {
        return Err(Error::Precondition(format!("signed reversal needs a monic input, got {q}")));
    }
    let d = q.degree().unwrap_or(0);
    let field = q.field();
    Ok(UniPoly::from_vec(
        field,
        (0..=d)
            .map(|k| {
                let c = q.coeff(d - k);
                if k % 2 == 1 { -c } else { c }
            })
            .collect(),
    ))
}

/// Inverse of [`signed_reversal`] on inputs with constant term 1, returning
/// the monic polynomial of the same degree.
pub fn signed_reversal_inverse(r: &UniPoly) -> Result<UniPoly> {
    if !r.coeff(0).is_one() {
        return Err(Error::Precondition(format!(
            "inverse signed reversal needs constant term 1, got {r}"
        )));
    }
    let d = r.degree().unwrap_or(0);
    Ok(UniPoly::from_vec(
        r.field(),
        (0..=d)
            .map(|j| {
                let c = r.coeff(d - j);
                if (d - j) % 2 == 1 { -c } else { c }
            })
            .collect(),
    ))
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{}]({})", self.field, self)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&UniPoly> for &UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: &UniPoly) -> UniPoly {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: UniPoly) -> UniPoly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_vec(self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> FieldSpec {
        FieldSpec::rationals()
    }
    fn f(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }
    fn poly(field: FieldSpec, c: &[i64]) -> UniPoly {
        UniPoly::from_i64s(field, c)
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(poly(q(), &[1, 1]) * poly(q(), &[-1, 1]), poly(q(), &[-1, 0, 1]));
        let p = poly(q(), &[3, 0, 2]);
        assert_eq!(&p * &UniPoly::one(q()), p);
        assert_eq!(UniPoly::zero(q()).degree(), None);
    }

    #[test]
    fn divmod_examples() {
        let (quo, r) = poly(q(), &[-1, 0, 1]).divmod(&poly(q(), &[-1, 1])).unwrap();
        assert_eq!((quo, r), (poly(q(), &[1, 1]), UniPoly::zero(q())));
        let t = UniPoly::x(q());
        let (quo, r) = t.divmod(&t.pow(2)).unwrap();
        assert_eq!((quo, r), (UniPoly::zero(q()), t.clone()));
        // t^3 + t + 1 = (t + 1)(t^2 + t) + 1 over F_2
        let (quo, r) = poly(f(2), &[1, 1, 0, 1]).divmod(&poly(f(2), &[1, 1])).unwrap();
        assert_eq!(quo, poly(f(2), &[0, 1, 1]));
        assert_eq!(r, UniPoly::one(f(2)));
        assert_eq!(t.divmod(&UniPoly::zero(q())), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        let g = poly(q(), &[-1, 0, 1]).gcd(&poly(q(), &[-1, 1])).unwrap();
        assert_eq!(g, poly(q(), &[-1, 1]));
        let g = poly(q(), &[4, 0, 2]).gcd(&UniPoly::zero(q())).unwrap();
        assert_eq!(g, poly(q(), &[2, 0, 1]));
        let g = poly(f(2), &[1, 0, 1]).gcd(&poly(f(2), &[0, 1, 1])).unwrap();
        assert_eq!(g, poly(f(2), &[1, 1]));
        assert!(UniPoly::zero(q()).gcd(&UniPoly::zero(q())).is_err());
    }

    #[test]
    fn squarefree_examples() {
        // (t - 1)^2 (t + 2)
        let p = poly(q(), &[-1, 1]).pow(2) * poly(q(), &[2, 1]);
        assert_eq!(p.squarefree_part().unwrap(), poly(q(), &[-1, 1]) * poly(q(), &[2, 1]));
        assert_eq!(poly(f(2), &[1, 0, 1]).squarefree_part().unwrap(), poly(f(2), &[1, 1]));
        assert_eq!(
            poly(f(2), &[0, 0, 1, 0, 1]).squarefree_part().unwrap(),
            poly(f(2), &[0, 1, 1])
        );
        assert!(UniPoly::zero(q()).squarefree_part().is_err());
    }

    #[test]
    fn reversal_examples() {
        assert_eq!(signed_reversal(&poly(q(), &[-1, 1])).unwrap(), poly(q(), &[1, 1]));
        assert_eq!(signed_reversal(&UniPoly::x(q())).unwrap(), UniPoly::one(q()));
        assert_eq!(signed_reversal(&poly(q(), &[1, 0, 1])).unwrap(), poly(q(), &[1, 0, 1]));
        assert!(signed_reversal(&poly(q(), &[1, 2])).is_err());
        assert!(signed_reversal_inverse(&poly(q(), &[2, 1])).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(poly(q(), &[-1, 1]).to_string(), "t - 1");
        assert_eq!(poly(q(), &[1, 0, 1]).to_string(), "t^2 + 1");
        assert_eq!(poly(q(), &[0, -2, -1]).to_string(), "-t^2 - 2*t");
        assert_eq!(poly(f(3), &[-1, 1]).to_string(), "t + 2");
        assert_eq!(UniPoly::zero(q()).to_string(), "0");
    }

    fn small_poly(field: FieldSpec, max_deg: usize) -> impl Strategy<Value = UniPoly> {
        proptest::collection::vec(-9i64..10, 0..=max_deg + 1)
            .prop_map(move |c| UniPoly::from_i64s(field, &c))
    }

    fn const_one(field: FieldSpec, max_deg: usize) -> impl Strategy<Value = UniPoly> {
        proptest::collection::vec(-9i64..10, 0..=max_deg).prop_map(move |c| {
            let mut all = vec![1];
            all.extend(c);
            UniPoly::from_i64s(field, &all)
        })
    }

    proptest! {
        #[test]
        fn divmod_reconstructs(a in small_poly(q(), 8), b in small_poly(q(), 5)) {
            prop_assume!(!b.is_zero());
            let (quo, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(&(&quo * &b) + &r, a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn reversal_is_multiplicative(a in const_one(f(7), 5), b in const_one(f(7), 5)) {
            let qa = signed_reversal_inverse(&a).unwrap();
            let qb = signed_reversal_inverse(&b).unwrap();
            prop_assert_eq!(signed_reversal(&qa).unwrap(), a.clone());
            let prod = signed_reversal(&(&qa * &qb)).unwrap();
            prop_assert_eq!(prod, &a * &b);
        }

        #[test]
        fn squarefree_part_properties(a in small_poly(f(3), 8)) {
            prop_assume!(!a.is_zero());
            let s = a.squarefree_part().unwrap();
            prop_assert!(s.divides(&a).unwrap());
            let ds = s.derivative();
            if !ds.is_zero() {
                prop_assert!(s.gcd(&ds).unwrap().is_one());
            }
        }
    }
}
