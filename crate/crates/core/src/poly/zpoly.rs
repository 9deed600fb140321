//! Dense integer polynomials (low to high) used by the Zassenhaus factorizer.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::FieldSpec;
use crate::poly::UniPoly;

pub(crate) type ZPoly = Vec<BigInt>;

pub(crate) fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(crate) fn degree(p: &ZPoly) -> usize {
    p.len().saturating_sub(1)
}

pub(crate) fn content(p: &ZPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Divides out the content and makes the leading coefficient positive.
pub(crate) fn primitive_part(p: &ZPoly) -> ZPoly {
    let mut c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    if p.last().is_some_and(Signed::is_negative) {
        c = -c;
    }
    p.iter().map(|a| a / &c).collect()
}

pub(crate) fn mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub(crate) fn sub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

pub(crate) fn scale(a: &ZPoly, c: &BigInt) -> ZPoly {
    trim(a.iter().map(|x| x * c).collect())
}

/// Coefficients reduced into `[0, m)`.
pub(crate) fn reduce(a: &ZPoly, m: &BigInt) -> ZPoly {
    trim(a.iter().map(|x| x.mod_floor(m)).collect())
}

/// Coefficients reduced into `(-m/2, m/2]`.
pub(crate) fn symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half { r - m } else { r }
            })
            .collect(),
    )
}

/// `a / b` over the integers when the division is exact.
pub(crate) fn div_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = degree(b);
    let lb = b.last()?;
    if a.len() < b.len() {
        return a.is_empty().then(Vec::new);
    }
    let mut rem = a.clone();
    let mut quot = vec![BigInt::zero(); a.len() - db];
    for k in (0..quot.len()).rev() {
        let top = &rem[k + db];
        if top.is_zero() {
            continue;
        }
        let (c, r) = top.div_rem(lb);
        if !r.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            rem[k + j] -= &c * y;
        }
        quot[k] = c;
    }
    rem.iter().all(Zero::is_zero).then(|| trim(quot))
}

pub(crate) fn to_fp(a: &ZPoly, field: FieldSpec) -> UniPoly {
    UniPoly::from_vec(field, a.iter().map(|c| field.from_bigint(c)).collect())
}

pub(crate) fn from_fp(a: &UniPoly) -> ZPoly {
    a.coeffs()
        .iter()
        .map(|c| BigInt::from(c.residue().expect("prime field")))
        .collect()
}

/// `ceil(sqrt(sum of squared coefficients))`.
pub(crate) fn norm2_ceil(a: &ZPoly) -> BigInt {
    let sum: BigInt = a.iter().map(|c| c * c).sum();
    let r = sum.sqrt();
    if &r * &r == sum { r } else { r + 1 }
}

pub(crate) fn is_one(a: &ZPoly) -> bool {
    a.len() == 1 && a[0].is_one()
}
