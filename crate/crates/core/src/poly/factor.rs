//! Irreducible factorization of univariate polynomials.
//!
//! Over `F_p`: squarefree decomposition, distinct-degree splitting, then
//! equal-degree splitting (Cantor-Zassenhaus, or exhaustive divisor search
//! when `p^d` is small). Over `Q`: the primitive part of each squarefree
//! factor is factored modulo a good prime, Hensel-lifted past the Mignotte
//! bound and recombined over the integers.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec, Kind};
use crate::poly::zpoly::{self, ZPoly};
use crate::poly::UniPoly;
use crate::Rng;

/// Below this many monic candidates `p^d`, equal-degree splitting searches
/// divisors exhaustively instead of drawing random elements.
pub const EXHAUSTIVE_THRESHOLD: u64 = 1_000_000;

/// Largest degree accepted by the factorizer over `Q`.
pub const MAX_RATIONAL_DEGREE: usize = 64;

/// `f = unit * prod(factor^multiplicity)` with monic irreducible factors in
/// canonical order (degree, then coefficients low to high).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    pub fn expand(&self) -> UniPoly {
        self.factors.iter().fold(UniPoly::constant(self.unit.clone()), |acc, (q, e)| {
            &acc * &q.pow(*e as u64)
        })
    }

    /// Number of distinct irreducible factors.
    pub fn distinct(&self) -> usize {
        self.factors.len()
    }
}

pub fn factor_univariate(f: &UniPoly) -> Result<Factorization> {
    factor_univariate_with_rng(f, &mut crate::default_rng())
}

pub fn factor_univariate_with_rng(f: &UniPoly, rng: &mut Rng) -> Result<Factorization> {
    let lc = f.leading_coeff().ok_or(Error::ZeroPolynomial("factor_univariate"))?.clone();
    let field = f.field();
    let mut factors = Vec::new();
    if field.is_rationals() {
        let deg = f.degree().unwrap_or(0);
        if deg > MAX_RATIONAL_DEGREE {
            return Err(Error::DegreeTooLarge(deg));
        }
        for (s, e) in squarefree_decomposition(f)? {
            for q in factor_squarefree_rational(&s, rng)? {
                factors.push((q, e));
            }
        }
    } else {
        for (s, e) in squarefree_decomposition(f)? {
            for (g, d) in distinct_degree(&s)? {
                for q in equal_degree(&g, d, rng)? {
                    factors.push((q, e));
                }
            }
        }
    }
    factors.sort_by(canonical_factor_order);
    Ok(Factorization { unit: lc, factors })
}

/// Monic squarefree, pairwise coprime `(g, m)` with `monic(f) = prod g^m`,
/// sorted by multiplicity.
pub fn squarefree_decomposition(f: &UniPoly) -> Result<Vec<(UniPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("squarefree_decomposition"));
    }
    let mut out = Vec::new();
    squarefree_rec(&f.monic(), 1, &mut out)?;
    out.sort_by_key(|(_, m)| *m);
    Ok(out)
}

fn squarefree_rec(f: &UniPoly, scale: u32, out: &mut Vec<(UniPoly, u32)>) -> Result<()> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    let p = f.field().characteristic();
    let df = f.derivative();
    if df.is_zero() {
        // f(t) = g(t^p); coefficients are their own p-th roots in F_p.
        return squarefree_rec(&pth_root(f, p), scale * p as u32, out);
    }
    let mut c = f.gcd(&df)?;
    let mut w = f.exact_div(&c)?;
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c)?;
        let z = w.exact_div(&y)?;
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i * scale));
        }
        i += 1;
        c = c.exact_div(&y)?;
        w = y;
    }
    if c.degree().unwrap_or(0) > 0 {
        squarefree_rec(&pth_root(&c, p), scale * p as u32, out)?;
    }
    Ok(())
}

fn pth_root(f: &UniPoly, p: u64) -> UniPoly {
    let p = p as usize;
    UniPoly::from_vec(f.field(), f.coeffs().iter().step_by(p).cloned().collect())
}

/// Splits a monic squarefree polynomial over `F_p` into products of
/// irreducibles of equal degree, `(product, degree)`.
fn distinct_degree(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>> {
    let field = f.field();
    let p = BigUint::from(field.characteristic());
    let x = UniPoly::x(field);
    let mut rest = f.clone();
    let mut h = x.rem(&rest)?;
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = h.powmod(&p, &rest)?;
        let g = rest.gcd(&(&h - &x))?;
        if !g.is_one() {
            rest = rest.exact_div(&g)?;
            h = h.rem(&rest)?;
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(deg) = rest.degree().filter(|&deg| deg > 0) {
        out.push((rest, deg));
    }
    Ok(out)
}

/// Splits a monic product of distinct irreducibles of degree `d` over `F_p`.
fn equal_degree(g: &UniPoly, d: usize, rng: &mut Rng) -> Result<Vec<UniPoly>> {
    let n = g.degree().unwrap_or(0);
    if n <= d {
        return Ok(vec![g.clone()]);
    }
    let p = g.field().characteristic();
    let candidates = (p as u128).checked_pow(d as u32);
    if candidates.is_some_and(|c| c <= EXHAUSTIVE_THRESHOLD as u128) {
        return Ok(exhaustive_split(g, d));
    }
    let (a, b) = loop {
        let h = split_attempt(g, d, rng)?;
        if let Some(h) = h {
            let other = g.exact_div(&h)?;
            break (h, other);
        }
    };
    let mut out = equal_degree(&a, d, rng)?;
    out.extend(equal_degree(&b, d, rng)?);
    Ok(out)
}

fn split_attempt(g: &UniPoly, d: usize, rng: &mut Rng) -> Result<Option<UniPoly>> {
    let field = g.field();
    let p = field.characteristic();
    let n = g.degree().unwrap_or(0);
    let a = UniPoly::from_vec(
        field,
        (0..n).map(|_| field.from_u64(rng.random_range(0..p))).collect(),
    );
    if a.degree().unwrap_or(0) == 0 {
        return Ok(None);
    }
    let one = UniPoly::one(field);
    let b = if p == 2 {
        // absolute trace a + a^2 + ... + a^(2^(d-1))
        let mut acc = a.clone();
        let mut pw = a.clone();
        for _ in 1..d {
            pw = (&pw * &pw).rem(g)?;
            acc = &acc + &pw;
        }
        acc
    } else {
        let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
        &a.powmod(&e, g)? - &one
    };
    if b.is_zero() {
        return Ok(None);
    }
    let h = g.gcd(&b)?;
    let dh = h.degree().unwrap_or(0);
    Ok((dh > 0 && dh < n).then_some(h))
}

/// Tries monic degree-`d` candidates in increasing order; every monic
/// degree-`d` divisor of `g` is one of its irreducible factors.
fn exhaustive_split(g: &UniPoly, d: usize) -> Vec<UniPoly> {
    let field = g.field();
    let p = field.characteristic();
    let total = p.pow(d as u32);
    let mut rest = g.clone();
    let mut out = Vec::new();
    let residues_of = |f: &UniPoly| -> Vec<u64> {
        f.coeffs().iter().map(|c| c.residue().expect("prime field")).collect()
    };
    let mut residues = residues_of(&rest);
    let mut cand = vec![0u64; d + 1];
    cand[d] = 1;
    for index in 0..total {
        if rest.degree().unwrap_or(0) <= d {
            break;
        }
        let mut k = index;
        for c in cand.iter_mut().take(d) {
            *c = k % p;
            k /= p;
        }
        // an irreducible of degree >= 2 has a nonzero constant term
        if d >= 2 && cand[0] == 0 {
            continue;
        }
        if !monic_divides_mod_p(&cand, &residues, p) {
            continue;
        }
        let cand = UniPoly::from_vec(field, cand.iter().map(|&c| field.from_u64(c)).collect());
        let (q, r) = rest.divmod(&cand).expect("nonzero divisor");
        debug_assert!(r.is_zero());
        out.push(cand);
        rest = q;
        residues = residues_of(&rest);
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(rest);
    }
    out
}

/// Whether monic `div` divides `f` over `F_p`; coefficients low to high.
fn monic_divides_mod_p(div: &[u64], f: &[u64], p: u64) -> bool {
    let d = div.len() - 1;
    let mut r: Vec<u64> = f.to_vec();
    for top in (d..r.len()).rev() {
        let lead = r[top];
        if lead == 0 {
            continue;
        }
        for (i, &c) in div.iter().enumerate().take(d) {
            let idx = top - d + i;
            r[idx] = (r[idx] + (p - lead) * c % p) % p;
        }
        r[top] = 0;
    }
    r[..d].iter().all(|&c| c == 0)
}

fn factor_squarefree_rational(s: &UniPoly, rng: &mut Rng) -> Result<Vec<UniPoly>> {
    if s.degree().unwrap_or(0) <= 1 {
        return Ok(vec![s.monic()]);
    }
    let denom_lcm = s.coeffs().iter().fold(BigInt::one(), |acc, c| {
        acc.lcm(c.as_rational().expect("rational").denom())
    });
    let ints: ZPoly = s
        .coeffs()
        .iter()
        .map(|c| (c.as_rational().expect("rational") * &denom_lcm).to_integer())
        .collect();
    let prim = zpoly::primitive_part(&ints);
    let field = s.field();
    Ok(zassenhaus(&prim, rng)?
        .into_iter()
        .map(|g| UniPoly::from_vec(field, g.iter().map(|c| field.from_bigint(c)).collect()).monic())
        .collect())
}

const SMALL_PRIMES: [u64; 30] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127,
];

/// Irreducible factors over `Z` of a primitive squarefree polynomial.
fn zassenhaus(f: &ZPoly, rng: &mut Rng) -> Result<Vec<ZPoly>> {
    let n = zpoly::degree(f);
    let lc = f.last().expect("nonzero").clone();

    // Among the first few good primes keep the one with fewest modular factors.
    let mut best: Option<(u64, Vec<UniPoly>)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES.iter() {
        if lc.mod_floor(&BigInt::from(p)).is_zero() {
            continue;
        }
        let fp_field = FieldSpec::prime(p)?;
        let fp = zpoly::to_fp(f, fp_field);
        if !fp.gcd(&fp.derivative())?.is_one() {
            continue;
        }
        let fac = factor_univariate_with_rng(&fp, rng)?;
        let mods: Vec<UniPoly> = fac.factors.into_iter().map(|(q, _)| q).collect();
        if mods.len() == 1 {
            return Ok(vec![f.clone()]);
        }
        if best.as_ref().is_none_or(|(_, b)| mods.len() < b.len()) {
            best = Some((p, mods));
        }
        tried += 1;
        if tried == 5 {
            break;
        }
    }
    let (p, mods) = match best {
        Some(b) => b,
        None => {
            // Every small prime is bad; fall back to scanning further primes.
            let mut p = *SMALL_PRIMES.last().unwrap() + 2;
            loop {
                if crate::field::is_prime(p) && !lc.mod_floor(&BigInt::from(p)).is_zero() {
                    let fp = zpoly::to_fp(f, FieldSpec::prime(p)?);
                    if fp.gcd(&fp.derivative())?.is_one() {
                        let fac = factor_univariate_with_rng(&fp, rng)?;
                        break (p, fac.factors.into_iter().map(|(q, _)| q).collect());
                    }
                }
                p += 2;
            }
        }
    };

    let bound = (BigInt::one() << n) * zpoly::norm2_ceil(f) * lc.abs() * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }
    let lifted = hensel_lift(f, &mods, p, k)?;
    Ok(recombine(f, lifted, &modulus))
}

/// Lifts `f ≡ lc * prod(mods) (mod p)` to monic factors modulo `p^k`.
fn hensel_lift(f: &ZPoly, mods: &[UniPoly], p: u64, k: u32) -> Result<Vec<ZPoly>> {
    let fp_field = FieldSpec::prime(p)?;
    let pk = BigInt::from(p).pow(k);
    let mut target = zpoly::reduce(f, &pk);
    let mut lifted = Vec::with_capacity(mods.len());
    for i in 0..mods.len() - 1 {
        let lc = fp_field.from_bigint(target.last().expect("nonzero"));
        let h = mods[i + 1..]
            .iter()
            .fold(UniPoly::constant(lc), |acc, q| &acc * q);
        let (g_k, h_k) = lift_pair(&target, &mods[i], &h, p, k)?;
        lifted.push(g_k);
        target = h_k;
    }
    let lc_inv = target
        .last()
        .expect("nonzero")
        .modinv(&pk)
        .ok_or_else(|| Error::Internal("leading coefficient not a unit mod p^k".into()))?;
    lifted.push(zpoly::reduce(&zpoly::scale(&target, &lc_inv), &pk));
    Ok(lifted)
}

/// Linear Hensel lifting of `f ≡ g*h (mod p)`, `g` monic, to modulus `p^k`.
fn lift_pair(f: &ZPoly, g: &UniPoly, h: &UniPoly, p: u64, k: u32) -> Result<(ZPoly, ZPoly)> {
    let field = g.field();
    let (one, s, t) = g.xgcd(h)?;
    if !one.is_one() {
        return Err(Error::Internal("modular factors are not coprime".into()));
    }
    let pb = BigInt::from(p);
    let mut g_int = zpoly::from_fp(g);
    let mut h_int = zpoly::from_fp(h);
    let mut pm = pb.clone();
    for _ in 1..k {
        let diff = zpoly::sub(f, &zpoly::mul(&g_int, &h_int));
        let e: ZPoly = diff
            .iter()
            .map(|c| {
                let (q, r) = c.div_rem(&pm);
                debug_assert!(r.is_zero());
                q
            })
            .collect();
        let e = zpoly::to_fp(&e, field);
        let (q, a) = (&t * &e).divmod(g)?;
        let b = &(&s * &e) + &(&q * h);
        let next = &pm * &pb;
        g_int = zpoly::reduce(&add_scaled(&g_int, &zpoly::from_fp(&a), &pm), &next);
        h_int = zpoly::reduce(&add_scaled(&h_int, &zpoly::from_fp(&b), &pm), &next);
        pm = next;
    }
    Ok((g_int, h_int))
}

fn add_scaled(a: &ZPoly, b: &ZPoly, c: &BigInt) -> ZPoly {
    zpoly::sub(a, &zpoly::scale(b, &-c))
}

fn recombine(f: &ZPoly, mut lifted: Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut f = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let lc = f.last().expect("nonzero").clone();
        let found = subsets(lifted.len(), size).find_map(|subset| {
            let prod = subset
                .iter()
                .fold(vec![lc.clone()], |acc, &i| zpoly::reduce(&zpoly::mul(&acc, &lifted[i]), modulus));
            let cand = zpoly::primitive_part(&zpoly::symmetric(&prod, modulus));
            zpoly::div_exact(&f, &cand).map(|quot| (subset, cand, quot))
        });
        match found {
            Some((subset, cand, quot)) => {
                out.push(cand);
                f = quot;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if !zpoly::is_one(&f) && zpoly::degree(&f) > 0 {
        out.push(zpoly::primitive_part(&f));
    }
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut current: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = current.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                current = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                current = Some(next);
                break;
            }
        }
        Some(out)
    })
}

/// Irreducibility by exhaustive search for a monic divisor of degree at most
/// `deg/2` over a prime field. Independent of the factorizer; used as a test
/// oracle.
pub fn is_irreducible_bruteforce(f: &UniPoly) -> Option<bool> {
    let field = f.field();
    let p = match field.kind() {
        Kind::PrimeField(p) => p,
        Kind::Rationals => return None,
    };
    let n = f.degree()?;
    if n == 0 {
        return Some(false);
    }
    for d in 1..=n / 2 {
        let total = p.checked_pow(d as u32)?;
        for index in 0..total {
            let mut coeffs = Vec::with_capacity(d + 1);
            let mut k = index;
            for _ in 0..d {
                coeffs.push(field.from_u64(k % p));
                k /= p;
            }
            coeffs.push(field.one());
            let cand = UniPoly::from_vec(field, coeffs);
            if f.rem(&cand).ok()?.is_zero() {
                return Some(false);
            }
        }
    }
    Some(true)
}

fn canonical_factor_order(a: &(UniPoly, u32), b: &(UniPoly, u32)) -> Ordering {
    a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1))
}
