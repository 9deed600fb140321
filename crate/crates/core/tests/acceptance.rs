// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use commuting_k0::cli::{run_text, Command};
use commuting_k0::endo::{generated_submodule, radical_filtration};
use commuting_k0::kzero::{
    compare_splittings, free_abelian_to_tilde, k0_class, lambda_t, tilde_to_free_abelian,
    verify_additivity,
};
use commuting_k0::oracle::{
    all_matrices, k0_class_oracle, random_commuting_tuple, random_matrix, random_scalar,
    random_structured_matrix, random_tilde, random_uni, random_vector, DEFAULT_BOUND,
};
use commuting_k0::poly::factor::is_irreducible_bruteforce;
use commuting_k0::poly::factor_univariate;
use commuting_k0::{seeded_rng, CommutingTuple, FieldSpec, GrothendieckClass, Matrix, Rng, UniPoly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng as _;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn fp(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn four_fields() -> [FieldSpec; 4] {
    [fp(2), fp(3), fp(5), FieldSpec::rationals()]
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Tuples over the four fields with `n <= 3`, `d <= 6`.
fn mixed_tuples(count: usize, rng: &mut Rng) -> Vec<CommutingTuple> {
    (0..count)
        .map(|i| {
            let field = four_fields()[i % 4];
            let n = rng.random_range(1..=3);
            let d = rng.random_range(0..=6);
            random_commuting_tuple(field, n, d, rng)
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let f2 = fp(2);
    let all = all_matrices(f2, 3, DEFAULT_BOUND).map_err(err)?;
    ensure!(all.len() == 512, "expected 512 matrices, found {}", all.len());
    for m in &all {
        let t = CommutingTuple::single(m.clone()).map_err(err)?;
        let fast = k0_class(&t).map_err(err)?;
        let slow = k0_class_oracle(&t, DEFAULT_BOUND).map_err(err)?;
        ensure!(fast == slow, "mismatch on {m}: {fast} vs {slow}");
    }
    let mut rng = seeded_rng(1);
    for i in 0..100 {
        let field = if i % 2 == 0 { fp(2) } else { fp(3) };
        let d = rng.random_range(1..=4);
        let t = random_commuting_tuple(field, 2, d, &mut rng);
        let fast = k0_class(&t).map_err(err)?;
        let slow = k0_class_oracle(&t, DEFAULT_BOUND).map_err(err)?;
        ensure!(fast == slow, "mismatch on {t:?}: {fast} vs {slow}");
    }
    Ok("512 single F_2 3x3 matrices and 100 random pairs over F_2/F_3 agree with the oracle".into())
}

fn criterion_2() -> Outcome {
    let mut rng = seeded_rng(2);
    for t in mixed_tuples(500, &mut rng) {
        let c = k0_class(&t).map_err(err)?;
        ensure!(c.rank() == t.dim() as i64, "rank {} != dim {} for {t:?}", c.rank(), t.dim());
        ensure!(c.is_effective(), "non-effective class {c} for {t:?}");
    }
    Ok("sum mult * residue degree = dim on 500 tuples".into())
}

fn criterion_3_and_4() -> (Outcome, Outcome) {
    let mut rng = seeded_rng(3);
    let tuples = mixed_tuples(200, &mut rng);
    let additivity = (|| {
        let mut checks = 0;
        for t in &tuples {
            for _ in 0..3 {
                let v = random_vector(t.field(), t.dim(), &mut rng);
                let s = generated_submodule(t, &[v]).map_err(err)?;
                ensure!(verify_additivity(t, &s).map_err(err)?, "additivity fails on {t:?}, {s:?}");
                checks += 1;
            }
        }
        Ok(format!("[V] = [S] + [V/S] on {checks} generated submodules"))
    })();
    let devissage = (|| {
        for t in &tuples {
            let mut sum = GrothendieckClass::zero(t.field(), t.nvars());
            for layer in radical_filtration(t).map_err(err)? {
                sum = sum.checked_add(&k0_class(&layer).map_err(err)?).map_err(err)?;
            }
            ensure!(sum == k0_class(t).map_err(err)?, "devissage fails on {t:?}");
        }
        Ok("class equals the sum over radical layers on 200 tuples".to_string())
    })();
    (additivity, devissage)
}

fn criterion_5() -> Outcome {
    let mut rng = seeded_rng(5);
    for field in four_fields() {
        for _ in 0..200 {
            let d = rng.random_range(0..=6);
            let t = CommutingTuple::single(random_structured_matrix(field, d, &mut rng)).map_err(err)?;
            ensure!(compare_splittings(&t).map_err(err)?, "splittings differ on {t:?}");
        }
        for _ in 0..20 {
            let a = random_matrix(field, rng.random_range(0..=4), &mut rng);
            let b = random_matrix(field, rng.random_range(0..=4), &mut rng);
            let ab = Matrix::block_diag(field, &[&a, &b]).map_err(err)?;
            let prod = &lambda_t(&a).map_err(err)? * &lambda_t(&b).map_err(err)?;
            ensure!(lambda_t(&ab).map_err(err)? == prod, "lambda_t not multiplicative on {a}, {b}");
            let d = rng.random_range(0..=6);
            let mut n = Matrix::zeros(field, d, d);
            for i in 0..d {
                for j in i + 1..d {
                    n.set(i, j, random_scalar(field, &mut rng));
                }
            }
            ensure!(lambda_t(&n).map_err(err)?.is_one(), "lambda_t of nilpotent {n} is not 1");
            ensure!(lambda_t(&n.transpose()).map_err(err)?.is_one(), "lambda_t of nilpotent is not 1");
        }
    }
    Ok("compare_splittings on 800 single matrices; lambda_t multiplicative, 1 on nilpotents".into())
}

fn criterion_6() -> Outcome {
    let mut rng = seeded_rng(6);
    for field in [FieldSpec::rationals(), fp(5)] {
        for _ in 0..200 {
            let a = random_tilde(field, 8, &mut rng);
            let b = random_tilde(field, 8, &mut rng);
            let va = tilde_to_free_abelian(&a).map_err(err)?;
            let vb = tilde_to_free_abelian(&b).map_err(err)?;
            let ab = a.checked_mul(&b).map_err(err)?;
            let vab = tilde_to_free_abelian(&ab).map_err(err)?;
            ensure!(vab == va.checked_add(&vb).map_err(err)?, "not a homomorphism on {a}, {b}");
            ensure!(free_abelian_to_tilde(&va).map_err(err)? == a, "round trip fails on {a}");
            ensure!(va.is_zero() == a.is_one(), "kernel check fails on {a}");
            let v = va.checked_sub(&vb).map_err(err)?;
            let back = free_abelian_to_tilde(&v).map_err(err)?;
            ensure!(tilde_to_free_abelian(&back).map_err(err)? == v, "round trip fails on {v}");
            ensure!(back == a.checked_mul(&b.inv()).map_err(err)?, "inverse map disagrees on {v}");
        }
    }
    Ok("homomorphism and both round trips on 200 pairs over Q and F_5".into())
}

/// Rational roots of an integer polynomial, by the rational root test.
fn has_rational_root(q: &UniPoly) -> bool {
    let lcm = q
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.as_rational().unwrap().denom()));
    let ints: Vec<BigInt> =
        q.coeffs().iter().map(|c| (c.as_rational().unwrap() * &lcm).to_integer()).collect();
    let (a0, an) = (ints[0].abs(), ints[ints.len() - 1].abs());
    if a0.is_zero() {
        return true;
    }
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n = n.to_u64().expect("small test coefficients");
        (1..=n).filter(|d| n % d == 0).map(BigInt::from).collect()
    };
    for r in divisors(&a0) {
        for s in divisors(&an) {
            for sign in [1, -1] {
                let x = q.field().from_ratio(&(&r * sign), &s).unwrap();
                if q.eval(&x).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

fn criterion_7() -> Outcome {
    let mut rng = seeded_rng(7);
    let mut swept = 0;
    for field in [fp(2), fp(3), fp(5), fp(101), FieldSpec::rationals()] {
        for i in 0..500 {
            let f = if i % 2 == 0 {
                random_uni(field, rng.random_range(0..=12), &mut rng)
            } else {
                // products of small random polynomials, to force repeated factors
                let mut f = UniPoly::one(field);
                while f.degree().unwrap_or(0) < 8 {
                    let g = random_uni(field, rng.random_range(1..=3), &mut rng);
                    if !g.is_zero() {
                        f = &f * &g;
                    }
                }
                f
            };
            if f.is_zero() {
                continue;
            }
            let fac = factor_univariate(&f).map_err(err)?;
            ensure!(fac.expand() == f, "reconstruction fails on {f} over {field}");
            for (k, (q, _)) in fac.factors.iter().enumerate() {
                ensure!(q.is_monic(), "non-monic factor {q}");
                for (r, _) in &fac.factors[..k] {
                    if r.degree() < q.degree() {
                        ensure!(!r.divides(q).map_err(err)?, "{r} divides {q}");
                    }
                    ensure!(r != q, "repeated factor {q}");
                }
                let deg = q.degree().unwrap_or(0);
                if (2..=3).contains(&deg) {
                    swept += 1;
                    match field.modulus() {
                        Some(_) => {
                            let root = field.elements().unwrap().any(|x| q.eval(&x).is_zero());
                            ensure!(!root, "{q} has a root over {field}");
                            ensure!(is_irreducible_bruteforce(q) == Some(true), "{q} reducible over {field}");
                        }
                        None => ensure!(!has_rational_root(q), "{q} has a rational root"),
                    }
                }
            }
        }
    }
    Ok(format!(
        "reconstruction on 2500 polynomials over F_2, F_3, F_5, F_101, Q; {swept} factors of degree 2..3 swept"
    ))
}

fn criterion_8() -> Outcome {
    let cases = [
        (Command::Class, "field Q\nvars 1\ndim 2\n[[0,0];[0,1]]", "1 * [t]\n1 * [t - 1]"),
        (Command::Split, "field Q\nvars 1\ndim 2\n[[0,1];[0,0]]", "rank 2\ntilde 1"),
        (Command::Class, "field F 2\nvars 2\ndim 2\n[[0,1];[0,0]]\n[[0,0];[0,0]]", "2 * [t1, t2]"),
        (Command::Class, "field F 3\nvars 1\ndim 2\n[[0,-1];[1,0]]", "1 * [t^2 + 1]"),
    ];
    for (cmd, input, expected) in cases {
        let (out, code) = run_text(cmd, input, false, commuting_k0::DEFAULT_SEED);
        ensure!(code == 0 && out == expected, "{cmd:?} gave {out:?} (exit {code}), expected {expected:?}");
    }
    let (json, code) = run_text(Command::Class, cases[3].1, true, 0);
    let v: serde_json::Value = serde_json::from_str(&json).map_err(err)?;
    let expected = serde_json::json!([{ "generators": ["t^2 + 1"], "degree": 2, "multiplicity": 1 }]);
    ensure!(code == 0 && v["class"] == expected, "JSON class was {json}");
    Ok("four golden outputs and the JSON form of {(t^2 + 1): 1}".into())
}

fn report(id: &str, name: &str, start: Instant, outcome: std::thread::Result<Outcome>) -> bool {
    let secs = start.elapsed().as_secs_f64();
    let (ok, detail) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(e)) => (false, e),
        Err(_) => (false, "panicked".to_string()),
    };
    println!("criterion {id} {name}: {} ({secs:.2}s) {detail}", if ok { "PASS" } else { "FAIL" });
    ok
}

fn main() {
    let mut all = true;
    let start = Instant::now();
    all &= report("1", "oracle equivalence", start, catch_unwind(criterion_1));
    let start = Instant::now();
    all &= report("2", "dimension bookkeeping", start, catch_unwind(criterion_2));
    let start = Instant::now();
    match catch_unwind(AssertUnwindSafe(criterion_3_and_4)) {
        Ok((a, d)) => {
            all &= report("3", "additivity", start, Ok(a));
            all &= report("4", "devissage", start, Ok(d));
        }
        Err(_) => {
            all &= report("3", "additivity", start, Ok(Err("panicked".into())));
            all &= report("4", "devissage", start, Ok(Err("panicked".into())));
        }
    }
    let start = Instant::now();
    all &= report("5", "n=1 comparison and lambda_t", start, catch_unwind(criterion_5));
    let start = Instant::now();
    all &= report("6", "tilde group homomorphism", start, catch_unwind(criterion_6));
    let start = Instant::now();
    all &= report("7", "factorization", start, catch_unwind(criterion_7));
    let start = Instant::now();
    all &= report("8", "golden CLI outputs", start, catch_unwind(criterion_8));
    if !all {
        std::process::exit(1);
    }
}
