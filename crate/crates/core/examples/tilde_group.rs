// The group of constant-term-1 rational functions and its free-abelian form.
use commuting_k0::kzero::{free_abelian_to_tilde, tilde_to_free_abelian};
use commuting_k0::poly::parse_uni;
use commuting_k0::{FieldSpec, Result, TildeClass};

fn main() -> Result<()> {
    let q = FieldSpec::rationals();
    let a = TildeClass::new(parse_uni("1 + 2*t + t^2", q)?, parse_uni("1 + t", q)?)?;
    let b = TildeClass::new(parse_uni("1 - t^2", q)?, parse_uni("1 + 3*t", q)?)?;
    println!("a = {a}");
    println!("b = {b}");
    println!("a * b = {}", a.checked_mul(&b)?);
    println!("a * a^-1 = {}", a.checked_mul(&a.inv())?);

    for x in [&a, &b] {
        let v = tilde_to_free_abelian(x)?;
        println!("{x} corresponds to\n{v}");
        assert_eq!(&free_abelian_to_tilde(&v)?, x);
    }
    let ab = tilde_to_free_abelian(&a.checked_mul(&b)?)?;
    let sum = tilde_to_free_abelian(&a)?.checked_add(&tilde_to_free_abelian(&b)?)?;
    println!("homomorphism holds on a, b: {}", ab == sum);

    let f5 = FieldSpec::prime(5)?;
    let c = TildeClass::new(parse_uni("1 + t^2", f5)?, parse_uni("1", f5)?)?;
    println!("over {f5}: {c} corresponds to\n{}", tilde_to_free_abelian(&c)?);
    Ok(())
}
