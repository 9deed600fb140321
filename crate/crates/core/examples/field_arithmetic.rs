// Exact scalars over Q and prime fields.
use commuting_k0::{FieldSpec, Result};

fn main() -> Result<()> {
    let q = FieldSpec::rationals();
    let a = q.parse_scalar("3/4")?;
    let b = q.parse_scalar("-5/6")?;
    println!("over {q}: {a} + {b} = {}", &a + &b);
    println!("over {q}: {a} / {b} = {}", a.checked_div(&b)?);

    let f7 = FieldSpec::prime(7)?;
    let x = f7.from_i64(3);
    println!("over {f7}: 3^-1 = {}, -3 = {}, 3^6 = {}", x.inv()?, -&x, x.pow(6));
    println!("over {f7}: -1/2 reads as {}", f7.parse_scalar("-1/2")?);

    match FieldSpec::prime(91) {
        Ok(_) => println!("91 accepted"),
        Err(e) => println!("F 91 rejected: {e}"),
    }
    match a.checked_add(&x) {
        Ok(_) => println!("mixed fields added"),
        Err(e) => println!("Q + F 7 rejected: {e}"),
    }
    Ok(())
}
