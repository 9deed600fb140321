// Univariate factorization over prime fields and Q, and the signed reversal.
use commuting_k0::poly::{factor_univariate, parse_uni, signed_reversal, signed_reversal_inverse};
use commuting_k0::{FieldSpec, Result};

fn main() -> Result<()> {
    let cases = [
        (FieldSpec::prime(2)?, "t^2 + 1"),
        (FieldSpec::prime(3)?, "t^6 + 1"),
        (FieldSpec::prime(5)?, "t^4 + 4"),
        (FieldSpec::rationals(), "t^4 - 1"),
        (FieldSpec::rationals(), "2*t^4 - 10*t^2 + 12"),
        (FieldSpec::rationals(), "t^4 - 10*t^2 + 1"),
    ];
    for (field, text) in cases {
        let f = parse_uni(text, field)?;
        let fac = factor_univariate(&f)?;
        let parts: Vec<String> = fac.factors.iter().map(|(q, e)| format!("({q})^{e}")).collect();
        println!("{field}: {f} = {} * {}", fac.unit, parts.join(" * "));
        assert_eq!(fac.expand(), f);
    }

    let q = FieldSpec::rationals();
    for text in ["t - 1", "t", "t^2 + 1", "t^2 - 3*t + 2"] {
        let p = parse_uni(text, q)?;
        let r = signed_reversal(&p)?;
        println!("signed reversal of {p} is {r}");
        if p.coeff(0) != q.zero() {
            assert_eq!(signed_reversal_inverse(&r)?, p);
        }
    }
    Ok(())
}
