// Annihilator ideals as reduced Groebner bases, found by a monomial search.
use commuting_k0::endo::annihilator_ideal;
use commuting_k0::linalg::eval_poly_at_matrix;
use commuting_k0::poly::{parse_multi, UniPoly};
use commuting_k0::{CommutingTuple, FieldSpec, Matrix, Result};

fn show(name: &str, t: &CommutingTuple) -> Result<()> {
    let ideal = annihilator_ideal(t)?;
    let standard: Vec<String> = ideal.standard_monomials().iter().map(|m| m.to_string()).collect();
    println!("{name}: Ann = {ideal}, standard monomials {{{}}}", standard.join(", "));
    for g in ideal.gens() {
        assert!(eval_poly_at_matrix(g, t.mats())?.is_zero());
    }
    Ok(())
}

fn main() -> Result<()> {
    let f2 = FieldSpec::prime(2)?;
    let j = Matrix::from_i64(f2, &[&[0, 1], &[0, 0]]);
    show("(J, 0) over F 2", &CommutingTuple::new(f2, 2, 2, vec![j, Matrix::zeros(f2, 2, 2)])?)?;

    let f3 = FieldSpec::prime(3)?;
    let c = Matrix::companion(&UniPoly::from_i64s(f3, &[1, 0, 1]))?;
    show("companion(t^2 + 1) over F 3", &CommutingTuple::single(c)?)?;

    let q = FieldSpec::rationals();
    let a = Matrix::from_i64(q, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]);
    let b = &(&a * &a) - &a;
    let t = CommutingTuple::new(q, 2, 3, vec![a, b])?;
    show("(A, A^2 - A) over Q", &t)?;

    let ideal = annihilator_ideal(&t)?;
    let p = parse_multi("t1^3 + t2^2", q, 2)?;
    println!("normal form of {p} modulo Ann: {}", ideal.normal_form(&p)?);
    show("zero module", &CommutingTuple::zero(q, 2))?;
    Ok(())
}
