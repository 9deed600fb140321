// Radical filtration and decomposition into local pieces, one per maximal ideal.
use commuting_k0::endo::{primary_decomposition, radical_filtration, radical_submodule};
use commuting_k0::poly::UniPoly;
use commuting_k0::{CommutingTuple, FieldSpec, Matrix, Result};

fn describe(name: &str, t: &CommutingTuple) -> Result<()> {
    println!("{name}");
    println!("  radical dim {}", radical_submodule(t)?.dim());
    let layers: Vec<usize> = radical_filtration(t)?.iter().map(|l| l.dim()).collect();
    println!("  radical layers {layers:?}");
    for piece in primary_decomposition(t)? {
        println!(
            "  piece {} dim {} length {}",
            piece.key,
            piece.submodule.dim(),
            piece.length()
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    let q = FieldSpec::rationals();
    let m = Matrix::from_i64(q, &[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
    describe("J2(0) + identity over Q", &CommutingTuple::single(m)?)?;

    let f3 = FieldSpec::prime(3)?;
    let c = Matrix::companion(&UniPoly::from_i64s(f3, &[1, 0, 1]))?;
    let m = Matrix::block_diag(f3, &[&c, &Matrix::identity(f3, 1)])?;
    describe("companion(t^2 + 1) + [1] over F 3", &CommutingTuple::single(m)?)?;

    // both variables have irreducible minimal polynomial t^2 - 2, yet the
    // module splits along t1 = t2 and t1 = -t2
    let c = Matrix::companion(&UniPoly::from_i64s(q, &[-2, 0, 1]))?;
    let i = Matrix::identity(q, 2);
    let t = CommutingTuple::new(q, 2, 4, vec![c.kronecker(&i)?, i.kronecker(&c)?])?;
    describe("Q[t1, t2]/(t1^2 - 2, t2^2 - 2)", &t)?;
    Ok(())
}
