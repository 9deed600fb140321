// One variable: lambda_t = det(1 + t f), the split (rank, lambda_t), and its
// agreement with the class over maximal ideals.
use commuting_k0::kzero::{compare_splittings, comparison_image, k0_class, kelley_spanier_split, lambda_t};
use commuting_k0::poly::UniPoly;
use commuting_k0::{CommutingTuple, FieldSpec, Matrix, Result};

fn main() -> Result<()> {
    let q = FieldSpec::rationals();
    let f3 = FieldSpec::prime(3)?;
    let cases = [
        ("diag(0, 1) over Q", Matrix::from_i64(q, &[&[0, 0], &[0, 1]])),
        ("J2(0) over Q", Matrix::from_i64(q, &[&[0, 1], &[0, 0]])),
        ("identity over Q", Matrix::identity(q, 2)),
        ("companion(t^2 + 1) over F 3", Matrix::companion(&UniPoly::from_i64s(f3, &[1, 0, 1]))?),
        ("companion(t^3 - t + 2) over Q", Matrix::companion(&UniPoly::from_i64s(q, &[2, -1, 0, 1]))?),
    ];
    for (name, m) in cases {
        let t = CommutingTuple::single(m.clone())?;
        let (rank, tilde) = kelley_spanier_split(&t)?;
        let (rank2, tilde2) = comparison_image(&k0_class(&t)?)?;
        println!("{name}: lambda_t = {}", lambda_t(&m)?);
        println!("  split        rank {rank}, tilde {tilde}");
        println!("  via classes  rank {rank2}, tilde {tilde2}");
        println!("  agree: {}", compare_splittings(&t)?);
    }
    Ok(())
}
