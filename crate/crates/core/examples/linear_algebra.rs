// Exact matrices: echelon form, kernels, characteristic and minimal polynomials.
use commuting_k0::{FieldSpec, Matrix, Result};

fn main() -> Result<()> {
    let q = FieldSpec::rationals();
    let m = Matrix::from_i64(q, &[&[2, 1, 0], &[0, 2, 0], &[0, 0, 3]]);
    println!("m = {m}");
    println!("charpoly = {}", m.charpoly()?);
    println!("minimal polynomial = {}", m.minimal_polynomial()?);
    let (r, pivots) = (&m - &Matrix::identity(q, 3).scale(&q.from_i64(2))).rref();
    println!("rref(m - 2) = {r}, pivots {pivots:?}");
    let k = (&m - &Matrix::identity(q, 3).scale(&q.from_i64(2))).kernel_basis();
    println!("ker(m - 2) has basis {:?}", k.basis().iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());

    let f2 = FieldSpec::prime(2)?;
    let n = Matrix::from_i64(f2, &[&[1, 1, 1], &[0, 1, 1], &[0, 0, 1]]);
    println!("over {f2}: {n} has rank {}, charpoly {}, minpoly {}", n.rank(), n.charpoly()?, n.minimal_polynomial()?);
    Ok(())
}
