// Grothendieck classes: additivity on short exact sequences and devissage.
use commuting_k0::endo::{generated_submodule, radical_filtration};
use commuting_k0::kzero::{k0_class, verify_additivity};
use commuting_k0::oracle::{random_commuting_tuple, random_vector};
use commuting_k0::{CommutingTuple, FieldSpec, GrothendieckClass, Matrix, Result};

fn main() -> Result<()> {
    let q = FieldSpec::rationals();
    let d = CommutingTuple::single(Matrix::from_i64(q, &[&[0, 0], &[0, 1]]))?;
    println!("class of diag(0, 1):\n{}", k0_class(&d)?);

    let f2 = FieldSpec::prime(2)?;
    let j = Matrix::from_i64(f2, &[&[0, 1], &[0, 0]]);
    let pair = CommutingTuple::new(f2, 2, 2, vec![j, Matrix::zeros(f2, 2, 2)])?;
    println!("class of (J, 0) over F 2:\n{}", k0_class(&pair)?);

    let mut rng = commuting_k0::seeded_rng(11);
    let f5 = FieldSpec::prime(5)?;
    let t = random_commuting_tuple(f5, 2, 5, &mut rng);
    let class = k0_class(&t)?;
    println!("random pair over F 5, dim 5:\n{class}");
    println!("rank {} (= dim)", class.rank());

    let s = generated_submodule(&t, &[random_vector(f5, 5, &mut rng)])?;
    println!("submodule of dim {}: additive = {}", s.dim(), verify_additivity(&t, &s)?);

    let mut layered = GrothendieckClass::zero(f5, 2);
    for layer in radical_filtration(&t)? {
        layered = layered.checked_add(&k0_class(&layer)?)?;
    }
    println!("sum over radical layers equals the class: {}", layered == class);
    Ok(())
}
