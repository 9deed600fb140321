// Brute-force composition series over small prime fields against the fast class.
use commuting_k0::kzero::k0_class;
use commuting_k0::oracle::{all_invariant_submodules, all_matrices, k0_class_oracle, random_commuting_tuple, DEFAULT_BOUND};
use commuting_k0::{CommutingTuple, FieldSpec, Matrix, Result};

fn main() -> Result<()> {
    let f2 = FieldSpec::prime(2)?;
    let j = CommutingTuple::single(Matrix::from_i64(f2, &[&[0, 1], &[0, 0]]))?;
    println!("J2(0) over F 2 has {} invariant subspaces", all_invariant_submodules(&j, DEFAULT_BOUND)?.len());

    let mut agree = 0;
    let all = all_matrices(f2, 2, DEFAULT_BOUND)?;
    for m in &all {
        let t = CommutingTuple::single(m.clone())?;
        if k0_class(&t)? == k0_class_oracle(&t, DEFAULT_BOUND)? {
            agree += 1;
        }
    }
    println!("all 2x2 matrices over F 2: {agree}/{} agree", all.len());

    let f3 = FieldSpec::prime(3)?;
    let mut rng = commuting_k0::seeded_rng(5);
    let t = random_commuting_tuple(f3, 2, 4, &mut rng);
    println!("random pair over F 3:\nfast\n{}\noracle\n{}", k0_class(&t)?, k0_class_oracle(&t, DEFAULT_BOUND)?);
    Ok(())
}
