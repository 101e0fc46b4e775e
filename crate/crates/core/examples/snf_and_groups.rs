//! Smith normal form of a relation matrix and the group it presents.

use cpsum::fgab::{group_from_relations, smith_form, Homomorphism};
use cpsum::{FgAbGroup, IntegerMatrix};

pub fn run_example() -> cpsum::Result<()> {
    // one relation per row: 2a + 6b = 0 and 4a + 8b = 0
    let m = IntegerMatrix::from_rows(2, &[[2, 6], [4, 8]])?;
    let s = smith_form(&m);
    println!("invariant factors: {:?}", s.invariant_factors());
    let g = group_from_relations(2, &m)?;
    println!("presented group: {g}");
    assert_eq!(g, "Z_2 + Z_4".parse::<FgAbGroup>()?);

    let z6: FgAbGroup = "Z_6".parse()?;
    let z3: FgAbGroup = "Z_3".parse()?;
    let proj = Homomorphism::new(z6, z3, IntegerMatrix::from_rows(1, &[[1]])?)?;
    println!("Z_6 -> Z_3: kernel {}, image {}", proj.kernel(), proj.image());
    println!("Z_12 localized at 2: {}", "Z_12".parse::<FgAbGroup>()?.localize_at_prime(2)?);
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
