//! Real and complex K-groups of #_k CP^n with named generators.

use cpsum::ktheory::{complex_k0, ko_group, verify_sandwich};
use cpsum::Tables;

pub fn run_example() -> cpsum::Result<()> {
    println!("K^0(#_2 CP^3) = {}", complex_k0(2, 3)?);
    for s in 0..8 {
        println!("KO^-{s}(#_3 CP^6) = {}", ko_group(s, 3, 6)?.group);
    }
    println!("\n{}", ko_group(6, 2, 5)?);
    let report = verify_sandwich(Tables::builtin(), 3, 2, 8)?;
    println!("\n{report}");
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
