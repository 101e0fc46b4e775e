//! Tangential structure sets and counts of exotic manifolds.

use cpsum::surgery::{structure_set, surgery_sequence_report};
use cpsum::Tables;

pub fn run_example() -> cpsum::Result<()> {
    let tables = Tables::builtin();
    for n in 3..=7 {
        let s = structure_set(tables, 4, n)?;
        let count = s.exotic_count.map_or("n/a".to_string(), |c| c.to_string());
        println!("#_4 CP^{n}: structure set {}, exotic count {count}", s.image_of_eta);
    }
    println!("\n{}", surgery_sequence_report(tables, 3, 5)?);
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
