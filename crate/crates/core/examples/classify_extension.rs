//! Middle terms of 0 -> A -> G -> B -> 0, cut down by splitting filters and
//! cross-checked against the brute-force search.

use cpsum::extension::{brute_force_middle_terms, middle_candidates, resolve, ShortExactSequence, SplittingFilter};
use cpsum::FgAbGroup;

pub fn run_example() -> cpsum::Result<()> {
    let a: FgAbGroup = "Z_2".parse()?;
    let b: FgAbGroup = "Z_2^3".parse()?;
    let all = middle_candidates(&a, &b);
    println!("extensions of {b} by {a}:");
    for g in &all {
        println!("  {g}");
    }
    assert_eq!(all, brute_force_middle_terms(&a, &b)?);

    let seq = ShortExactSequence::new(a, b, "example");
    let r = resolve(&seq, &[SplittingFilter::NoElementOfOrder { n: 4 }])?;
    println!("without elements of order 4: {r}");

    let free: Vec<FgAbGroup> = middle_candidates(&"Z".parse()?, &"Z_4".parse()?);
    println!("extensions of Z_4 by Z: {free:?}");
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
