//! Stable cohomotopy of #_k CP^n for 3 <= n <= 8.

use cpsum::cohomotopy::pi_s0_connected_sum;
use cpsum::Tables;

pub fn run_example() -> cpsum::Result<()> {
    let tables = Tables::builtin();
    println!("{:>2} | {:<28} | {:<28} | {:<28}", "n", "k = 1", "k = 2", "k = 3");
    for n in 3..=8 {
        let row: Vec<String> = (1..=3)
            .map(|k| pi_s0_connected_sum(tables, k, n).map(|r| r.to_string()))
            .collect::<cpsum::Result<_>>()?;
        println!("{n:>2} | {:<28} | {:<28} | {:<28}", row[0], row[1], row[2]);
    }
    let r = pi_s0_connected_sum(tables, 2, 7)?;
    println!("\n0 -> {} -> G -> {} -> 0", r.sequence.sub, r.sequence.quot);
    for f in &r.filters {
        println!("filter: {f}");
    }
    println!("G = {r}");
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
