//! Normal invariants [#_k CP^n, F/O] and [#_k CP^n, F/PL], and the
//! generators of the image of complexification.

use cpsum::surgery::{f_over_o, f_over_pl, image_c_star_generators, kernel_f_star_rank};
use cpsum::Tables;

pub fn run_example() -> cpsum::Result<()> {
    let tables = Tables::builtin();
    for n in 3..=7 {
        let fo = f_over_o(tables, 2, n)?;
        println!("{fo}  (free part from KO^0: rank {})", kernel_f_star_rank(2, n)?);
    }
    for n in 3..=7 {
        println!("{}", f_over_pl(3, n)?);
    }
    for g in image_c_star_generators(2, 7)? {
        println!("{g}");
    }
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
