//! Loading replacement table data and watching the checks react.

use cpsum::ktheory::verify_sandwich;
use cpsum::Tables;

pub fn run_example() -> cpsum::Result<()> {
    let text = Tables::builtin_text();
    // pretend KO^-3 of CP^n vanished for n = 3 mod 4
    let corrupted: String = text
        .lines()
        .map(|l| {
            if l.contains(r#""kind":"ko-cp""#) && l.contains(r#""n_mod_4":3"#) && l.contains(r#""s":3"#) {
                l.replace(r#""torsion":[2]"#, r#""torsion":[]"#)
                    .replace(r#"[{"symbol":"x","relation":{"torsion":{"order":2}}}]"#, "[]")
            } else {
                l.to_string()
            }
        })
        .map(|l| l + "\n")
        .collect();
    let tables = Tables::parse(&corrupted)?;
    println!("{}", verify_sandwich(Tables::builtin(), 3, 2, 8)?);
    println!("{}", verify_sandwich(&tables, 3, 2, 8)?);
    Ok(())
}

fn main() {
    run_example().expect("example runs");
}
