//! The headline constants, computed, next to their published decimals.
//!
//! Run with `cargo run --release --example constants_table`.

use dipolar_stripes::cli::constants_table;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:<16} {:>12} {:>20} {:>10}", "constant", "printed", "computed", "error");
    for r in constants_table()? {
        let printed = r.printed.map_or("-".to_string(), |p| format!("{p}"));
        let err = r.error_bound.map_or("-".to_string(), |e| format!("{e:.1e}"));
        println!("{:<16} {:>12} {:>20.12} {:>10}", r.name, printed, r.computed, err);
    }
    Ok(())
}
