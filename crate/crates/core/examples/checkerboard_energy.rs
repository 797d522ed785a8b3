//! Checkerboard energies `E(h1, h2)`, including the infinite sides that give
//! back the stripes and the uniform state.
//!
//! Run with `cargo run --release --example checkerboard_energy`.

use dipolar_stripes::energies::{checkerboard_energy, stripe_energy, CheckerboardSpec, Side};
use dipolar_stripes::kernel::ErrorBudget;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = ErrorBudget::default();
    let j = 4.0;

    println!("E(h1, h2) at J = {j}");
    let sides = [1u64, 2, 4, 6, 12];
    print!("{:>6}", "");
    for b in sides {
        print!("{b:>12}");
    }
    println!();
    for a in sides {
        print!("{a:>6}");
        for b in sides {
            print!("{:>12.6}", checkerboard_energy(CheckerboardSpec::new(a, b)?, j, &budget)?.value);
        }
        println!();
    }

    println!("\nsymmetry and limits");
    let ab = checkerboard_energy(CheckerboardSpec::new(7, 3)?, j, &budget)?;
    let ba = checkerboard_energy(CheckerboardSpec::new(3, 7)?, j, &budget)?;
    println!("  E(7, 3) = {:.12}  E(3, 7) = {:.12}", ab.value, ba.value);
    let inf = checkerboard_energy(CheckerboardSpec::new(Side::Infinite, 6)?, j, &budget)?;
    println!("  E(inf, 6) = {:.12}  E_s(6) = {:.12}", inf.value, stripe_energy(6, j, &budget)?.value);
    let uniform = checkerboard_energy(CheckerboardSpec::new(Side::Infinite, Side::Infinite)?, j, &budget)?;
    println!("  E(inf, inf) = {:.12}", uniform.value);
    Ok(())
}
