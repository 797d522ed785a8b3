//! Compare accelerated checkerboard energies with the brute-force torus Hamiltonian.
//!
//! Run with `cargo run --release --example torus_oracle`.

use dipolar_stripes::energies::{checkerboard_energy, energy_per_site, CheckerboardSpec, SpinConfiguration};
use dipolar_stripes::kernel::ErrorBudget;

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = ErrorBudget::with_tol(1e-6)?;
    let j = 2.0;
    println!("{:>3} {:>3} {:>4} {:>20} {:>20} {:>10} {:>10}", "h1", "h2", "L", "accelerated", "torus", "diff", "cert");
    for h1 in 1..=4u64 {
        for h2 in 1..=4u64 {
            let side = 2 * h1 * h2 / gcd(h1, h2);
            let fast = checkerboard_energy(CheckerboardSpec::new(h1, h2)?, j, &budget)?;
            let config = SpinConfiguration::checkerboard(side as usize, h1, h2)?;
            let slow = energy_per_site(&config, j, &budget)?;
            println!(
                "{h1:>3} {h2:>3} {side:>4} {:>20.15} {:>20.15} {:>10.2e} {:>10.2e}",
                fast.value,
                slow.value,
                (fast.value - slow.value).abs(),
                fast.error_bound + slow.error_bound
            );
        }
    }
    Ok(())
}
