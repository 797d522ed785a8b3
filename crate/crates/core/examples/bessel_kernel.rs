//! The modified Bessel function `K1` that drives every resummed series.
//!
//! Run with `cargo run --release --example bessel_kernel`.

use std::f64::consts::PI;

use dipolar_stripes::kernel::lattice::{axis_sum, axis_sum_direct};
use dipolar_stripes::kernel::{bessel_k1, bessel_k1_scaled, ErrorBudget};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>6} {:>24} {:>24}", "x", "K1(x)", "e^x K1(x)");
    for x in [0.01, 0.5, 1.0, 2.0, 2.0 * PI, 10.0, 50.0] {
        println!("{x:>6.3} {:>24.16e} {:>24.16}", bessel_k1(x)?, bessel_k1_scaled(x)?);
    }

    println!("\nsum_n (a^2 + n^2)^-3/2: resummed against direct");
    let budget = ErrorBudget::default();
    for a in [0.5, 1.0, 3.0] {
        let fast = axis_sum(a, &budget)?;
        let slow = axis_sum_direct(a, 200_000)?;
        println!(
            "  a = {a}: {:.15} +- {:.1e}   direct {:.15} +- {:.1e}",
            fast.value, fast.error_bound, slow.value, slow.error_bound
        );
    }
    Ok(())
}
