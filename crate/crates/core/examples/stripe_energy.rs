//! Stripe energies `E_s(h)`, the optimal width `h*(J)` and the asymptotic form
//! `(2/h)(J - 2 log h - alpha_s)`.
//!
//! Run with `cargo run --release --example stripe_energy`.

use dipolar_stripes::energies::stripe::{c_star, stripe_energy_asymptotic};
use dipolar_stripes::energies::{optimal_stripe_width, stripe_energy};
use dipolar_stripes::kernel::ErrorBudget;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = ErrorBudget::default();

    println!("E_s(h) at J = 4");
    for h in [1, 2, 3, 5, 6, 7, 10, 20] {
        let e = stripe_energy(h, 4.0, &budget)?;
        println!("  h = {h:>2}  {:>14.10} +- {:.1e}", e.value, e.error_bound);
    }

    println!("\nremainder h^2 |E_s(h) - asymptotic| at J = 0");
    for h in [64u64, 128, 256, 512] {
        let e = stripe_energy(h, 0.0, &budget)?;
        let r = (h * h) as f64 * (e.value - stripe_energy_asymptotic(h as f64, 0.0)).abs();
        println!("  h = {h:>3}  {r:.6}");
    }

    println!("\noptimal width");
    for j in [2.0, 4.0, 6.0, 8.0, 10.0] {
        let o = optimal_stripe_width(j, &budget)?;
        let scale = c_star() * (j / 2.0_f64).exp();
        println!(
            "  J = {j:>4}  h* = {:>4}  c* e^(J/2) = {scale:>8.3}  E_s(h*) = {:.10}{}",
            o.h_star,
            o.energy.value,
            o.tie.map_or(String::new(), |t| format!("  tied with {t}"))
        );
    }
    Ok(())
}
