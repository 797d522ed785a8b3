//! Torus energy of random straight-line configurations against the weighted
//! sum of tile energies.
//!
//! Run with `cargo run --release --example chessboard_estimate`.

use dipolar_stripes::kernel::ErrorBudget;
use dipolar_stripes::rp::{chessboard_estimate_check, sample_config, StraightLineConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = ErrorBudget::default();
    let j = 4.0;

    println!("equality cases");
    let checker = StraightLineConfig::checkerboard(24, 6, 4)?;
    let stripes = StraightLineConfig::stripes(24, 3)?;
    for (name, cfg) in [("checkerboard 6x4", &checker), ("stripes width 3", &stripes)] {
        let r = chessboard_estimate_check(cfg, j, &budget)?;
        println!("  {name:<18} lhs {:.10}  rhs {:.10}  margin {:+.2e}  tight {}", r.lhs.value, r.rhs.value, r.margin, r.tight());
    }

    println!("\nrandom configurations, L = 24, J = {j}");
    let mut violations = 0;
    for seed in 0..20 {
        let cfg = sample_config(24, 0.25, seed)?;
        let r = chessboard_estimate_check(&cfg, j, &budget)?;
        if !r.holds() {
            violations += 1;
        }
        println!(
            "  seed {seed:>2}  {:>3} tiles  lhs {:>12.8}  rhs {:>12.8}  margin {:+.3e}{}",
            r.tiles,
            r.lhs.value,
            r.rhs.value,
            r.margin,
            r.rhs_alternative.as_ref().map_or(String::new(), |l| format!("  (literal ring sides {:.8})", l.value)),
        );
    }
    println!("\nviolations: {violations}");
    Ok(())
}
