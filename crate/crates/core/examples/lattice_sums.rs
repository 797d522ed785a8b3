//! Weighted lattice sums `sum w1(n1) w2(n2) |n|^-3` and the periodic kernel.
//!
//! Run with `cargo run --release --example lattice_sums`.

use dipolar_stripes::kernel::lattice::{periodic_kernel, weighted_lattice_sum, WeightProfile};
use dipolar_stripes::kernel::ErrorBudget;
use dipolar_stripes::lemmas::{halfplane_tile_sum, lemma_III_sums, s1_sum, s4_sum};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = ErrorBudget::default();

    let line = WeightProfile::constant_line(1.0);
    let point = WeightProfile::indicator(1, 1)?;
    let r = weighted_lattice_sum(&point, &line, 1.0, &budget)?;
    println!("sum_n (1 + n^2)^-3/2          {:.15} +- {:.1e}", r.value, r.error_bound);

    for h2 in [2u64, 8, 32] {
        let a = halfplane_tile_sum(h2, h2, &budget)?;
        let s1 = s1_sum(h2, &budget)?;
        let s4 = s4_sum(h2, &budget)?;
        println!("h2 = {h2:>2}  half-plane {:.10}  S1 {:.10}  S4 {:.10}", a.value, s1.value, s4.value);
    }

    let s = lemma_III_sums(40, 10, &budget)?;
    println!(
        "long tile (40, 10): Pi {:.8}  Xi {:.8}  P {:.8}  Q {:.8}",
        s.pi.value, s.xi.value, s.p.value, s.q.value
    );

    println!("\nperiodic kernel on the 8 x 8 torus");
    for d in [(1, 0), (1, 1), (4, 0), (4, 4)] {
        let k = periodic_kernel(d, 8, &budget)?;
        println!("  K_8{d:?} = {:.12} +- {:.1e}", k.value, k.error_bound);
    }
    Ok(())
}
