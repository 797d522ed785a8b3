//! Whether the optimal stripes beat every scanned checkerboard cell.
//!
//! Run with `cargo run --release --example restricted_verdict`.

use dipolar_stripes::kernel::ErrorBudget;
use dipolar_stripes::search::{restricted_verdict, restricted_verdict_on, RestrictedVerdict};

fn show(v: &RestrictedVerdict) {
    println!("J = {}  grid up to {} with stride {}", v.j, v.h_max, v.stride);
    println!("  h* = {}  E_s(h*) = {:.10} +- {:.1e}", v.optimal.h_star, v.optimal.energy.value, v.optimal.energy.error_bound);
    if let Some(t) = v.optimal.tie {
        println!("  tied with h = {t}");
    }
    let e = v.runner_up.energy.as_ref().expect("scanned");
    println!(
        "  lowest finite cell ({}, {}) [{}]  E = {:.10}",
        v.runner_up.h1, v.runner_up.h2, v.runner_up.class, e.value
    );
    println!("  gap {:.4e} +- {:.1e}: {:?}", v.gap, v.gap_error, v.status);
    println!(
        "  cells: thin {}, thick {}, long {}, residual {}, candidate {}",
        v.class_counts[0], v.class_counts[1], v.class_counts[2], v.class_counts[3], v.class_counts[4]
    );
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = ErrorBudget::default();
    show(&restricted_verdict_on(4.0, 64, 1, &budget)?);
    for j in [6.0, 10.0] {
        show(&restricted_verdict(j, &budget)?);
    }
    Ok(())
}
