//! Regions of the `(h1, h2)` plane and the energy minimum over a grid.
//!
//! Run with `cargo run --release --example phase_scan`.

use dipolar_stripes::energies::Side;
use dipolar_stripes::kernel::ErrorBudget;
use dipolar_stripes::search::{classify, scan, Class};

fn glyph(c: Class) -> char {
    match c {
        Class::ThinExcluded => '.',
        Class::ThickExcluded => '#',
        Class::LongExcluded => '=',
        Class::ResidualR => 'R',
        Class::StripeCandidate => ' ',
    }
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let j = 8.0;
    let step = 16;
    println!("regions at J = {j} (h2 down, h1 across, step {step}): . thin  # thick  = long  R residual");
    for b in (1..=24).map(|k| k * step) {
        let row: String = (1..=48)
            .map(|k| {
                let a = k * step;
                classify(a, b, j).map(|c| glyph(c.class)).unwrap_or('?')
            })
            .collect();
        println!("{b:>5} |{row}");
    }

    let r = scan(4.0, 32, 1, &ErrorBudget::default())?;
    let f = r.finite_minimum();
    let s = r.stripe_minimum();
    let value = |c: &dipolar_stripes::search::PhaseCell| c.energy.as_ref().map_or(f64::NAN, |e| e.value);
    println!("\nscan at J = 4 up to 32: {} cells", r.cells.len());
    println!("  lowest finite cell ({}, {}) [{}]  {:.10}", f.h1, f.h2, f.class, value(f));
    println!("  lowest stripe      ({}, {})  {:.10}", s.h1, s.h2, value(s));
    let m = r.global_minimum();
    println!("  global minimum on the stripe column: {}", m.h1 == Side::Infinite);
    Ok(())
}
