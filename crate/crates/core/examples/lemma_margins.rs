//! Analytic margins of the exclusion regions next to the energy comparisons
//! they are meant to guarantee, plus the finite-torus remainders.
//!
//! Run with `cargo run --release --example lemma_margins`.

use dipolar_stripes::kernel::ErrorBudget;
use dipolar_stripes::lemmas::{
    appendix_R_II, appendix_R_III, lemma_III_energy_check, lemma_II_energy_check, lemma_IV_energy_check,
    lemma_I_energy_check, MarginReport,
};

fn show(r: &MarginReport) {
    let c = r.energy_check.as_ref().expect("energy check requested");
    println!(
        "{:>3} J={:<4} ({:>4}, {:>4})  margin {:>9.4}  difference {:>12.4e} +- {:.1e}  {}",
        r.region.to_string(),
        r.j,
        r.h1,
        r.h2,
        r.margin,
        c.difference,
        c.error_bound,
        if c.holds() { "holds" } else { "does not hold" }
    );
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let budget = ErrorBudget::default();

    println!("thin tiles: E(h1, h2) > E(h1, 3 h2)");
    for (h1, h2, j) in [(8, 4, 8.0), (10, 2, 6.0), (40, 1, 4.0), (8, 20, 8.0)] {
        if h1 >= h2 {
            show(&lemma_I_energy_check(h1, h2, j, &budget)?);
        }
    }

    println!("\nthick tiles: E(h1, h2) > average over the halves of h2");
    for (h1, h2, j) in [(120, 120, 6.0), (200, 20, 4.0), (500, 50, 6.0), (30, 30, 4.0)] {
        show(&lemma_II_energy_check(h1, h2, j, &budget)?);
    }

    println!("\nlong tiles: E(h1, h2) > E(3 h1, h2)");
    for (h1, h2, j) in [(100, 25, 6.0), (50, 5, 4.0), (60, 10, 4.0)] {
        show(&lemma_III_energy_check(h1, h2, j, &budget)?);
    }

    println!("\nresidual region: E(h/lambda, h/(1-lambda)) > E_s(floor h)");
    for (h, lambda, j) in [(8.0, 0.5, 4.0), (6.0, 1.0 / 3.0, 4.0), (20.0, 0.5, 6.0), (20.0, 0.2, 6.0)] {
        let r = lemma_IV_energy_check(h, lambda, j, &budget)?;
        show(&r);
        let p = r.residual.as_ref().expect("residual pieces");
        println!(
            "      stripe split residual {:.3e}; cross term {:.6} >= {:.6}: {}",
            p.stripe_split_residual,
            p.cross_term.lhs.value,
            p.cross_term.rhs.value,
            p.cross_term.holds()
        );
    }

    println!("\nfinite-torus remainders");
    for (h1, h2, l) in [(4, 2, 8), (4, 2, 16), (6, 2, 12), (8, 4, 16)] {
        let r = appendix_R_II(h1, h2, l, &budget)?;
        println!("R_II  ({h1}, {h2}) L={l:<3} {:>14.8} +- {:.1e}", r.value, r.error_bound);
    }
    for (h1, h2, l) in [(6, 2, 12), (4, 2, 8), (6, 3, 12), (8, 4, 16)] {
        let r = appendix_R_III(h1, h2, l, &budget)?;
        println!("R_III ({h1}, {h2}) L={l:<3} {:>14.8} +- {:.1e}", r.value, r.error_bound);
    }
    Ok(())
}
