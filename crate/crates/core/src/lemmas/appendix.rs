//! Remainders of the thick- and long-tile estimates, evaluated on a finite torus.
//!
//! Each remainder is the exact interaction of one tile with the unflipped part
//! of the checkerboard, minus the infinite-lattice sums the estimate keeps.

use crate::energies::{KernelTable, SpinConfiguration};
use crate::error::{domain, Result};
use crate::kernel::budget::{CompensatedSum, EnergyResult, ErrorBudget};
use crate::kernel::lattice::Certified;
use crate::lemmas::sums::{lemma_III_sums, s1_sum, s4_sum, xi_corner_sum};

/// `sum_{x in T} sum_{y : keep(y)} sigma(y) K_L(x - y)` with `T = [0, w) x [r0, r1)`.
fn tile_interaction(
    config: &SpinConfiguration,
    table: &KernelTable,
    width: usize,
    rows: (usize, usize),
    keep: impl Fn(usize, usize) -> bool,
) -> Certified {
    let l = config.side();
    let sign = config.get(0, rows.0 as i64) as f64;
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    for y2 in 0..l {
        for y1 in 0..l {
            if !keep(y1, y2) {
                continue;
            }
            let s = sign * config.get(y1 as i64, y2 as i64) as f64;
            for x2 in rows.0..rows.1 {
                for x1 in 0..width {
                    if x1 == y1 && x2 == y2 {
                        continue;
                    }
                    let k = table.get(x1 as i64 - y1 as i64, x2 as i64 - y2 as i64);
                    acc.add(s * k.value);
                    err += k.error_bound;
                }
            }
        }
    }
    Certified::new(acc.value(), err + acc.rounding_bound())
}

fn certified(r: &EnergyResult) -> Certified {
    Certified::new(r.value, r.error_bound)
}

fn checkerboard(h1: u64, h2: u64, side: u64) -> Result<SpinConfiguration> {
    if h2 == 0 || h1 < h2 {
        return domain(format!("need h1 >= h2 >= 1, got ({h1}, {h2})"));
    }
    SpinConfiguration::checkerboard(side as usize, h1, h2)
}

/// Remainder after flipping a horizontal band of height `h2` centred on a row
/// of domain walls.
pub fn appendix_R_II(h1: u64, h2: u64, side: u64, budget: &ErrorBudget) -> Result<EnergyResult> {
    if h2 % 2 == 1 {
        return domain(format!("h2 must be even, got {h2}"));
    }
    let config = checkerboard(h1, h2, side)?;
    let table = KernelTable::cached(side as usize, budget)?;
    let (half, h) = ((h2 / 2) as usize, h2 as usize);
    // T is the lower half of a tile; the flipped band covers rows [h2/2, 3h2/2)
    let torus = tile_interaction(&config, &table, h1 as usize, (half, h), |_, y2| !(half..half + h).contains(&y2));
    let s1 = certified(&s1_sum(h2, budget)?);
    let s4 = certified(&s4_sum(h2, budget)?);
    let xi = certified(&xi_corner_sum(h1, h2, budget)?);
    let kept = s1.minus(s4.scale(2.0)).minus(xi.scale(4.0)).scale(h1 as f64);
    let out = torus.minus(kept);
    budget.check(out.error_bound, "appendix_R_II")?;
    Ok(out.into_result(None, format!("R_II ({h1}, {h2}) on L={side}"), *budget))
}

/// Remainder after flipping a column of tiles of width `h1`.
pub fn appendix_R_III(h1: u64, h2: u64, side: u64, budget: &ErrorBudget) -> Result<EnergyResult> {
    let config = checkerboard(h1, h2, side)?;
    let table = KernelTable::cached(side as usize, budget)?;
    let w = h1 as usize;
    let torus = tile_interaction(&config, &table, w, (0, h2 as usize), |y1, _| y1 >= w);
    let s = lemma_III_sums(h1, h2, budget)?;
    let kept = certified(&s.pi)
        .plus(certified(&s.xi))
        .minus(certified(&s.p).scale(4.0))
        .minus(certified(&s.q).scale(2.0))
        .scale(2.0 * h2 as f64);
    let out = kept.plus(torus);
    budget.check(out.error_bound, "appendix_R_III")?;
    Ok(out.into_result(None, format!("R_III ({h1}, {h2}) on L={side}"), *budget))
}
