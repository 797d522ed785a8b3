//! Normalized lattice sums between a tile and the regions around it.
//!
//! Each sum is `(1/N) sum_{n1, n2} w1(n1) w2(n2) |n|^{-3}` where the weights
//! count the pairs of sites at displacement `n`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::kernel::budget::{EnergyResult, ErrorBudget};
use crate::kernel::lattice::{weighted_lattice_sum, WeightProfile};

fn labelled(mut r: EnergyResult, subject: String) -> EnergyResult {
    r.params.subject = subject;
    r
}

fn zero(subject: String, budget: &ErrorBudget) -> EnergyResult {
    EnergyResult::new(0.0, 0.0, None, subject, *budget)
}

fn to_i64(h: u64) -> i64 {
    h as i64
}

/// Tile `T` of width `h1` against the half-plane `Pi` sitting on one of its long
/// sides; the result does not depend on `h1`.
pub fn halfplane_tile_sum(h1: u64, h2: u64, budget: &ErrorBudget) -> Result<EnergyResult> {
    if h2 == 0 || h1 < h2 {
        return domain("halfplane_tile_sum needs h1 >= h2 >= 1");
    }
    let w1 = WeightProfile::constant_line(1.0);
    let w2 = WeightProfile::saturating_ramp(0, to_i64(h2))?;
    let r = weighted_lattice_sum(&w1, &w2, 1.0, budget)?;
    Ok(labelled(r, format!("halfplane tile sum h2={h2}")))
}

fn check_even(h2: u64) -> Result<()> {
    if h2 < 2 || h2 % 2 == 1 {
        return domain(format!("h2 must be even and >= 2, got {h2}"));
    }
    Ok(())
}

/// Half-height tile against the adjacent infinite band of height `h2/2`.
pub fn s1_sum(h2: u64, budget: &ErrorBudget) -> Result<EnergyResult> {
    check_even(h2)?;
    let h = to_i64(h2);
    let w1 = WeightProfile::constant_line(1.0);
    let w2 = WeightProfile::trapezoid(0, h, h)?;
    let r = weighted_lattice_sum(&w1, &w2, 1.0, budget)?;
    Ok(labelled(r, format!("S1 sum h2={h2}")))
}

/// Half-height tile against the band of height `h2/2` at distance `h2/2`.
pub fn s4_sum(h2: u64, budget: &ErrorBudget) -> Result<EnergyResult> {
    check_even(h2)?;
    let h = to_i64(h2);
    let w1 = WeightProfile::constant_line(1.0);
    let w2 = WeightProfile::trapezoid(h / 2, 3 * h / 2, h)?;
    let r = weighted_lattice_sum(&w1, &w2, 1.0, budget)?;
    Ok(labelled(r, format!("S4 sum h2={h2}")))
}

/// Half-height tile against the half-band `Xi` touching it at a corner.
pub fn xi_corner_sum(h1: u64, h2: u64, budget: &ErrorBudget) -> Result<EnergyResult> {
    check_even(h2)?;
    if h1 < h2 {
        return domain("xi_corner_sum needs h1 >= h2");
    }
    let w1 = WeightProfile::saturating_ramp(0, to_i64(h1))?;
    let w2 = WeightProfile::trapezoid(0, to_i64(h2), to_i64(h2))?;
    let r = weighted_lattice_sum(&w1, &w2, h1 as f64, budget)?;
    Ok(labelled(r, format!("Xi corner sum ({h1}, {h2})")))
}

/// The four normalized sums of the long-tile estimate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LongTileSums {
    /// square `h2 x h2` against the half-plane on its side
    pub pi: EnergyResult,
    /// rest of the tile against the neighbouring half-band
    pub xi: EnergyResult,
    pub p: EnergyResult,
    pub q: EnergyResult,
}

/// `Pi`, `Xi`, `P`, `Q` for a tile of sides `h1 >= h2`.
pub fn lemma_III_sums(h1: u64, h2: u64, budget: &ErrorBudget) -> Result<LongTileSums> {
    if h2 == 0 || h1 < h2 {
        return domain("lemma_III_sums needs h1 >= h2 >= 1");
    }
    let (a, b) = (to_i64(h1), to_i64(h2));
    let norm = h2 as f64;

    let pi = weighted_lattice_sum(
        &WeightProfile::saturating_ramp(0, b)?,
        &WeightProfile::constant_line(1.0),
        1.0,
        budget,
    )?;
    let pi = labelled(pi, format!("Pi sum ({h1}, {h2})"));

    let xi = if h1 == h2 {
        zero(format!("Xi sum ({h1}, {h2})"), budget)
    } else {
        let w1 = WeightProfile::saturating_ramp(b, a - b)?;
        let w2 = WeightProfile::trapezoid(-b, b, b)?;
        labelled(weighted_lattice_sum(&w1, &w2, norm, budget)?, format!("Xi sum ({h1}, {h2})"))
    };

    let p = weighted_lattice_sum(
        &WeightProfile::trapezoid(0, a + b, b)?,
        &WeightProfile::trapezoid(0, 2 * b, 2 * b)?,
        norm,
        budget,
    )?;
    let p = labelled(p, format!("P sum ({h1}, {h2})"));

    let q = weighted_lattice_sum(
        &WeightProfile::saturating_ramp(0, b)?,
        &WeightProfile::saturating_ramp(2 * b, b)?,
        norm,
        budget,
    )?;
    let q = labelled(q, format!("Q sum ({h1}, {h2})"));

    Ok(LongTileSums { pi, xi, p, q })
}

/// Sums of the residual-region estimate for `h1 = h/lambda`, `h2 = h/(1-lambda)`.
///
/// Returns `((1/h) sum_T sum_P, (1/h) sum_T sum_Xi)`: the tile against the
/// diagonal tile of equal sign and against the half-band beyond it.
pub fn residual_sums(h1: u64, h2: u64, budget: &ErrorBudget) -> Result<(EnergyResult, EnergyResult)> {
    if h1 == 0 || h2 == 0 {
        return domain("tile sides must be >= 1");
    }
    let (a, b) = (to_i64(h1), to_i64(h2));
    let h = (h1 * h2) as f64 / (h1 + h2) as f64;
    let tent1 = WeightProfile::trapezoid(0, 2 * a, 2 * a)?;
    let p = weighted_lattice_sum(&tent1, &WeightProfile::trapezoid(0, 2 * b, 2 * b)?, h, budget)?;
    let xi = weighted_lattice_sum(&tent1, &WeightProfile::saturating_ramp(2 * b, b)?, h, budget)?;
    Ok((
        labelled(p, format!("residual P sum ({h1}, {h2})")),
        labelled(xi, format!("residual Xi sum ({h1}, {h2})")),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(w1: impl Fn(i64) -> f64, w2: impl Fn(i64) -> f64, n: i64) -> f64 {
        let mut s = 0.0;
        for a in -n..=n {
            let x = w1(a);
            if x == 0.0 {
                continue;
            }
            for b in -n..=n {
                let y = w2(b);
                if y == 0.0 || (a == 0 && b == 0) {
                    continue;
                }
                let r2 = (a * a + b * b) as f64;
                s += x * y / (r2 * r2.sqrt());
            }
        }
        s
    }

    #[test]
    fn compact_sums_match_brute_force() {
        let b = ErrorBudget::default();
        // P at h1 = h2 = 2 has finite support
        let s = lemma_III_sums(2, 2, &b).unwrap();
        let want = brute(
            |n| if (1..4).contains(&n) { n.min(2).min(4 - n) as f64 } else { 0.0 },
            |n| if (1..4).contains(&n) { n.min(4 - n) as f64 } else { 0.0 },
            8,
        ) / 2.0;
        assert!((s.p.value - want).abs() < 1e-12);
        assert_eq!(s.xi.value, 0.0);
    }

    #[test]
    fn halfplane_independent_of_h1() {
        let b = ErrorBudget::default();
        let a = halfplane_tile_sum(3, 3, &b).unwrap().value;
        let c = halfplane_tile_sum(15, 3, &b).unwrap().value;
        assert_eq!(a, c);
    }

    #[test]
    fn s4_near_log_four_thirds() {
        let b = ErrorBudget::default();
        let v = s4_sum(200, &b).unwrap().value;
        assert!((v - 2.0 * (4.0f64 / 3.0).ln()).abs() < 0.02, "{v}");
    }
}
