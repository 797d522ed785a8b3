//! Analytic margins of the exclusion regions and their numerical counterparts.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::energies::{checkerboard_energy, stripe_energy, CheckerboardSpec};
use crate::error::{domain, Result};
use crate::kernel::budget::{EnergyResult, ErrorBudget};
use crate::lemmas::constants::region_constants;
use crate::lemmas::integrals::lemma_IV_bracket;
use crate::lemmas::sums::residual_sums;

/// Which exclusion region a report belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Region {
    I,
    II,
    III,
    R,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::I => "I",
            Region::II => "II",
            Region::III => "III",
            Region::R => "R",
        };
        f.write_str(s)
    }
}

/// A certified comparison `lhs - rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub lhs: EnergyResult,
    pub rhs: EnergyResult,
    pub difference: f64,
    pub error_bound: f64,
}

impl Comparison {
    pub fn new(lhs: EnergyResult, rhs: EnergyResult) -> Self {
        let difference = lhs.value - rhs.value;
        let error_bound = lhs.error_bound + rhs.error_bound + 2.0 * f64::EPSILON * difference.abs();
        Comparison {
            lhs,
            rhs,
            difference,
            error_bound,
        }
    }

    /// `lhs > rhs` beyond the certificates.
    pub fn holds(&self) -> bool {
        self.difference > self.error_bound
    }
}

/// Pieces of the residual-region argument, each with its certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualPieces {
    /// `E_s(floor h) - E_s(h1) - E_s(h2) + (4/h)(lambda log lambda + (1-lambda) log(1-lambda))`
    pub stripe_split_residual: f64,
    pub stripe_split_error: f64,
    /// `E(h1, h2) - E_s(h1) - E_s(h2)` against its lower bound from the equal-sign tiles
    pub cross_term: Comparison,
}

/// Analytic margin of one region, optionally backed by an energy comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarginReport {
    pub region: Region,
    pub h1: u64,
    pub h2: u64,
    pub j: f64,
    pub delta: Option<f64>,
    pub lambda: Option<f64>,
    pub margin: f64,
    pub energy_check: Option<Comparison>,
    pub residual: Option<ResidualPieces>,
}

impl MarginReport {
    /// Verdict of the energy comparison, if one was run.
    pub fn verified(&self) -> Option<bool> {
        self.energy_check.as_ref().map(Comparison::holds)
    }
}

fn check_sides(h1: u64, h2: u64) -> Result<()> {
    if h2 == 0 || h1 < h2 {
        return domain(format!("need h1 >= h2 >= 1, got ({h1}, {h2})"));
    }
    Ok(())
}

fn check_j(j: f64) -> Result<()> {
    if !(j > 0.0 && j.is_finite()) {
        return domain(format!("J must be positive, got {j}"));
    }
    Ok(())
}

fn energy(h1: u64, h2: u64, j: f64, budget: &ErrorBudget) -> Result<EnergyResult> {
    checkerboard_energy(CheckerboardSpec::new(h1, h2)?, j, budget)
}

fn report(region: Region, h1: u64, h2: u64, j: f64, margin: f64, check: Option<Comparison>) -> MarginReport {
    MarginReport {
        region,
        h1,
        h2,
        j,
        delta: Some(h2 as f64 / h1 as f64),
        lambda: None,
        margin,
        energy_check: check,
        residual: None,
    }
}

/// Thin tiles: `J - 2 log h2 - alpha_s - 1 - 2 log(pi/2)`.
pub fn lemma_I_margin(h2: u64, j: f64) -> Result<f64> {
    if h2 == 0 {
        return domain("h2 must be >= 1");
    }
    let a = region_constants()?.alpha_s;
    Ok(j - 2.0 * (h2 as f64).ln() - a - 1.0 - 2.0 * (PI / 2.0).ln())
}

/// Compares `E(h1, h2)` with `E(h1, 3 h2)`.
pub fn lemma_I_energy_check(h1: u64, h2: u64, j: f64, budget: &ErrorBudget) -> Result<MarginReport> {
    check_sides(h1, h2)?;
    check_j(j)?;
    let margin = lemma_I_margin(h2, j)?;
    let cmp = Comparison::new(energy(h1, h2, j, budget)?, energy(h1, 3 * h2, j, budget)?);
    Ok(report(Region::I, h1, h2, j, margin, Some(cmp)))
}

/// Thick tiles: `-J + 2 log h2 + alpha_s - 2 log(128/(9 pi)) - 8 h2/h1`.
pub fn lemma_II_margin(h1: u64, h2: u64, j: f64) -> Result<f64> {
    check_sides(h1, h2)?;
    let a = region_constants()?.alpha_s;
    Ok(-j + 2.0 * (h2 as f64).ln() + a - 2.0 * (128.0 / (9.0 * PI)).ln() - 8.0 * h2 as f64 / h1 as f64)
}

/// Compares `E(h1, h2)` with the average over the two halves of `h2`.
pub fn lemma_II_energy_check(h1: u64, h2: u64, j: f64, budget: &ErrorBudget) -> Result<MarginReport> {
    check_sides(h1, h2)?;
    check_j(j)?;
    if h2 < 2 {
        return domain("h2 must be >= 2");
    }
    let margin = lemma_II_margin(h1, h2, j)?;
    let lo = energy(h1, h2 / 2, j, budget)?;
    let hi = energy(h1, h2.div_ceil(2), j, budget)?;
    let avg = EnergyResult::new(
        0.5 * (lo.value + hi.value),
        0.5 * (lo.error_bound + hi.error_bound),
        Some(j),
        format!("halves of ({h1}, {h2})"),
        *budget,
    );
    let cmp = Comparison::new(energy(h1, h2, j, budget)?, avg);
    Ok(report(Region::II, h1, h2, j, margin, Some(cmp)))
}

/// Long tiles: `J - 2 log h2 - alpha_s - 2 log(pi/2) + 4 - h2/(2 h1) - 2 h2^2/h1^2`.
pub fn lemma_III_margin(h1: u64, h2: u64, j: f64) -> Result<f64> {
    check_sides(h1, h2)?;
    let a = region_constants()?.alpha_s;
    let d = h2 as f64 / h1 as f64;
    Ok(j - 2.0 * (h2 as f64).ln() - a - 2.0 * (PI / 2.0).ln() + 4.0 - d / 2.0 - 2.0 * d * d)
}

/// Compares `E(h1, h2)` with `E(3 h1, h2)`.
pub fn lemma_III_energy_check(h1: u64, h2: u64, j: f64, budget: &ErrorBudget) -> Result<MarginReport> {
    check_sides(h1, h2)?;
    check_j(j)?;
    let margin = lemma_III_margin(h1, h2, j)?;
    let cmp = Comparison::new(energy(h1, h2, j, budget)?, energy(3 * h1, h2, j, budget)?);
    Ok(report(Region::III, h1, h2, j, margin, Some(cmp)))
}

fn integer_side(x: f64, what: &str) -> Result<u64> {
    let r = x.round();
    if r.is_nan() || r < 1.0 || (x - r).abs() > 1e-9 * r.max(1.0) {
        return domain(format!("{what} = {x} is not a positive integer"));
    }
    Ok(r as u64)
}

/// Compares `E(h/lambda, h/(1-lambda))` with `E_s(floor h)`, and evaluates the
/// two intermediate steps of the comparison.
pub fn lemma_IV_energy_check(h: f64, lambda: f64, j: f64, budget: &ErrorBudget) -> Result<MarginReport> {
    check_j(j)?;
    let rc = region_constants()?;
    if !(lambda >= rc.lambda_min && lambda <= 0.5) {
        return domain(format!("lambda must lie in [{}, 1/2], got {lambda}", rc.lambda_min));
    }
    if !(h >= 1.0 && h.is_finite()) {
        return domain(format!("h must be >= 1, got {h}"));
    }
    let h1 = integer_side(h / lambda, "h/lambda")?;
    let h2 = integer_side(h / (1.0 - lambda), "h/(1-lambda)")?;
    let hf = h.floor() as u64;

    let full = energy(h1, h2, j, budget)?;
    let es_floor = stripe_energy(hf, j, budget)?;
    let es1 = stripe_energy(h1, j, budget)?;
    let es2 = stripe_energy(h2, j, budget)?;

    let entropy = lambda * lambda.ln() + (1.0 - lambda) * (-lambda).ln_1p();
    let split = es_floor.value - es1.value - es2.value + 4.0 / h * entropy;
    let split_err = es_floor.error_bound + es1.error_bound + es2.error_bound + 8.0 * f64::EPSILON * split.abs().max(1.0 / h);

    let cross = EnergyResult::new(
        full.value - es1.value - es2.value,
        full.error_bound + es1.error_bound + es2.error_bound,
        None,
        format!("cross term ({h1}, {h2})"),
        *budget,
    );
    let (p, xi) = residual_sums(h1, h2, budget)?;
    let factor = 8.0 * lambda * (1.0 - lambda) / h;
    let bound = EnergyResult::new(
        factor * (p.value + 0.5 * xi.value),
        factor * (p.error_bound + 0.5 * xi.error_bound),
        None,
        format!("equal-sign tile bound ({h1}, {h2})"),
        *budget,
    );

    Ok(MarginReport {
        region: Region::R,
        h1,
        h2,
        j,
        delta: None,
        lambda: Some(lambda),
        margin: lemma_IV_bracket(lambda)?,
        energy_check: Some(Comparison::new(full, es_floor)),
        residual: Some(ResidualPieces {
            stripe_split_residual: split,
            stripe_split_error: split_err,
            cross_term: Comparison::new(cross, bound),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margins_vanish_on_their_boundaries() {
        let rc = region_constants().unwrap();
        let a = rc.alpha_s;
        let j: f64 = 8.0;
        // evaluate the formulas at real h2 on the boundary
        let h2 = rc.c_i * (j / 2.0).exp();
        let m1 = j - 2.0 * h2.ln() - a - 1.0 - 2.0 * (PI / 2.0).ln();
        assert!(m1.abs() < 1e-12);
        let h2 = rc.c_ii(1.0) * (j / 2.0).exp();
        let m2 = -j + 2.0 * h2.ln() + a - 2.0 * (128.0 / (9.0 * PI)).ln() - 8.0;
        assert!((m2 - 2.0 * (129.0f64 / 128.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn thin_tile_example() {
        let b = ErrorBudget::default();
        let r = lemma_I_energy_check(8, 4, 8.0, &b).unwrap();
        assert!(r.margin > 0.0);
        assert_eq!(r.verified(), Some(true));
        assert!(lemma_I_margin(20, 8.0).unwrap() < 0.0);
    }

    #[test]
    fn residual_needs_integer_sides() {
        let b = ErrorBudget::default();
        assert!(lemma_IV_energy_check(10.0, 0.3, 4.0, &b).is_err());
        assert!(lemma_IV_energy_check(10.0, 0.5, 4.0, &b).is_ok());
    }
}
