//! Classification of the `(h1, h2)` plane into exclusion regions, grid scans of
//! the checkerboard energy, and the verdict on the minimizer.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::energies::{checkerboard_energy, optimal_stripe_width, stripe_search_window, CheckerboardSpec, OptimalWidth, Side};
use crate::error::{domain, Error, Result};
use crate::kernel::budget::{EnergyResult, ErrorBudget};
use crate::lemmas::{region_constants, RegionConstants};

/// Region a cell falls in, first match wins in this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Class {
    ThinExcluded,
    ThickExcluded,
    LongExcluded,
    ResidualR,
    StripeCandidate,
}

impl Class {
    pub fn is_excluded(self) -> bool {
        matches!(self, Class::ThinExcluded | Class::ThickExcluded | Class::LongExcluded)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Class::ThinExcluded => "thin",
            Class::ThickExcluded => "thick",
            Class::LongExcluded => "long",
            Class::ResidualR => "residual",
            Class::StripeCandidate => "stripe_candidate",
        }
    }
}

impl fmt::Display for Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Class {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "thin" => Class::ThinExcluded,
            "thick" => Class::ThickExcluded,
            "long" => Class::LongExcluded,
            "residual" => Class::ResidualR,
            "stripe_candidate" => Class::StripeCandidate,
            _ => return domain(format!("unknown class {s:?}")),
        })
    }
}

/// One point of the `(h1, h2)` plane with its region and, when computed, energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseCell {
    pub h1: Side,
    pub h2: Side,
    pub j: f64,
    /// sides in units of `e^{J/2}`
    pub scaled: (f64, f64),
    pub class: Class,
    /// inside the `(h, lambda)` envelope of the residual region, whatever the class
    pub in_residual_envelope: bool,
    pub energy: Option<EnergyResult>,
}

fn scaled(s: Side, unit: f64) -> f64 {
    match s {
        Side::Finite(h) => h as f64 / unit,
        Side::Infinite => f64::INFINITY,
    }
}

fn residual_envelope(rc: &RegionConstants, long: u64, short: u64, unit: f64) -> bool {
    let (a, b) = (long as f64, short as f64);
    let h = a * b / (a + b);
    let lambda = b / (a + b);
    h >= rc.c_min * unit && h <= rc.c_max * unit && lambda >= rc.lambda_min
}

/// Class of a single cell; `rc` is taken as an argument so scans compute it once.
pub fn classify_with(rc: &RegionConstants, h1: Side, h2: Side, j: f64) -> PhaseCell {
    let unit = (j / 2.0).exp();
    let (class, envelope) = match (h1, h2) {
        (Side::Finite(a), Side::Finite(b)) => {
            let (long, short) = if a >= b { (a, b) } else { (b, a) };
            let s = short as f64;
            let delta = s / long as f64;
            let envelope = residual_envelope(rc, long, short, unit);
            let class = if s <= rc.c_i * unit {
                Class::ThinExcluded
            } else if s >= rc.c_ii(delta) * unit {
                Class::ThickExcluded
            } else if s <= rc.c_iii(delta) * unit {
                Class::LongExcluded
            } else if envelope {
                Class::ResidualR
            } else {
                Class::StripeCandidate
            };
            (class, envelope)
        }
        _ => (Class::StripeCandidate, false),
    };
    PhaseCell {
        h1,
        h2,
        j,
        scaled: (scaled(h1, unit), scaled(h2, unit)),
        class,
        in_residual_envelope: envelope,
        energy: None,
    }
}

/// Class of `(h1, h2)` at coupling `J`; the sides may come in either order.
pub fn classify(h1: u64, h2: u64, j: f64) -> Result<PhaseCell> {
    if h1 == 0 || h2 == 0 {
        return domain("tile sides must be >= 1");
    }
    if !(j > 0.0 && j.is_finite()) {
        return domain(format!("J must be positive, got {j}"));
    }
    Ok(classify_with(&region_constants()?, Side::Finite(h1), Side::Finite(h2), j))
}

fn log_grid(h_max: u64, points: usize) -> Vec<u64> {
    let top = (h_max as f64).ln();
    let mut v: Vec<u64> = (0..points)
        .map(|k| (top * k as f64 / (points - 1) as f64).exp().round() as u64)
        .collect();
    v.dedup();
    v
}

/// Up to `count` cells `h1 >= h2` of the given class, spread over a
/// logarithmic grid reaching `h_max`.
pub fn class_samples(j: f64, class: Class, count: usize, h_max: u64) -> Result<Vec<(u64, u64)>> {
    if h_max < 1 || count == 0 {
        return domain("need h_max >= 1 and count >= 1");
    }
    if !(j > 0.0 && j.is_finite()) {
        return domain(format!("J must be positive, got {j}"));
    }
    let rc = region_constants()?;
    let grid = log_grid(h_max, 64);
    let hits: Vec<(u64, u64)> = grid
        .iter()
        .flat_map(|&a| grid.iter().take_while(move |&&b| b <= a).map(move |&b| (a, b)))
        .filter(|&(a, b)| classify_with(&rc, Side::Finite(a), Side::Finite(b), j).class == class)
        .collect();
    if hits.len() <= count {
        return Ok(hits);
    }
    Ok((0..count).map(|k| hits[k * (hits.len() - 1) / (count - 1).max(1)]).collect())
}

/// Outcome of a grid scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    pub j: f64,
    pub h_max: u64,
    pub stride: u64,
    /// finite cells with `h1 >= h2` first, then the `(inf, h)` stripe cells
    pub cells: Vec<PhaseCell>,
    /// index of the lowest-energy finite cell
    pub finite_min: usize,
    /// index of the lowest-energy stripe cell
    pub stripe_min: usize,
}

impl ScanResult {
    pub fn finite_minimum(&self) -> &PhaseCell {
        &self.cells[self.finite_min]
    }

    pub fn stripe_minimum(&self) -> &PhaseCell {
        &self.cells[self.stripe_min]
    }

    /// Lowest-energy cell overall.
    pub fn global_minimum(&self) -> &PhaseCell {
        let (f, s) = (self.finite_minimum(), self.stripe_minimum());
        if energy_of(s) <= energy_of(f) {
            s
        } else {
            f
        }
    }
}

fn energy_of(c: &PhaseCell) -> f64 {
    c.energy.as_ref().map_or(f64::INFINITY, |e| e.value)
}

fn argmin(cells: &[PhaseCell], range: std::ops::Range<usize>) -> usize {
    range
        .min_by(|&a, &b| energy_of(&cells[a]).total_cmp(&energy_of(&cells[b])))
        .expect("nonempty range")
}

/// Energies on every cell `(h1, h2)`, `h1 >= h2`, both multiples of `stride`
/// up to `h_max`, followed by the stripes `(inf, h)` on the same multiples.
pub fn scan(j: f64, h_max: u64, stride: u64, budget: &ErrorBudget) -> Result<ScanResult> {
    scan_with_extra(j, h_max, stride, &[], budget)
}

fn scan_with_extra(j: f64, h_max: u64, stride: u64, extra_stripes: &[u64], budget: &ErrorBudget) -> Result<ScanResult> {
    if h_max == 0 || stride == 0 || stride > h_max {
        return domain("need 1 <= stride <= h_max");
    }
    if !(j > 0.0 && j.is_finite()) {
        return domain(format!("J must be positive, got {j}"));
    }
    let rc = region_constants()?;
    let sides: Vec<u64> = (1..=h_max / stride).map(|k| k * stride).collect();
    let mut specs: Vec<(Side, Side)> = Vec::new();
    for &a in &sides {
        for &b in sides.iter().take_while(|&&b| b <= a) {
            specs.push((Side::Finite(a), Side::Finite(b)));
        }
    }
    let n_finite = specs.len();
    let mut stripes = sides.clone();
    stripes.extend(extra_stripes.iter().copied().filter(|&h| h >= 1));
    stripes.sort_unstable();
    stripes.dedup();
    specs.extend(stripes.iter().map(|&h| (Side::Infinite, Side::Finite(h))));

    let cells = specs
        .into_par_iter()
        .map(|(a, b)| {
            let mut cell = classify_with(&rc, a, b, j);
            cell.energy = Some(checkerboard_energy(CheckerboardSpec::new(a, b)?, j, budget)?);
            Ok(cell)
        })
        .collect::<Result<Vec<_>>>()?;
    let finite_min = argmin(&cells, 0..n_finite);
    let stripe_min = argmin(&cells, n_finite..cells.len());
    Ok(ScanResult {
        j,
        h_max,
        stride,
        cells,
        finite_min,
        stripe_min,
    })
}

/// Verdict on whether the stripes of optimal width beat every scanned cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerdictStatus {
    /// the stripe minimum lies below every finite cell beyond the certificates
    StripesWin,
    /// some finite cell lies below the stripe minimum beyond the certificates
    FiniteCellWins,
    /// certificates overlap at the minimum
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RestrictedVerdict {
    pub j: f64,
    pub h_max: u64,
    pub stride: u64,
    pub optimal: OptimalWidth,
    /// lowest finite cell of the scan
    pub runner_up: PhaseCell,
    /// `E(runner_up) - E_s(h*)`
    pub gap: f64,
    pub gap_error: f64,
    pub status: VerdictStatus,
    /// number of scanned cells in each class, in declaration order
    pub class_counts: [usize; 5],
    /// the lowest finite cell sits in an excluded region
    pub minimum_in_excluded_region: bool,
}

/// Verdict over a grid reaching the top of the stripe search window, with a
/// stride keeping the grid at about 128 points per axis.
pub fn restricted_verdict(j: f64, budget: &ErrorBudget) -> Result<RestrictedVerdict> {
    let (_, hi) = stripe_search_window(j);
    let stride = hi.div_ceil(128).max(1);
    restricted_verdict_on(j, hi, stride, budget)
}

/// Verdict over an explicit grid.
pub fn restricted_verdict_on(j: f64, h_max: u64, stride: u64, budget: &ErrorBudget) -> Result<RestrictedVerdict> {
    let optimal = optimal_stripe_width(j, budget)?;
    let mut extra = vec![optimal.h_star];
    extra.extend(optimal.tie);
    let result = scan_with_extra(j, h_max, stride, &extra, budget)?;
    let runner_up = result.finite_minimum().clone();
    let e_up = runner_up.energy.as_ref().expect("scan computes energies");
    let gap = e_up.value - optimal.energy.value;
    let gap_error = e_up.error_bound + optimal.energy.error_bound + 2.0 * f64::EPSILON * gap.abs();
    let status = if gap > gap_error {
        VerdictStatus::StripesWin
    } else if gap < -gap_error {
        VerdictStatus::FiniteCellWins
    } else {
        VerdictStatus::Inconclusive
    };
    let mut class_counts = [0usize; 5];
    for c in &result.cells {
        class_counts[c.class as usize] += 1;
    }
    Ok(RestrictedVerdict {
        j,
        h_max,
        stride,
        minimum_in_excluded_region: runner_up.class.is_excluded(),
        optimal,
        runner_up,
        gap,
        gap_error,
        status,
        class_counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classifier_examples() {
        let rc = region_constants().unwrap();
        assert_eq!(classify(7, 1, 8.0).unwrap().class, Class::ThinExcluded);
        let big = (2.0 * rc.c_ii(1.0) * 4f64.exp()).ceil() as u64;
        assert_eq!(classify(big, big, 8.0).unwrap().class, Class::ThickExcluded);
        // h = e^{J/2}, lambda = 0.3
        let j = 2.0 * (21.0f64).ln();
        let cell = classify(70, 30, j).unwrap();
        assert_eq!(cell.class, Class::ResidualR);
        assert!(cell.in_residual_envelope);
    }

    #[test]
    fn class_is_symmetric() {
        for (a, b) in [(3, 9), (40, 12), (5, 5)] {
            assert_eq!(classify(a, b, 5.0).unwrap().class, classify(b, a, 5.0).unwrap().class);
        }
    }

    #[test]
    fn small_scan_layout() {
        let r = scan(2.0, 6, 1, &ErrorBudget::default()).unwrap();
        assert_eq!(r.cells.len(), 21 + 6);
        assert!(r.cells[r.stripe_min].h1 == Side::Infinite);
    }
}
