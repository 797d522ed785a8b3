//! Energy per site of the checkerboard states `sigma_c(h1, h2)`.
//!
//! The spin is a product `s1(x1) s2(x2)` of two square waves, which splits the
//! energy into the two stripe energies plus a cross term
//!
//! ```text
//! E(h1, h2) = E_s(h1) + E_s(h2) + 2 X / (h1 h2),   X = sum_{d != 0} D1(d1) D2(d2) |d|^{-3}
//! ```
//!
//! where `D_i` is the distance to `2 h_i Z`. `X` is summed row by row, with the
//! sum along each row done in Fourier space.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::energies::stripe::{stripe_dipolar, triangle, triangle_inverse_square};
use crate::error::{domain, Error, Result};
use crate::kernel::budget::{CompensatedSum, EnergyResult, ErrorBudget};
use crate::kernel::lattice::{axis_sum, bessel_series, bessel_tail_bound, series_tol, Certified};

/// A tile side: a positive integer or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Finite(u64),
    Infinite,
}

impl Side {
    pub fn finite(self) -> Option<u64> {
        match self {
            Side::Finite(h) => Some(h),
            Side::Infinite => None,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Finite(h) => write!(f, "{h}"),
            Side::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(Side::Infinite);
        }
        match t.parse::<u64>() {
            Ok(h) if h >= 1 => Ok(Side::Finite(h)),
            _ => domain(format!("tile side must be a positive integer or \"inf\", got {s:?}")),
        }
    }
}

impl From<u64> for Side {
    fn from(h: u64) -> Self {
        Side::Finite(h)
    }
}

/// Tile sides of a checkerboard; `(inf, h)` is the stripe of width `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CheckerboardSpec {
    pub h1: Side,
    pub h2: Side,
}

impl CheckerboardSpec {
    pub fn new(h1: impl Into<Side>, h2: impl Into<Side>) -> Result<Self> {
        let spec = CheckerboardSpec { h1: h1.into(), h2: h2.into() };
        for s in [spec.h1, spec.h2] {
            if s == Side::Finite(0) {
                return domain("tile sides must be >= 1");
            }
        }
        Ok(spec)
    }

    pub fn swapped(self) -> Self {
        CheckerboardSpec { h1: self.h2, h2: self.h1 }
    }
}

/// `sum_{d in Z^2 \ 0} D1(d1) D2(d2) |d|^{-3}` for square waves of half-periods `h1`, `h2`.
pub fn checkerboard_cross_sum(h1: u64, h2: u64, budget: &ErrorBudget) -> Result<Certified> {
    if h1 == 0 || h2 == 0 {
        return domain("tile sides must be >= 1");
    }
    // resum along the axis with the shorter period: fewer rows are needed
    let (hf, hr) = if h1 <= h2 { (h1, h2) } else { (h2, h1) };
    let pf = 2 * hf;
    let pr = 2 * hr;
    let pff = pf as f64;
    let tol = series_tol(budget);

    // rows c >= 1 of R(c) = sum_d D_f(d) (d^2 + c^2)^{-3/2}; the row c = 0 is zero as D_r(0) = 0
    //   R(c) = (hf / 2) axis_sum(c) + (2 pi / c) sum_{q odd} a_q q K1(2 pi q c / P)
    // with a_q = -(4/P^2) / sin^2(pi q / P), |a_q| <= 1
    // leading part (hf/2)(2/c^2) summed over rows in closed form
    let lead = triangle_inverse_square(pr).scale(2.0 * hf as f64);

    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    let ratio = -(-2.0 * PI / pff).exp_m1();
    let mut c = 1u64;
    loop {
        let cf = c as f64;
        // remaining rows: |R(c) - lead| <= (hf/2)(8 pi/c) T(c) + (2 pi/c) T(c/P)
        let remaining = 2.0 * hr as f64
            * ((hf as f64 / 2.0) * 8.0 * PI / cf * bessel_tail_bound(cf, 1) / (1.0 - (-2.0 * PI).exp())
                + 2.0 * PI / cf * bessel_tail_bound(cf / pff, 1) / ratio);
        if remaining <= tol {
            err += remaining;
            break;
        }
        if c as usize > budget.truncation_radius {
            return Err(Error::BudgetExceeded {
                requested: budget.abs_tol,
                reached: remaining,
                context: format!("checkerboard cross sum rows for ({h1}, {h2})"),
            });
        }
        let d = triangle(c, pr) as f64;
        if d != 0.0 {
            let axis = axis_sum(cf, budget)?;
            let axis_bessel = axis.value - 2.0 / (cf * cf);
            let odd = bessel_series(cf / pff, tol * cf / (2.0 * PI), budget.bessel_terms, |q| {
                if q % 2 == 1 {
                    let s = (PI * q as f64 / pff).sin();
                    -4.0 / (pff * pff * s * s)
                } else {
                    0.0
                }
            })?;
            acc.add(2.0 * d * (hf as f64 / 2.0) * axis_bessel);
            acc.add(2.0 * d * 2.0 * PI / cf * odd.value);
            err += 2.0 * d * ((hf as f64 / 2.0) * axis.error_bound + 2.0 * PI / cf * odd.error_bound);
        }
        c += 1;
    }
    acc.add(lead.value);
    Ok(Certified::new(acc.value(), err + lead.error_bound + acc.rounding_bound()))
}

/// `E(h1, h2)`; infinite sides reduce to stripes, `(inf, inf)` to the uniform state.
pub fn checkerboard_energy(spec: CheckerboardSpec, j: f64, budget: &ErrorBudget) -> Result<EnergyResult> {
    if !j.is_finite() {
        return domain("J must be finite");
    }
    let subject = format!("checkerboard ({}, {})", spec.h1, spec.h2);
    let value = match (spec.h1, spec.h2) {
        (Side::Infinite, Side::Infinite) => Certified::exact(0.0),
        (Side::Infinite, Side::Finite(h)) | (Side::Finite(h), Side::Infinite) => {
            stripe_dipolar(h)?.plus(Certified::exact(2.0 * j / h as f64))
        }
        (Side::Finite(a), Side::Finite(b)) => {
            let cross = checkerboard_cross_sum(a, b, budget)?.scale(2.0 / (a as f64 * b as f64));
            let wall = Certified::exact(2.0 * j / a as f64 + 2.0 * j / b as f64);
            stripe_dipolar(a)?.plus(stripe_dipolar(b)?).plus(cross).plus(wall)
        }
    };
    let err = value.error_bound + 4.0 * f64::EPSILON * value.value.abs();
    budget.check(err, "checkerboard_energy")?;
    Ok(EnergyResult::new(value.value, err, Some(j), subject, *budget))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_sides() {
        assert_eq!("inf".parse::<Side>().unwrap(), Side::Infinite);
        assert_eq!("12".parse::<Side>().unwrap(), Side::Finite(12));
        assert!("0".parse::<Side>().is_err());
        assert!("x".parse::<Side>().is_err());
        assert_eq!(Side::Infinite.to_string(), "inf");
    }

    #[test]
    fn cross_sum_brute_force() {
        // direct sum over a large box plus a crude tail estimate
        let (h1, h2) = (2u64, 3u64);
        let n = 3000i64;
        let mut s = 0.0;
        for a in -n..=n {
            let da = triangle(a.unsigned_abs(), 2 * h1) as f64;
            if da == 0.0 {
                continue;
            }
            for b in -n..=n {
                let db = triangle(b.unsigned_abs(), 2 * h2) as f64;
                if db == 0.0 {
                    continue;
                }
                let r2 = (a * a + b * b) as f64;
                s += da * db / (r2 * r2.sqrt());
            }
        }
        // mean weights h1/2, h2/2 over the region outside the box: about (h1 h2 / 4) 8 / n
        let tail_scale = (h1 * h2) as f64 / 4.0 * 8.0 / n as f64;
        let x = checkerboard_cross_sum(h1, h2, &ErrorBudget::default()).unwrap();
        assert!((x.value - s).abs() < tail_scale, "{} vs {s}", x.value);
    }

    #[test]
    fn symmetric_in_sides() {
        let b = ErrorBudget::default();
        let a = checkerboard_energy(CheckerboardSpec::new(4, 6).unwrap(), 1.0, &b).unwrap();
        let c = checkerboard_energy(CheckerboardSpec::new(6, 4).unwrap(), 1.0, &b).unwrap();
        assert!((a.value - c.value).abs() <= a.error_bound + c.error_bound);
    }

    #[test]
    fn infinite_side_is_stripe() {
        let b = ErrorBudget::default();
        let s = crate::energies::stripe::stripe_energy(5, 3.0, &b).unwrap();
        let c = checkerboard_energy(CheckerboardSpec::new(Side::Infinite, 5).unwrap(), 3.0, &b).unwrap();
        assert_eq!(s.value, c.value);
        let u = checkerboard_energy(CheckerboardSpec::new(Side::Infinite, Side::Infinite).unwrap(), 3.0, &b).unwrap();
        assert_eq!(u.value, 0.0);
    }
}
