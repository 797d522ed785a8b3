use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::kernel::budget::{CompensatedSum, EnergyResult, ErrorBudget};
use crate::kernel::lattice::{bessel_double_tail, bessel_row_sum, Certified};
use crate::kernel::special::{harmonic_number, power_tail_bracket, trigamma, EULER_GAMMA};

/// `alpha_s = 2 (1 + gamma - log(pi/2) + 4 pi sum_{j,n >= 1} j K1(2 pi j n))`.
pub fn alpha_s() -> f64 {
    2.0 * (1.0 + EULER_GAMMA - (PI / 2.0).ln()) + 8.0 * PI * bessel_double_tail().value
}

/// `c_* = e^{1 - alpha_s / 2}`, the prefactor of the optimal stripe width.
pub fn c_star() -> f64 {
    (1.0 - alpha_s() / 2.0).exp()
}

/// Distance from `n` to the nearest multiple of `period`.
pub(crate) fn triangle(n: u64, period: u64) -> u64 {
    let r = n % period;
    r.min(period - r)
}

/// `sum_{n >= 1} D(n) / n^2` with `D` the distance to `P Z`, summed exactly over
/// one period with trigamma.
pub(crate) fn triangle_inverse_square(period: u64) -> Certified {
    let pf = period as f64;
    let mut acc = CompensatedSum::new();
    for r in 1..period {
        acc.add(triangle(r, period) as f64 * trigamma(r as f64 / pf));
    }
    let value = acc.value() / (pf * pf);
    Certified::new(value, acc.rounding_bound() / (pf * pf) + 4.0 * f64::EPSILON * value)
}

/// Dipolar part of `E_s(h)`, i.e. `E_s(h) - 2J/h`.
pub(crate) fn stripe_dipolar(h: u64) -> Result<Certified> {
    if h == 0 {
        return domain("stripe width must be >= 1");
    }
    let hf = h as f64;
    let period = 2 * h;
    let hh = harmonic_number(h)?;
    let near = bessel_row_sum(1, Some(h), |_| 1.0);
    // the weight |n - (2l+2)h| on ((2l+1)h, (2l+3)h] is the distance from n to 2hZ
    let full = triangle_inverse_square(period);
    let head: f64 = (1..=h).map(|n| triangle(n, period) as f64 / (n * n) as f64).sum();
    let rational = Certified::new(full.value - head, full.error_bound + 4.0 * f64::EPSILON * head);
    let far = bessel_row_sum(h + 1, None, |n| triangle(n, period) as f64 / n as f64);

    let bracket = Certified::exact(-2.0 * hh)
        .minus(near.scale(8.0 * PI))
        .minus(rational.scale(2.0))
        .minus(far.scale(8.0 * PI));
    let out = bracket.scale(2.0 / hf);
    Ok(Certified::new(out.value, out.error_bound + 8.0 * f64::EPSILON * (hh / hf)))
}

/// `E_s(h)` from its Poisson-resummed expression.
pub fn stripe_energy(h: u64, j: f64, budget: &ErrorBudget) -> Result<EnergyResult> {
    let dip = stripe_dipolar(h)?;
    let value = 2.0 * j / h as f64 + dip.value;
    let err = dip.error_bound + 2.0 * f64::EPSILON * value.abs();
    budget.check(err, "stripe_energy")?;
    Ok(EnergyResult::new(value, err, Some(j), format!("stripe h={h}"), *budget))
}

/// `(2/h)(J - 2 log h - alpha_s)`, without remainder.
pub fn stripe_energy_asymptotic(h: f64, j: f64) -> f64 {
    2.0 / h * (j - 2.0 * h.ln() - alpha_s())
}

/// `-2 sum_{l >= 0} [2/((2l+2)^2 - 1) + log((2l+3)(2l+1)/(2l+2)^2)]`, with a
/// certified tail.
pub fn ell_sum_identity() -> Certified {
    const M: u64 = 10_000;
    let mut acc = CompensatedSum::new();
    for l in (0..M).rev() {
        let m = (2 * l + 2) as f64;
        let inv = 1.0 / (m * m);
        acc.add(2.0 * inv / (1.0 - inv) + (-inv).ln_1p());
    }
    // tail: with p = l + 1 > M, the term is sum_k (2 - 1/k) (4p^2)^{-k}
    let first = trigamma((M + 1) as f64) / 4.0;
    let (z4_lo, z4_hi) = power_tail_bracket(4.0, M + 1);
    let second = 3.0 / 32.0 * 0.5 * (z4_lo + z4_hi);
    let pf = (M + 1) as f64;
    let rest = 2.0 * (4.0 * pf * pf).powi(-3) * pf / (1.0 - 1.0 / (4.0 * pf * pf));
    let tail = first + second;
    let tail_err = 3.0 / 32.0 * 0.5 * (z4_hi - z4_lo) + rest + 8.0 * f64::EPSILON * first;
    let value = -2.0 * (acc.value() + tail);
    Certified::new(value, 2.0 * (tail_err + acc.rounding_bound()))
}

/// Result of the optimal stripe-width search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimalWidth {
    pub h_star: u64,
    pub energy: EnergyResult,
    /// `h* + 1` (or `h* - 1`) when it cannot be separated from `h*` by the certificates.
    pub tie: Option<u64>,
    pub window: (u64, u64),
}

/// Search window `[max(1, floor(c e^{J/2} / 4)), ceil(4 c e^{J/2})]`.
pub fn stripe_search_window(j: f64) -> (u64, u64) {
    let scale = c_star() * (j / 2.0).exp();
    let lo = ((scale / 4.0).floor() as u64).max(1);
    let hi = ((4.0 * scale).ceil() as u64).max(lo + 2);
    (lo, hi)
}

/// Minimizer of `E_s(., J)` over the search window.
pub fn optimal_stripe_width(j: f64, budget: &ErrorBudget) -> Result<OptimalWidth> {
    if !(j > 0.0 && j.is_finite()) {
        return domain(format!("J must be positive, got {j}"));
    }
    let window = stripe_search_window(j);
    optimal_stripe_width_in(j, window, budget)
}

pub(crate) fn optimal_stripe_width_in(j: f64, window: (u64, u64), budget: &ErrorBudget) -> Result<OptimalWidth> {
    let (lo, hi) = window;
    let energies = (lo..=hi)
        .into_par_iter()
        .map(|h| stripe_energy(h, j, budget))
        .collect::<Result<Vec<_>>>()?;
    let best = energies
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.value.total_cmp(&b.1.value))
        .map(|(i, _)| i)
        .expect("window is nonempty");
    let h_star = lo + best as u64;
    if (h_star == hi) || (h_star == lo && lo > 1) {
        return Err(Error::WindowExhausted(format!(
            "minimum of E_s at h = {h_star} sits on the window edge [{lo}, {hi}]"
        )));
    }
    let e = &energies[best];
    let close = |i: usize| {
        let o = &energies[i];
        (o.value - e.value).abs() <= o.error_bound + e.error_bound
    };
    let mut tie = None;
    if best + 1 < energies.len() && close(best + 1) {
        tie = Some(h_star + 1);
    } else if best > 0 && close(best - 1) {
        tie = Some(h_star - 1);
    }
    Ok(OptimalWidth {
        h_star,
        energy: e.clone(),
        tie,
        window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_and_c_star_match_printed_values() {
        assert!((alpha_s() - 2.276).abs() < 5e-4);
        assert!((c_star() - 0.871).abs() < 5e-4);
    }

    #[test]
    fn ell_sum_matches_closed_form() {
        let v = ell_sum_identity();
        assert!((v.value - (-2.0 + 2.0 * (PI / 2.0).ln())).abs() < 1e-12);
        assert!(v.error_bound < 1e-12);
    }

    #[test]
    fn triangle_sum_against_direct() {
        let p = 6;
        let direct: f64 = (1..2_000_000u64).rev().map(|n| triangle(n, p) as f64 / (n * n) as f64).sum();
        // tail mean weight p/4 over n^2
        let tail = p as f64 / 4.0 / 2_000_000.0;
        assert!((triangle_inverse_square(p).value - direct - tail).abs() < 1e-11);
    }

    #[test]
    fn linear_in_j() {
        let b = ErrorBudget::default();
        for h in [1, 3, 10] {
            let e0 = stripe_energy(h, 0.0, &b).unwrap().value;
            let e1 = stripe_energy(h, 2.5, &b).unwrap().value;
            assert!((e1 - e0 - 5.0 / h as f64).abs() < 1e-14);
        }
    }

    #[test]
    fn asymptotic_formula_values() {
        let a = alpha_s();
        assert!(stripe_energy_asymptotic(1.0, a).abs() < 1e-15);
        let e = std::f64::consts::E;
        assert!((stripe_energy_asymptotic(e, 0.0) - (-2.0 * a / e - 4.0 / e)).abs() < 1e-14);
    }
}
