//! Elementary special functions used by the lattice sums.

use crate::error::{domain, Result};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

/// `H_h = sum_{n=1}^{h} 1/n`, summed from the small end.
pub fn harmonic_number(h: u64) -> Result<f64> {
    if h == 0 {
        return domain("harmonic number requires h >= 1");
    }
    Ok((1..=h).rev().map(|n| 1.0 / n as f64).sum())
}

/// Trigamma `psi_1(x) = sum_{k>=0} 1/(x+k)^2` for `x > 0`.
pub fn trigamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    const SHIFT: f64 = 12.0;
    let mut acc = 0.0;
    let mut y = x;
    while y < SHIFT {
        acc += 1.0 / (y * y);
        y += 1.0;
    }
    // Asymptotic series with Bernoulli numbers B2..B14; next term < 1e-17 at y = 12.
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let series = inv2
        * (1.0 / 6.0
            + inv2 * (-1.0 / 30.0
                + inv2 * (1.0 / 42.0
                    + inv2 * (-1.0 / 30.0 + inv2 * (5.0 / 66.0 + inv2 * (-691.0 / 2730.0 + inv2 * (7.0 / 6.0)))))));
    acc + inv + 0.5 * inv2 + inv * series
}

/// Bracket for the Hurwitz zeta tail `sum_{n>=m} n^{-s}` with `s > 1`, `m >= 1`,
/// from the integral comparison `int_m^inf <= sum <= n^{-s} + int_m^inf`.
pub fn power_tail_bracket(s: f64, m: u64) -> (f64, f64) {
    let mf = m as f64;
    let integral = mf.powf(1.0 - s) / (s - 1.0);
    (integral, integral + mf.powf(-s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn harmonic_small_values() {
        assert_eq!(harmonic_number(1).unwrap(), 1.0);
        assert_eq!(harmonic_number(2).unwrap(), 1.5);
        assert!(harmonic_number(0).is_err());
    }

    #[test]
    fn harmonic_envelope() {
        for h in [1u64, 2, 5, 17, 100, 1000, 123_456] {
            let hh = harmonic_number(h).unwrap();
            let lo = (h as f64).ln() + EULER_GAMMA;
            assert!(lo < hh && hh <= lo + 0.5 / h as f64 + 1e-15, "h={h}");
        }
    }

    #[test]
    fn trigamma_known_values() {
        assert!((trigamma(1.0) - PI * PI / 6.0).abs() < 1e-15);
        assert!((trigamma(0.5) - PI * PI / 2.0).abs() < 1e-14);
        // reflection: psi1(x) + psi1(1-x) = pi^2 / sin^2(pi x)
        for x in [0.1, 0.25, 0.3, 0.77] {
            let lhs = trigamma(x) + trigamma(1.0 - x);
            let rhs = (PI / (PI * x).sin()).powi(2);
            assert!(((lhs - rhs) / rhs).abs() < 1e-14, "x={x}");
        }
    }

    #[test]
    fn trigamma_matches_direct_tail() {
        // sum_{k>=0} 1/(x+k)^2 with a midpoint-integral tail
        let x = 3.7;
        let n = 200_000;
        let direct: f64 = (0..n).rev().map(|k| 1.0 / (x + k as f64).powi(2)).sum::<f64>() + 1.0 / (x + n as f64 - 0.5);
        assert!((trigamma(x) - direct).abs() < 1e-14);
    }
}
