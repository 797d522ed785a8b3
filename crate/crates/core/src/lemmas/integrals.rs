//! Continuum limits of the normalized lattice sums, and the closed forms used
//! in the residual region.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::kernel::lattice::Certified;
use crate::kernel::quadrature::{weighted_double_integral, LinearPiece};

const QUAD_TOL: f64 = 1e-9;
const INF: f64 = f64::INFINITY;

fn lp(lo: f64, hi: f64, alpha: f64, beta: f64) -> LinearPiece {
    LinearPiece::new(lo, hi, alpha, beta)
}

/// `min{x, 1}` on `[0, inf)`.
fn ramp() -> Vec<LinearPiece> {
    vec![lp(0.0, 1.0, 0.0, 1.0), lp(1.0, INF, 1.0, 0.0)]
}

/// `min{x - lo, (hi - lo) - (x - lo)}` on `[lo, hi]`.
fn tent(lo: f64, hi: f64) -> Vec<LinearPiece> {
    let mid = 0.5 * (lo + hi);
    vec![lp(lo, mid, -lo, 1.0), lp(mid, hi, hi, -1.0)]
}

/// Corner half-band integral, with `zeta = h2/h1`.
pub fn int_corner(zeta: f64) -> Result<Certified> {
    if !(zeta > 0.0 && zeta <= 1.0) {
        return domain(format!("zeta must lie in (0, 1], got {zeta}"));
    }
    weighted_double_integral(&ramp(), &tent(0.0, zeta), QUAD_TOL)
}

/// Long-tile `Xi` integral, with `Z = h1/h2`.
pub fn int_long_xi(z: f64) -> Result<Certified> {
    if !(z >= 1.0 && z.is_finite()) {
        return domain(format!("Z must be >= 1, got {z}"));
    }
    if z == 1.0 {
        return Ok(Certified::exact(0.0));
    }
    let outer = [lp(1.0, z, -1.0, 1.0), lp(z, INF, z - 1.0, 0.0)];
    let inner = [lp(0.0, 1.0, 1.0, -1.0)];
    Ok(weighted_double_integral(&outer, &inner, QUAD_TOL)?.scale(2.0))
}

/// Long-tile `P` integral, with `Z = h1/h2`.
pub fn int_long_p(z: f64) -> Result<Certified> {
    if !(z >= 1.0 && z.is_finite()) {
        return domain(format!("Z must be >= 1, got {z}"));
    }
    let mut outer = vec![lp(0.0, 1.0, 0.0, 1.0)];
    if z > 1.0 {
        outer.push(lp(1.0, z, 1.0, 0.0));
    }
    outer.push(lp(z, z + 1.0, z + 1.0, -1.0));
    weighted_double_integral(&outer, &tent(0.0, 2.0), QUAD_TOL)
}

/// Long-tile `Q` integral.
pub fn int_long_q() -> Result<Certified> {
    let inner = [lp(2.0, 3.0, -2.0, 1.0), lp(3.0, INF, 1.0, 0.0)];
    weighted_double_integral(&ramp(), &inner, QUAD_TOL)
}

/// `(I)`: the `P` integral with the tile stretched to infinity.
pub fn int_p_full() -> Result<Certified> {
    weighted_double_integral(&ramp(), &tent(0.0, 2.0), QUAD_TOL)
}

/// `(II)`: the part of `(I)` beyond `x1 = Z`.
pub fn int_p_beyond(z: f64) -> Result<Certified> {
    if !(z >= 1.0 && z.is_finite()) {
        return domain(format!("Z must be >= 1, got {z}"));
    }
    weighted_double_integral(&[lp(z, INF, 1.0, 0.0)], &tent(0.0, 2.0), QUAD_TOL)
}

/// Every continuum integral of the tile estimates at one aspect ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureIntegrals {
    pub zeta: f64,
    pub z: f64,
    pub corner: f64,
    pub long_xi: f64,
    pub long_p: f64,
    pub long_q: f64,
    pub p_full: f64,
    pub p_beyond: f64,
    /// largest error estimate among the entries
    pub error_bound: f64,
}

/// All integrals at `zeta = h2/h1` and `Z = 1/zeta`.
pub fn quadrature_integrals(zeta: f64) -> Result<QuadratureIntegrals> {
    let z = 1.0 / zeta;
    let parts = [
        int_corner(zeta)?,
        int_long_xi(z)?,
        int_long_p(z)?,
        int_long_q()?,
        int_p_full()?,
        int_p_beyond(z)?,
    ];
    Ok(QuadratureIntegrals {
        zeta,
        z,
        corner: parts[0].value,
        long_xi: parts[1].value,
        long_p: parts[2].value,
        long_q: parts[3].value,
        p_full: parts[4].value,
        p_beyond: parts[5].value,
        error_bound: parts.iter().map(|p| p.error_bound).fold(0.0, f64::max),
    })
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(0.0..=0.5).contains(&lambda) {
        return domain(format!("lambda must lie in (0, 1/2], got {lambda}"));
    }
    Ok(())
}

/// `sqrt(1 + u) - 1`
fn sqrt1pm1(u: f64) -> f64 {
    u / ((1.0 + u).sqrt() + 1.0)
}

/// `log(1 + sqrt(1 + u)) - log 2`
fn log_half_one_plus_root(u: f64) -> f64 {
    (0.5 * sqrt1pm1(u)).ln_1p()
}

/// Continuum `P` integral of the residual region, in closed form.
pub fn f_lambda(lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return Ok(2.0 * std::f64::consts::LN_2);
    }
    let z = lambda / (1.0 - lambda);
    let z2 = z * z;
    let roots = 2.0 * sqrt1pm1(z2 / 4.0) + sqrt1pm1(4.0 * z2) - 3.0 * sqrt1pm1(z2);
    let logs = 3.0 * log_half_one_plus_root(z2) - 2.0 * log_half_one_plus_root(z2 / 4.0) - log_half_one_plus_root(4.0 * z2);
    let asinhs = 3.0 * z.asinh() - 2.0 * (2.0 * z).asinh() - (z / 2.0).asinh();
    Ok(2.0 / (1.0 - lambda) * (std::f64::consts::LN_2 + 2.0 / z * roots + logs / z + asinhs))
}

/// Continuum `Xi` integral of the residual region plus `log lambda`.
pub fn g_lambda(lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    let base = 2.0 - 3.0 * 3f64.ln();
    if lambda == 0.0 {
        return Ok(base);
    }
    let om = 1.0 - lambda;
    let z = lambda / om;
    let z2 = z * z;
    let roots = sqrt1pm1(4.0 * z2) + sqrt1pm1(2.25 * z2) - sqrt1pm1(z2) - sqrt1pm1(9.0 * z2);
    let logs = log_half_one_plus_root(z2) + log_half_one_plus_root(9.0 * z2)
        - log_half_one_plus_root(4.0 * z2)
        - log_half_one_plus_root(2.25 * z2);
    let asinhs = 2.0 * z.asinh() + 6.0 * (3.0 * z).asinh() - 4.0 * (2.0 * z).asinh() - 3.0 * (1.5 * z).asinh();
    let logs_of_lambda = -lambda * lambda.ln() / om + (-lambda).ln_1p() / om;
    Ok(logs_of_lambda + (base + 4.0 / z * roots + 2.0 / z * logs + asinhs) / om)
}

/// Quadrature of the residual `P` integral; an independent route to [`f_lambda`].
pub fn f_lambda_quadrature(lambda: f64) -> Result<Certified> {
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return domain("the quadrature form needs lambda > 0");
    }
    weighted_double_integral(&tent(0.0, 2.0 / lambda), &tent(0.0, 2.0 / (1.0 - lambda)), QUAD_TOL)
}

/// Quadrature of the residual `Xi` integral, equal to `g(lambda) - log lambda`.
pub fn xi_lambda_quadrature(lambda: f64) -> Result<Certified> {
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return domain("the quadrature form needs lambda > 0");
    }
    let s = 1.0 / (1.0 - lambda);
    let inner = [lp(2.0 * s, 3.0 * s, -2.0 * s, 1.0), lp(3.0 * s, INF, s, 0.0)];
    weighted_double_integral(&tent(0.0, 2.0 / lambda), &inner, QUAD_TOL)
}

/// Chord slopes `2(f(1/2) - f(0))` and `2(g(1/2) - g(0))`.
pub fn chord_slopes() -> Result<(f64, f64)> {
    Ok((
        2.0 * (f_lambda(0.5)? - f_lambda(0.0)?),
        2.0 * (g_lambda(0.5)? - g_lambda(0.0)?),
    ))
}

/// The bracket that must stay nonnegative on `(0, 1/2]` for the residual region
/// to lose against the stripes.
pub fn lemma_IV_bracket(lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    if lambda == 0.0 {
        return Ok(0.0);
    }
    let c = (27.0f64 / 16.0).ln();
    let l2 = lambda * lambda;
    Ok((2.0 - c) * lambda + (c - 1.0 / 3.0) * l2 - 5.0 / 3.0 * l2 * lambda
        + l2 * lambda.ln()
        + (1.0 - lambda) * (-lambda).ln_1p())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_integrals() {
        assert!((int_p_full().unwrap().value - 0.97229).abs() < 1e-4);
        assert!((int_long_q().unwrap().value - 0.36466).abs() < 1e-4);
        assert!(int_p_beyond(4.0).unwrap().value <= 1.0 / 32.0);
    }

    #[test]
    fn closed_forms_against_quadrature() {
        for lambda in [0.05, 0.3, 0.5] {
            let f = f_lambda(lambda).unwrap();
            let fq = f_lambda_quadrature(lambda).unwrap().value;
            assert!((f - fq).abs() < 1e-7, "f({lambda}): {f} vs {fq}");
            let g = g_lambda(lambda).unwrap();
            let gq = xi_lambda_quadrature(lambda).unwrap().value + lambda.ln();
            assert!((g - gq).abs() < 1e-7, "g({lambda}): {g} vs {gq}");
        }
    }

    #[test]
    fn limits_at_zero_are_continuous() {
        let f0 = f_lambda(0.0).unwrap();
        let g0 = g_lambda(0.0).unwrap();
        assert!((f_lambda(1e-9).unwrap() - f0).abs() < 1e-7);
        assert!((g_lambda(1e-9).unwrap() - g0).abs() < 1e-6);
    }

    #[test]
    fn slopes() {
        let (fs, gs) = chord_slopes().unwrap();
        // printed as truncated decimals
        assert!((0.3998..0.3999).contains(&fs), "{fs}");
        assert!((1.497..1.498).contains(&gs), "{gs}");
    }

    #[test]
    fn bracket_domain() {
        assert!(lemma_IV_bracket(0.6).is_err());
        assert!(lemma_IV_bracket(-0.1).is_err());
        assert!(lemma_IV_bracket(0.25).unwrap() > 0.0);
    }
}
