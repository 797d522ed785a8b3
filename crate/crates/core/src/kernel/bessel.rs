//! Modified Bessel function of the second kind, order one.
//!
//! Power series below `x = 2`, Steed's continued fraction (Temme's CF2) above.
//! Both branches reach a few ulps of relative accuracy.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::kernel::special::EULER_GAMMA;

const SERIES_CUTOFF: f64 = 2.0;
const CF_MAX_ITER: usize = 10_000;

/// `K1(x)` for `x > 0`.
pub fn bessel_k1(x: f64) -> Result<f64> {
    check_arg(x)?;
    Ok(k1_unchecked(x))
}

/// `e^x K1(x)` for `x > 0`; finite for arguments where `K1` underflows.
pub fn bessel_k1_scaled(x: f64) -> Result<f64> {
    check_arg(x)?;
    Ok(k1_scaled_unchecked(x))
}

/// Value of `sqrt(x) e^x K1(x)` at `x0`.
///
/// The map `x -> sqrt(x) e^x K1(x)` decreases monotonically towards
/// `sqrt(pi/2)`, so this is an upper envelope constant for every `x >= x0`.
pub fn k1_envelope(x0: f64) -> Result<f64> {
    check_arg(x0)?;
    Ok(x0.sqrt() * k1_scaled_unchecked(x0))
}

fn check_arg(x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        domain(format!("K1 requires a positive finite argument, got {x}"))
    }
}

pub(crate) fn k1_unchecked(x: f64) -> f64 {
    if x < SERIES_CUTOFF {
        k1_series(x)
    } else {
        k1_scaled_cf(x) * (-x).exp()
    }
}

pub(crate) fn k1_scaled_unchecked(x: f64) -> f64 {
    if x < SERIES_CUTOFF {
        k1_series(x) * x.exp()
    } else {
        k1_scaled_cf(x)
    }
}

/// K1(x) = 1/x + ln(x/2) I1(x) - (x/4) sum_k [psi(k+1) + psi(k+2)] (x^2/4)^k / (k! (k+1)!)
fn k1_series(x: f64) -> f64 {
    let y = 0.25 * x * x;
    let mut term = 1.0; // (x^2/4)^k / (k! (k+1)!)
    let mut harmonic = 0.0; // H_k
    let mut i1_sum = 0.0;
    let mut psi_sum = 0.0;
    for k in 0..60 {
        let kf = k as f64;
        if k > 0 {
            term *= y / (kf * (kf + 1.0));
            harmonic += 1.0 / kf;
        }
        let psi_pair = 2.0 * (-EULER_GAMMA) + 2.0 * harmonic + 1.0 / (kf + 1.0);
        i1_sum += term;
        psi_sum += psi_pair * term;
        if term < 1e-18 * i1_sum {
            break;
        }
    }
    let i1 = 0.5 * x * i1_sum;
    1.0 / x + (0.5 * x).ln() * i1 - 0.25 * x * psi_sum
}

/// Steed's method for the scaled pair (K0, K1) at order zero, valid for x >= 2.
fn k1_scaled_cf(x: f64) -> f64 {
    let a1 = 0.25;
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut delh = d;
    let mut h = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 1..CF_MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * fi;
        c = -a * c / (fi + 1.0);
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            break;
        }
    }
    h *= a1;
    let k0 = (PI / (2.0 * x)).sqrt() / s;
    k0 * (x + 0.5 - h) / x
}
