use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::energies::stripe::alpha_s;
use crate::error::{Error, Result};

/// Constants delimiting the excluded regions of the `(h1, h2)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegionConstants {
    pub alpha_s: f64,
    pub c_i: f64,
    /// `c_II(delta) = c_ii_prefactor * e^{4 delta}`
    pub c_ii_prefactor: f64,
    /// `c_III(delta) = c_iii_prefactor * e^{-delta/4 - delta^2}`
    pub c_iii_prefactor: f64,
    pub delta_star: f64,
    pub lambda_min: f64,
    pub c_min: f64,
    pub c_max: f64,
}

impl RegionConstants {
    pub fn c_ii(&self, delta: f64) -> f64 {
        self.c_ii_prefactor * (4.0 * delta).exp()
    }

    pub fn c_iii(&self, delta: f64) -> f64 {
        self.c_iii_prefactor * (-delta / 4.0 - delta * delta).exp()
    }
}

const BISECTION_WIDTH: f64 = 1e-12;

/// Computes every region constant; `delta_*` solves `c_II = c_III` by bisection on `(0, 1]`.
pub fn region_constants() -> Result<RegionConstants> {
    let a = alpha_s();
    let c_i = 2.0 / (PI * 0.5f64.exp()) * (-a / 2.0).exp();
    let c_ii_prefactor = 129.0 / (9.0 * PI) * (-a / 2.0).exp();
    let c_iii_prefactor = 2.0 / PI * (2.0 - a / 2.0).exp();
    let mut rc = RegionConstants {
        alpha_s: a,
        c_i,
        c_ii_prefactor,
        c_iii_prefactor,
        delta_star: f64::NAN,
        lambda_min: f64::NAN,
        c_min: f64::NAN,
        c_max: f64::NAN,
    };
    let gap = |d: f64| rc.c_ii(d) - rc.c_iii(d);
    let (mut lo, mut hi) = (0.0, 1.0);
    if !(gap(lo) < 0.0 && gap(hi) > 0.0) {
        return Err(Error::RootNotFound("c_II and c_III do not cross on (0, 1]".into()));
    }
    while hi - lo > BISECTION_WIDTH {
        let mid = 0.5 * (lo + hi);
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let delta_star = 0.5 * (lo + hi);
    rc.delta_star = delta_star;
    rc.lambda_min = delta_star / (1.0 + delta_star);
    rc.c_min = rc.c_iii(1.0) / 2.0;
    rc.c_max = rc.c_ii(1.0);
    Ok(rc)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `x` starts with the printed digits (the trailing dots mean truncation).
    fn starts_with(x: f64, printed: f64, ulp: f64) -> bool {
        x >= printed && x < printed + ulp
    }

    #[test]
    fn printed_values() {
        let rc = region_constants().unwrap();
        assert!(starts_with(rc.c_i, 0.123, 1e-3), "{}", rc.c_i);
        assert!(starts_with(rc.c_ii(1.0), 79.819, 1e-3), "{}", rc.c_ii(1.0));
        assert!(starts_with(rc.c_ii_prefactor, 1.461, 1e-3));
        assert!(starts_with(rc.c_iii_prefactor, 1.507, 1e-3));
        assert!(starts_with(rc.lambda_min, 0.007, 1e-3));
    }

    #[test]
    fn delta_star_is_a_crossing() {
        let rc = region_constants().unwrap();
        let d = rc.delta_star;
        assert!((rc.c_ii(d) - rc.c_iii(d)).abs() < 1e-10);
        assert!(rc.c_i < rc.c_iii(d) && rc.c_iii(d) <= rc.c_ii(d) + 1e-10);
    }
}
