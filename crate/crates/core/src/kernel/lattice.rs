//! Inverse-cube lattice sums, accelerated by Poisson summation along one axis.
//!
//! The workhorse identity is
//!
//! ```text
//! sum_{n in Z} ((n+s)^2 + c^2)^{-3/2} = 2/c^2 + (8 pi / c) sum_{j>=1} j K1(2 pi j c) cos(2 pi j s)
//! ```
//!
//! whose Bessel tail is bounded with the monotone envelope of `sqrt(x) e^x K1(x)`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::kernel::bessel::{k1_scaled_unchecked, k1_unchecked};
use crate::kernel::budget::{CompensatedSum, EnergyResult, ErrorBudget};
use crate::kernel::special::ZETA_3;

/// A value with a rigorous absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Certified {
    pub value: f64,
    pub error_bound: f64,
}

impl Certified {
    pub fn new(value: f64, error_bound: f64) -> Self {
        Certified { value, error_bound }
    }

    pub fn exact(value: f64) -> Self {
        Certified { value, error_bound: 0.0 }
    }

    pub fn scale(self, k: f64) -> Self {
        Certified::new(self.value * k, self.error_bound * k.abs())
    }

    pub fn plus(self, other: Certified) -> Self {
        Certified::new(self.value + other.value, self.error_bound + other.error_bound)
    }

    pub fn minus(self, other: Certified) -> Self {
        Certified::new(self.value - other.value, self.error_bound + other.error_bound)
    }

    pub fn into_result(self, j: Option<f64>, subject: impl Into<String>, budget: ErrorBudget) -> EnergyResult {
        EnergyResult::new(self.value, self.error_bound, j, subject, budget)
    }
}

/// Upper bound on `sum_{j >= j0} j K1(2 pi j c)`.
pub fn bessel_tail_bound(c: f64, j0: u64) -> f64 {
    debug_assert!(c > 0.0 && j0 >= 1);
    let j0f = j0 as f64;
    let x0 = 2.0 * PI * j0f * c;
    let envelope = x0.sqrt() * k1_scaled_unchecked(x0);
    let q = (-2.0 * PI * c).exp();
    let one_minus_q = -(-2.0 * PI * c).exp_m1();
    // sqrt(j0 + k) <= sqrt(j0) (1 + k / (2 j0))
    let geometric = 1.0 / one_minus_q + q / (2.0 * j0f * one_minus_q * one_minus_q);
    envelope / (2.0 * PI * c).sqrt() * (-x0).exp() * j0f.sqrt() * geometric
}

/// `sum_{j>=1} a_j j K1(2 pi j c)` with `|a_j| <= 1`, truncated once the tail bound
/// drops below `tol`.
pub(crate) fn bessel_series(c: f64, tol: f64, max_terms: usize, coeff: impl Fn(u64) -> f64) -> Result<Certified> {
    let mut acc = CompensatedSum::new();
    let mut j = 1u64;
    loop {
        let tail = bessel_tail_bound(c, j);
        if tail <= tol {
            return Ok(Certified::new(acc.value(), tail + acc.rounding_bound()));
        }
        if j as usize > max_terms {
            return Err(Error::BudgetExceeded {
                requested: tol,
                reached: tail,
                context: format!("Bessel series at c = {c} needs more than {max_terms} terms"),
            });
        }
        let jf = j as f64;
        acc.add(coeff(j) * jf * k1_unchecked(2.0 * PI * jf * c));
        j += 1;
    }
}

/// Tolerance handed to inner Bessel series: far below the caller's budget so
/// that truncation never dominates rounding.
pub(crate) fn series_tol(budget: &ErrorBudget) -> f64 {
    (budget.abs_tol * 1e-6).max(1e-300)
}

/// `sum_{n in Z} (n^2 + a^2)^{-3/2}` via its Bessel resummation.
pub fn axis_sum(a: f64, budget: &ErrorBudget) -> Result<Certified> {
    if !(a > 0.0 && a.is_finite()) {
        return domain(format!("axis_sum requires a > 0, got {a}"));
    }
    shifted_axis_sum(0.0, a, budget)
}

/// `sum_{n in Z} ((n+s)^2 + c^2)^{-3/2}` for `c > 0`.
pub fn shifted_axis_sum(s: f64, c: f64, budget: &ErrorBudget) -> Result<Certified> {
    if !(c > 0.0 && c.is_finite()) {
        return domain(format!("shifted_axis_sum requires c > 0, got {c}"));
    }
    let tol = series_tol(budget) * c / (8.0 * PI);
    let series = if s == 0.0 {
        bessel_series(c, tol, budget.bessel_terms, |_| 1.0)?
    } else {
        bessel_series(c, tol, budget.bessel_terms, |j| (2.0 * PI * j as f64 * s).cos())?
    };
    let value = 2.0 / (c * c) + 8.0 * PI / c * series.value;
    let err = 8.0 * PI / c * series.error_bound + 4.0 * f64::EPSILON * value;
    budget.check(err, "shifted_axis_sum")?;
    Ok(Certified::new(value, err))
}

/// Direct evaluation of `sum_{|n| <= n_max} (n^2 + a^2)^{-3/2}` plus the
/// midpoint-integral tail.
///
/// For convex decreasing summands the tail lies between the trapezoid and
/// midpoint integral estimates; the value returned is the midpoint estimate and
/// the bound is the gap.
pub fn axis_sum_direct(a: f64, n_max: u64) -> Result<Certified> {
    if !(a > 0.0 && a.is_finite()) {
        return domain(format!("axis_sum_direct requires a > 0, got {a}"));
    }
    if (n_max as f64) < a {
        return domain("axis_sum_direct needs n_max >= a for the convexity bracket");
    }
    let f = |t: f64| (t * t + a * a).powf(-1.5);
    let mut acc = CompensatedSum::new();
    for n in (1..=n_max).rev() {
        acc.add(2.0 * f(n as f64));
    }
    acc.add(f(0.0));
    let (tail, gap) = convex_tail(a, n_max as f64);
    let value = acc.value() + 2.0 * tail;
    Ok(Certified::new(value, 2.0 * gap + acc.rounding_bound() + 4.0 * f64::EPSILON * value))
}

/// `int_p^inf (t^2 + c^2)^{-3/2} dt` for `p >= 0`, written without cancellation.
pub(crate) fn tail_integral(c: f64, p: f64) -> f64 {
    let r = (p * p + c * c).sqrt();
    1.0 / (r * (r + p))
}

/// Estimate and half-width for `sum_{n > m} (n^2 + c^2)^{-3/2}` when the summand
/// is convex on `[m, inf)`, i.e. `2m >= c`.
fn convex_tail(c: f64, m: f64) -> (f64, f64) {
    let f = |t: f64| (t * t + c * c).powf(-1.5);
    let upper = tail_integral(c, m + 0.5);
    let lower = tail_integral(c, m + 1.0) + 0.5 * f(m + 1.0);
    (0.5 * (upper + lower), 0.5 * (upper - lower).abs())
}

/// `sum_{j>=1} sum_{n>=1} j K1(2 pi j n)`.
pub fn bessel_double_tail() -> Certified {
    static CELL: OnceLock<Certified> = OnceLock::new();
    *CELL.get_or_init(|| double_bessel_sum(|_| 1.0))
}

/// `sum_{n>=1} w(n) sum_{j>=1} j K1(2 pi j n)` for weights with `|w(n)| <= n`.
fn double_bessel_sum(weight: impl Fn(u64) -> f64) -> Certified {
    bessel_row_sum(1, None, weight)
}

/// `sum_{n = lo}^{hi} w(n) sum_{j>=1} j K1(2 pi j n)` (`hi = None` for infinity),
/// for weights with `|w(n)| <= n`; rows are dropped once their total is below 1e-22.
pub(crate) fn bessel_row_sum(lo: u64, hi: Option<u64>, weight: impl Fn(u64) -> f64) -> Certified {
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    let mut n = lo.max(1);
    while hi.is_none_or(|h| n <= h) {
        let nf = n as f64;
        // every remaining row is bounded by n' * tail(n') and decays by e^{-2 pi}
        let remaining = nf * bessel_tail_bound(nf, 1) / (1.0 - (-2.0 * PI).exp()) * (1.0 + 1.0 / nf);
        if remaining < 1e-22 {
            err += remaining;
            break;
        }
        let row = bessel_series(nf, 1e-24, 1 << 20, |_| 1.0).expect("row converges geometrically");
        acc.add(weight(n) * row.value);
        err += weight(n).abs() * row.error_bound;
        n += 1;
    }
    Certified::new(acc.value(), err + acc.rounding_bound())
}

/// `sum_{m in Z^2 \ 0} |m|^{-3}`.
pub fn lattice_zeta() -> Certified {
    static CELL: OnceLock<Certified> = OnceLock::new();
    *CELL.get_or_init(|| {
        // row n2 = 0 gives 2 zeta(3); rows n2 != 0 are axis sums.
        let bessel = double_bessel_sum(|n| 1.0 / n as f64);
        let value = 2.0 * ZETA_3 + 4.0 * PI * PI / 6.0 + 16.0 * PI * bessel.value;
        Certified::new(value, 16.0 * PI * bessel.error_bound + 8.0 * f64::EPSILON * value)
    })
}

/// `sum_{m in Z^2} |dx + L m|^{-3}` on the torus of side `L`.
pub fn periodic_kernel(dx: (i64, i64), side: u64, budget: &ErrorBudget) -> Result<Certified> {
    let value = periodic_kernel_with_tol(dx, side, series_tol(budget), budget)?;
    budget.check(value.error_bound, "periodic_kernel")?;
    Ok(value)
}

/// [`periodic_kernel`] with an explicit truncation target and no final budget check.
pub(crate) fn periodic_kernel_with_tol(
    dx: (i64, i64),
    side: u64,
    trunc_tol: f64,
    budget: &ErrorBudget,
) -> Result<Certified> {
    if side == 0 {
        return domain("torus side must be positive");
    }
    let l = side as i64;
    let (mut a, mut b) = (dx.0.rem_euclid(l), dx.1.rem_euclid(l));
    if a == 0 && b == 0 {
        return domain(format!("periodic kernel is singular at dx = {dx:?} (mod {side})"));
    }
    if b == 0 {
        std::mem::swap(&mut a, &mut b);
    }
    let lf = side as f64;
    let s = a as f64 / lf;
    let t = b as f64 / lf;
    // sum over rows m2 of the leading 2/c^2 term: 2 pi^2 / sin^2(pi t)
    let sin_t = (PI * t).sin();
    let leading = 2.0 * PI * PI / (sin_t * sin_t);

    let tol = trunc_tol * lf.powi(3);
    let row_ratio = 1.0 / (1.0 - (-2.0 * PI).exp());
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    let mut k = 0u64;
    loop {
        let c_lo = t.min(1.0 - t) + k as f64;
        // both row families from here on
        let remaining = 2.0 * 8.0 * PI / c_lo * bessel_tail_bound(c_lo, 1) * row_ratio;
        if remaining <= tol {
            err += remaining;
            break;
        }
        if k as usize > budget.truncation_radius {
            return Err(Error::BudgetExceeded {
                requested: budget.abs_tol,
                reached: remaining / lf.powi(3),
                context: format!("periodic kernel rows for dx = {dx:?}, L = {side}"),
            });
        }
        for c in [t + k as f64, 1.0 - t + k as f64] {
            let row = bessel_series(c, tol * c / (8.0 * PI), budget.bessel_terms, |j| {
                (2.0 * PI * j as f64 * s).cos()
            })?;
            acc.add(8.0 * PI / c * row.value);
            err += 8.0 * PI / c * row.error_bound;
        }
        k += 1;
    }
    acc.add(leading);
    let scale = lf.powi(-3);
    let value = acc.value() * scale;
    let err = (err + acc.rounding_bound()) * scale + 4.0 * f64::EPSILON * value;
    Ok(Certified::new(value, err))
}

/// How a [`WeightProfile`] continues past its outermost knot.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Ray {
    /// Support ends at the knot.
    Stop,
    /// Support continues to infinity, linearly with the given slope.
    Continue { slope: f64 },
}

/// Nonnegative piecewise-linear weight on the integers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightProfile {
    knots: Vec<(i64, f64)>,
    left: Ray,
    right: Ray,
}

impl WeightProfile {
    /// Linear interpolation between integer knots, extended by the given rays.
    pub fn new(knots: Vec<(i64, f64)>, left: Ray, right: Ray) -> Result<Self> {
        if knots.is_empty() {
            return domain("weight profile needs at least one knot");
        }
        if knots.windows(2).any(|w| w[0].0 >= w[1].0) {
            return domain("weight profile knots must be strictly increasing");
        }
        if knots.iter().any(|&(_, w)| !(w >= 0.0 && w.is_finite())) {
            return domain("weights must be finite and nonnegative");
        }
        for (ray, outward) in [(left, -1.0), (right, 1.0)] {
            if let Ray::Continue { slope } = ray {
                if !slope.is_finite() || slope * outward < 0.0 {
                    return domain("a ray may not decrease the weight towards infinity");
                }
            }
        }
        Ok(WeightProfile { knots, left, right })
    }

    /// Constant weight on all of Z.
    pub fn constant_line(value: f64) -> Self {
        WeightProfile {
            knots: vec![(0, value)],
            left: Ray::Continue { slope: 0.0 },
            right: Ray::Continue { slope: 0.0 },
        }
    }

    /// Unit weight on `[lo, hi]`.
    pub fn indicator(lo: i64, hi: i64) -> Result<Self> {
        if lo == hi {
            return WeightProfile::new(vec![(lo, 1.0)], Ray::Stop, Ray::Stop);
        }
        WeightProfile::new(vec![(lo, 1.0), (hi, 1.0)], Ray::Stop, Ray::Stop)
    }

    /// Unit weight on `[lo, inf)`.
    pub fn half_line(lo: i64) -> Self {
        WeightProfile {
            knots: vec![(lo, 1.0)],
            left: Ray::Stop,
            right: Ray::Continue { slope: 0.0 },
        }
    }

    /// `min{n - offset, cap}` on `[offset + 1, inf)`: a ramp that saturates.
    pub fn saturating_ramp(offset: i64, cap: i64) -> Result<Self> {
        if cap < 1 {
            return domain("ramp cap must be >= 1");
        }
        let knots = if cap == 1 {
            vec![(offset + 1, 1.0)]
        } else {
            vec![(offset + 1, 1.0), (offset + cap, cap as f64)]
        };
        WeightProfile::new(knots, Ray::Stop, Ray::Continue { slope: 0.0 })
    }

    /// Piecewise-linear tent/trapezoid `min{n - lo, plateau, hi - n}` on `[lo+1, hi-1]`.
    pub fn trapezoid(lo: i64, hi: i64, plateau: i64) -> Result<Self> {
        if hi - lo < 2 || plateau < 1 {
            return domain("trapezoid needs hi - lo >= 2 and plateau >= 1");
        }
        let height = plateau.min((hi - lo) / 2);
        let mut pts = vec![lo + 1, lo + height, hi - height, hi - 1];
        pts.dedup();
        let mut knots: Vec<(i64, f64)> = Vec::new();
        for p in pts {
            if knots.last().is_none_or(|&(q, _)| q < p) {
                let w = (p - lo).min(plateau).min(hi - p) as f64;
                knots.push((p, w));
            }
        }
        WeightProfile::new(knots, Ray::Stop, Ray::Stop)
    }

    pub fn knots(&self) -> &[(i64, f64)] {
        &self.knots
    }

    fn first(&self) -> (i64, f64) {
        self.knots[0]
    }

    fn last(&self) -> (i64, f64) {
        *self.knots.last().expect("nonempty")
    }

    /// Weight at `n` (zero outside the support).
    pub fn eval(&self, n: i64) -> f64 {
        let (lo, wlo) = self.first();
        let (hi, whi) = self.last();
        if n < lo {
            return match self.left {
                Ray::Stop => 0.0,
                Ray::Continue { slope } => wlo - slope * (lo - n) as f64,
            };
        }
        if n > hi {
            return match self.right {
                Ray::Stop => 0.0,
                Ray::Continue { slope } => whi + slope * (n - hi) as f64,
            };
        }
        let idx = self.knots.partition_point(|&(k, _)| k <= n);
        let (k0, w0) = self.knots[idx - 1];
        if k0 == n || idx == self.knots.len() {
            return w0;
        }
        let (k1, w1) = self.knots[idx];
        w0 + (w1 - w0) * (n - k0) as f64 / (k1 - k0) as f64
    }

    fn has_slope(&self) -> bool {
        [self.left, self.right]
            .iter()
            .any(|r| matches!(r, Ray::Continue { slope } if *slope != 0.0))
    }

    /// Even symmetrization `(w(n) + w(-n)) / 2`, split into its limit at infinity
    /// and a finitely supported deviation indexed by `|n|`.
    fn fold(&self) -> Folded {
        let tail = |ray: Ray, w: f64| match ray {
            Ray::Stop => 0.0,
            Ray::Continue { .. } => w,
        };
        let mean = 0.5 * (tail(self.left, self.first().1) + tail(self.right, self.last().1));
        let reach = self.first().0.unsigned_abs().max(self.last().0.unsigned_abs()) + 1;
        let dev = (0..=reach as i64)
            .map(|n| 0.5 * (self.eval(n) + self.eval(-n)) - mean)
            .collect();
        Folded { mean, dev }
    }
}

struct Folded {
    mean: f64,
    /// deviation at |n| = 0, 1, 2, ...
    dev: Vec<f64>,
}

/// Certified `sum_{n in Z} dev(|n|) A(n)` where `A(n) = sum_{m in Z} K(m, n)`.
fn axis_projection(dev: &[f64], budget: &ErrorBudget) -> Result<Certified> {
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    acc.add(dev[0] * 2.0 * ZETA_3);
    for (n, &d) in dev.iter().enumerate().skip(1) {
        if d == 0.0 {
            continue;
        }
        let a = axis_sum(n as f64, budget)?;
        acc.add(2.0 * d * a.value);
        err += 2.0 * d.abs() * a.error_bound;
    }
    Ok(Certified::new(acc.value(), err + acc.rounding_bound()))
}

/// `(1/normalizer) sum_{n1, n2} w1(n1) w2(n2) (n1^2 + n2^2)^{-3/2}`.
///
/// Weights that reach infinity must be eventually constant; the sum is then
/// split into a full-lattice part, two Poisson-resummed axis parts and a finite
/// double sum, all by evenness of the kernel in each coordinate.
pub fn weighted_lattice_sum(
    w1: &WeightProfile,
    w2: &WeightProfile,
    normalizer: f64,
    budget: &ErrorBudget,
) -> Result<EnergyResult> {
    let cert = weighted_lattice_sum_certified(w1, w2, budget)?;
    if !(normalizer > 0.0 && normalizer.is_finite()) {
        return domain("normalizer must be positive");
    }
    let scaled = cert.scale(1.0 / normalizer);
    budget.check(scaled.error_bound, "weighted_lattice_sum")?;
    Ok(scaled.into_result(None, "weighted_lattice_sum", *budget))
}

pub(crate) fn weighted_lattice_sum_certified(
    w1: &WeightProfile,
    w2: &WeightProfile,
    budget: &ErrorBudget,
) -> Result<Certified> {
    if w1.has_slope() || w2.has_slope() {
        return Err(Error::Divergence(
            "weights growing towards infinity make the inverse-cube sum diverge".into(),
        ));
    }
    if w1.eval(0) * w2.eval(0) != 0.0 {
        return Err(Error::Divergence("both weights cover the origin, where the kernel is singular".into()));
    }
    let f1 = w1.fold();
    let f2 = w2.fold();
    if f1.dev.len() * f2.dev.len() > budget.truncation_radius.saturating_mul(budget.truncation_radius) {
        return Err(Error::BudgetExceeded {
            requested: budget.abs_tol,
            reached: f64::INFINITY,
            context: "finite part of the weighted sum exceeds truncation_radius^2 terms".into(),
        });
    }

    let mut total = Certified::exact(0.0);
    if f1.mean != 0.0 && f2.mean != 0.0 {
        total = total.plus(lattice_zeta().scale(f1.mean * f2.mean));
    }
    if f1.mean != 0.0 {
        total = total.plus(axis_projection(&f2.dev, budget)?.scale(f1.mean));
    }
    if f2.mean != 0.0 {
        total = total.plus(axis_projection(&f1.dev, budget)?.scale(f2.mean));
    }
    total = total.plus(finite_double_sum(&f1.dev, &f2.dev));
    Ok(total)
}

/// `sum_{n1, n2 in Z, (n1,n2) != 0} d1(|n1|) d2(|n2|) |n|^{-3}` for finitely supported deviations.
fn finite_double_sum(d1: &[f64], d2: &[f64]) -> Certified {
    let mut acc = CompensatedSum::new();
    let mut inner_err = 0.0;
    for (i, &a) in d1.iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        let mult_i = if i == 0 { 1.0 } else { 2.0 };
        let x2 = (i * i) as f64;
        let mut row = CompensatedSum::new();
        for (k, &b) in d2.iter().enumerate() {
            if b == 0.0 || (i == 0 && k == 0) {
                continue;
            }
            let mult_k = if k == 0 { 1.0 } else { 2.0 };
            let r2 = x2 + (k * k) as f64;
            row.add(mult_k * b / (r2 * r2.sqrt()));
        }
        acc.add(mult_i * a * row.value());
        inner_err += (mult_i * a).abs() * row.rounding_bound();
    }
    Certified::new(acc.value(), acc.rounding_bound() + inner_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> ErrorBudget {
        ErrorBudget::with_tol(1e-10).unwrap()
    }

    #[test]
    fn axis_sum_poisson_matches_direct() {
        for a in [0.5, 1.0, 2.5, 3.0, 7.0, 10.0] {
            let fast = axis_sum(a, &budget()).unwrap();
            let slow = axis_sum_direct(a, 100_000).unwrap();
            assert!((fast.value - slow.value).abs() < 1e-9, "a={a}: {} vs {}", fast.value, slow.value);
            assert!((fast.value - slow.value).abs() <= fast.error_bound + slow.error_bound + 1e-15);
        }
    }

    #[test]
    fn axis_sum_large_a_limit() {
        let a = 50.0;
        let v = axis_sum(a, &budget()).unwrap().value;
        assert!((a * a * v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn lattice_zeta_matches_dirichlet_product() {
        // 4 zeta(3/2) beta(3/2)
        let want = 4.0 * 2.612_375_348_685_488 * 0.864_502_653_461_202;
        let got = lattice_zeta();
        assert!((got.value - want).abs() < 1e-13, "{} vs {want}", got.value);
    }

    #[test]
    fn periodic_kernel_symmetries() {
        let b = budget();
        let k = |x, y| periodic_kernel((x, y), 7, &b).unwrap().value;
        assert!((k(2, 3) - k(-2, -3)).abs() < 1e-15);
        assert!((k(2, 3) - k(3, 2)).abs() < 1e-15);
        assert!((k(2, 3) - k(2 + 7, 3 - 14)).abs() < 1e-15);
        assert!((k(1, 0) - k(0, 1)).abs() < 1e-15);
    }

    #[test]
    fn periodic_kernel_rejects_origin() {
        assert!(periodic_kernel((0, 0), 4, &budget()).is_err());
        assert!(periodic_kernel((4, -8), 4, &budget()).is_err());
    }

    #[test]
    fn periodic_kernel_large_torus_limit() {
        let v = periodic_kernel((1, 0), 4096, &budget()).unwrap().value;
        // next images sit at distance ~L
        assert!((v - 1.0 - 2.0 * ZETA_3 / 4096f64.powi(3)).abs() < 1e-9);
    }

    #[test]
    fn weight_profile_shapes() {
        let t = WeightProfile::trapezoid(0, 10, 3).unwrap();
        let got: Vec<f64> = (0..=10).map(|n| t.eval(n)).collect();
        assert_eq!(got, vec![0.0, 1.0, 2.0, 3.0, 3.0, 3.0, 3.0, 3.0, 2.0, 1.0, 0.0]);
        let tent = WeightProfile::trapezoid(0, 6, 100).unwrap();
        let got: Vec<f64> = (0..=6).map(|n| tent.eval(n)).collect();
        assert_eq!(got, vec![0.0, 1.0, 2.0, 3.0, 2.0, 1.0, 0.0]);
        let r = WeightProfile::saturating_ramp(4, 3).unwrap();
        let got: Vec<f64> = (3..=10).map(|n| r.eval(n)).collect();
        assert_eq!(got, vec![0.0, 0.0, 1.0, 2.0, 3.0, 3.0, 3.0, 3.0]);
    }

    #[test]
    fn weight_profile_rejects_bad_input() {
        assert!(WeightProfile::new(vec![], Ray::Stop, Ray::Stop).is_err());
        assert!(WeightProfile::new(vec![(1, 1.0), (1, 2.0)], Ray::Stop, Ray::Stop).is_err());
        assert!(WeightProfile::new(vec![(1, -1.0)], Ray::Stop, Ray::Stop).is_err());
        assert!(WeightProfile::new(vec![(1, 1.0)], Ray::Stop, Ray::Continue { slope: -1.0 }).is_err());
    }

    #[test]
    fn weighted_sum_single_term() {
        let w = WeightProfile::indicator(1, 1).unwrap();
        let r = weighted_lattice_sum(&w, &w, 1.0, &budget()).unwrap();
        assert!((r.value - 2f64.powf(-1.5)).abs() < 1e-15);
    }

    #[test]
    fn weighted_sum_divergence_errors() {
        let ramp = WeightProfile::new(vec![(1, 1.0)], Ray::Stop, Ray::Continue { slope: 1.0 }).unwrap();
        let line = WeightProfile::constant_line(1.0);
        assert!(matches!(
            weighted_lattice_sum(&ramp, &line, 1.0, &budget()),
            Err(Error::Divergence(_))
        ));
        assert!(matches!(
            weighted_lattice_sum(&line, &line, 1.0, &budget()),
            Err(Error::Divergence(_))
        ));
    }

    #[test]
    fn bessel_double_tail_is_small_positive() {
        let v = bessel_double_tail();
        assert!(v.value > 0.0 && v.error_bound < 1e-15);
        // dominated by K1(2 pi)
        let k = k1_unchecked(2.0 * PI);
        assert!(v.value > k && v.value < 1.2 * k);
    }
}
