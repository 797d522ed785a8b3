//! Globally adaptive Gauss–Kronrod (7/15) quadrature, plus closed-form inner
//! integrals for the piecewise-linear weighted inverse-cube kernels.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::kernel::lattice::Certified;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_INTERVALS: usize = 20_000;

fn gk15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let x = h * XGK[i];
        let pair = f(c - x) + f(c + x);
        kronrod += WGK[i] * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Piece {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// Adaptive integral of `f` over the finite intervals between consecutive `points`.
fn adapt(f: &impl Fn(f64) -> f64, points: &[f64], tol: f64) -> Result<Certified> {
    let mut heap = BinaryHeap::new();
    let mut total_err = 0.0;
    for w in points.windows(2) {
        let (v, e) = gk15(f, w[0], w[1]);
        total_err += e;
        heap.push(Piece { a: w[0], b: w[1], value: v, err: e });
    }
    while total_err > tol {
        if heap.len() >= MAX_INTERVALS {
            return Err(Error::Quadrature(format!(
                "no convergence after {MAX_INTERVALS} subintervals (error estimate {total_err:e})"
            )));
        }
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            return Err(Error::Quadrature("subinterval collapsed below machine resolution".into()));
        }
        let (v1, e1) = gk15(f, worst.a, mid);
        let (v2, e2) = gk15(f, mid, worst.b);
        total_err += e1 + e2 - worst.err;
        heap.push(Piece { a: worst.a, b: mid, value: v1, err: e1 });
        heap.push(Piece { a: mid, b: worst.b, value: v2, err: e2 });
    }
    // re-add from scratch to shed the drift of the running totals
    let (mut value, mut err) = (0.0, 0.0);
    for p in heap.iter() {
        value += p.value;
        err += p.err;
    }
    if !value.is_finite() {
        return Err(Error::Quadrature("integrand produced a non-finite value".into()));
    }
    Ok(Certified::new(value, err + 1e3 * f64::EPSILON * value.abs()))
}

/// `int_a^b f`, with `b` possibly `+inf`, splitting at the given interior breakpoints.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, breaks: &[f64], tol: f64) -> Result<Certified> {
    if !(a.is_finite() && b > a) || tol <= 0.0 {
        return Err(Error::Quadrature(format!("invalid interval [{a}, {b}] or tolerance {tol}")));
    }
    let mut finite: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|&x| x > a && x < b && x.is_finite()))
        .collect();
    finite.sort_by(f64::total_cmp);
    finite.dedup();
    if b.is_finite() {
        finite.push(b);
        return adapt(&f, &finite, tol);
    }
    let start = *finite.last().expect("nonempty");
    let head = if finite.len() > 1 {
        adapt(&f, &finite, 0.5 * tol)?
    } else {
        Certified::exact(0.0)
    };
    // x = start + t / (1 - t)
    let g = |t: f64| {
        let s = 1.0 - t;
        f(start + t / s) / (s * s)
    };
    let tail = adapt(&g, &[0.0, 1.0], 0.5 * tol)?;
    Ok(head.plus(tail))
}

/// Linear weight `alpha + beta t` on `[lo, hi]` (`hi` may be `+inf`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinearPiece {
    pub lo: f64,
    pub hi: f64,
    pub alpha: f64,
    pub beta: f64,
}

impl LinearPiece {
    pub fn new(lo: f64, hi: f64, alpha: f64, beta: f64) -> Self {
        LinearPiece { lo, hi, alpha, beta }
    }

    pub fn weight(&self, t: f64) -> f64 {
        self.alpha + self.beta * t
    }
}

/// `int_p^q (alpha + beta t) (a^2 + t^2)^{-3/2} dt` for `0 <= p < q <= inf`,
/// written without subtractive cancellation.
pub fn inverse_cube_linear(a: f64, piece: &LinearPiece) -> f64 {
    let (p, q) = (piece.lo, piece.hi);
    let aa = (a * a + p * p).sqrt();
    if q.is_infinite() {
        return piece.alpha / (aa * (aa + p)) + piece.beta / aa;
    }
    let bb = (a * a + q * q).sqrt();
    let dq = (q - p) * (q + p);
    piece.alpha * dq / ((q * aa + p * bb) * aa * bb) + piece.beta * dq / ((aa + bb) * aa * bb)
}

/// `int int w1(x1) w2(x2) (x1^2 + x2^2)^{-3/2}` over the product of the given
/// piecewise-linear profiles on the positive quadrant.
///
/// The inner integral is done in closed form, the outer one adaptively.
pub fn weighted_double_integral(outer: &[LinearPiece], inner: &[LinearPiece], tol: f64) -> Result<Certified> {
    let inner_sum = |x: f64| inner.iter().map(|p| inverse_cube_linear(x, p)).sum::<f64>();
    let share = tol / outer.len().max(1) as f64;
    let mut total = Certified::exact(0.0);
    for piece in outer {
        let mut breaks: Vec<f64> = inner
            .iter()
            .flat_map(|p| [p.lo, p.hi])
            .filter(|x| x.is_finite() && *x > 0.0)
            .collect();
        breaks.sort_by(f64::total_cmp);
        let part = integrate(|x| piece.weight(x) * inner_sum(x), piece.lo, piece.hi, &breaks, share)?;
        total = total.plus(part);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_exact() {
        let r = integrate(|x| x.powi(5) - 3.0 * x * x, -1.0, 2.0, &[], 1e-13).unwrap();
        assert!((r.value - (64.0 / 6.0 - 1.0 / 6.0 - 9.0)).abs() < 1e-13);
    }

    #[test]
    fn infinite_interval() {
        let r = integrate(|x| 1.0 / (1.0 + x * x), 0.0, f64::INFINITY, &[], 1e-12).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-11);
        let r = integrate(|x| (-x).exp(), 1.0, f64::INFINITY, &[2.0, 5.0], 1e-12).unwrap();
        assert!((r.value - (-1.0f64).exp()).abs() < 1e-11);
    }

    #[test]
    fn log_singularity() {
        let r = integrate(|x| -x.ln(), 0.0, 1.0, &[], 1e-10).unwrap();
        assert!((r.value - 1.0).abs() < 1e-9);
    }

    #[test]
    fn closed_form_inner_matches_quadrature() {
        for (a, p, q, al, be) in [(0.3, 0.0, 2.0, 1.0, -0.5), (1.7, 0.5, 3.0, 0.0, 1.0), (0.0, 0.2, 0.9, 2.0, 3.0)] {
            let piece = LinearPiece::new(p, q, al, be);
            let want = integrate(|t| (al + be * t) / (a * a + t * t).powf(1.5), p, q, &[], 1e-13).unwrap();
            assert!((inverse_cube_linear(a, &piece) - want.value).abs() < 1e-11);
        }
        let piece = LinearPiece::new(1.0, f64::INFINITY, 2.0, 0.5);
        let want = integrate(|t| (2.0 + 0.5 * t) / (4.0 + t * t).powf(1.5), 1.0, f64::INFINITY, &[], 1e-13).unwrap();
        assert!((inverse_cube_linear(2.0, &piece) - want.value).abs() < 1e-11);
    }

    #[test]
    fn reports_failure_on_nonintegrable() {
        assert!(integrate(|x| 1.0 / x, 0.0, 1.0, &[], 1e-12).is_err());
    }
}
