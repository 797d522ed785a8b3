use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable read by [`ErrorBudget::from_env`] for the default tolerance.
pub const ABS_TOL_ENV: &str = "STRIPES_ABS_TOL";

/// Truncation controls and target accuracy for every certified sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErrorBudget {
    /// Target absolute error, in energy units.
    pub abs_tol: f64,
    /// Largest lattice index (or row count) a truncated sum may visit.
    pub truncation_radius: usize,
    /// Largest number of Bessel terms a Poisson-resummed series may use.
    pub bessel_terms: usize,
}

impl Default for ErrorBudget {
    fn default() -> Self {
        ErrorBudget {
            abs_tol: 1e-9,
            truncation_radius: 1 << 20,
            bessel_terms: 1 << 16,
        }
    }
}

impl ErrorBudget {
    pub fn new(abs_tol: f64, truncation_radius: usize, bessel_terms: usize) -> Result<Self> {
        let budget = ErrorBudget {
            abs_tol,
            truncation_radius,
            bessel_terms,
        };
        budget.validate()?;
        Ok(budget)
    }

    pub fn with_tol(abs_tol: f64) -> Result<Self> {
        ErrorBudget::new(abs_tol, ErrorBudget::default().truncation_radius, ErrorBudget::default().bessel_terms)
    }

    /// Default budget, with `abs_tol` overridden by `STRIPES_ABS_TOL` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(ABS_TOL_ENV) {
            Ok(raw) => {
                let tol: f64 = raw
                    .trim()
                    .parse()
                    .map_err(|_| Error::Domain(format!("{ABS_TOL_ENV}={raw:?} is not a number")))?;
                ErrorBudget::with_tol(tol)
            }
            Err(_) => Ok(ErrorBudget::default()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.abs_tol.is_finite()) {
            return Err(Error::Domain(format!("abs_tol must be positive, got {}", self.abs_tol)));
        }
        if self.truncation_radius < 1 {
            return Err(Error::Domain("truncation_radius must be >= 1".into()));
        }
        if self.bessel_terms < 1 {
            return Err(Error::Domain("bessel_terms must be >= 1".into()));
        }
        Ok(())
    }

    /// Fails with [`Error::BudgetExceeded`] when `reached` exceeds the tolerance.
    pub fn check(&self, reached: f64, context: &str) -> Result<()> {
        if reached <= self.abs_tol {
            Ok(())
        } else {
            Err(Error::BudgetExceeded {
                requested: self.abs_tol,
                reached,
                context: context.to_string(),
            })
        }
    }
}

/// Echo of the inputs that produced an [`EnergyResult`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub j: Option<f64>,
    pub subject: String,
    pub budget: ErrorBudget,
}

/// A value together with a rigorous bound on its truncation and rounding error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnergyResult {
    pub value: f64,
    pub error_bound: f64,
    pub params: Params,
}

impl EnergyResult {
    pub fn new(value: f64, error_bound: f64, j: Option<f64>, subject: impl Into<String>, budget: ErrorBudget) -> Self {
        debug_assert!(error_bound >= 0.0);
        EnergyResult {
            value,
            error_bound,
            params: Params {
                j,
                subject: subject.into(),
                budget,
            },
        }
    }

    /// Interval `[value - error_bound, value + error_bound]`.
    pub fn interval(&self) -> (f64, f64) {
        (self.value - self.error_bound, self.value + self.error_bound)
    }

    /// True when the value is positive beyond its certificate.
    pub fn certainly_positive(&self) -> bool {
        self.value > self.error_bound
    }

    /// True when `|self - other|` is within the combined certificates.
    pub fn agrees_with(&self, other: &EnergyResult) -> bool {
        (self.value - other.value).abs() <= self.error_bound + other.error_bound
    }
}

/// Neumaier-compensated accumulator that also tracks a rounding certificate.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
    abs_sum: f64,
}

/// Relative per-term slack absorbing the evaluation error of each summand.
const TERM_SLACK: f64 = 64.0 * f64::EPSILON;

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs_sum += x.abs();
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }

    pub fn abs_sum(&self) -> f64 {
        self.abs_sum
    }

    /// Bound on accumulated rounding and per-term evaluation error.
    pub fn rounding_bound(&self) -> f64 {
        TERM_SLACK * self.abs_sum
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}
