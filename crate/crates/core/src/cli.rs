//! The `stripes` command line: argument parsing, command dispatch, output
//! formatting and exit codes.

use std::f64::consts::PI;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::energies::stripe::{alpha_s, c_star, ell_sum_identity, stripe_energy_asymptotic};
use crate::energies::{
    checkerboard_energy, energy_per_site, optimal_stripe_width, stripe_energy, CheckerboardSpec, Orientation, Side,
    SpinConfiguration, StripeSpec,
};
use crate::error::{Error, Result};
use crate::kernel::budget::{EnergyResult, ErrorBudget, ABS_TOL_ENV};
use crate::kernel::lattice::bessel_double_tail;
use crate::lemmas::{
    appendix_R_II, appendix_R_III, chord_slopes, int_long_q, int_p_full, lemma_III_energy_check,
    lemma_II_energy_check, lemma_IV_bracket, lemma_IV_energy_check, lemma_I_energy_check, region_constants,
    MarginReport,
};
use crate::rp::{chessboard_estimate_check, sample_config, StraightLineConfig};
use crate::search::{class_samples, classify_with, restricted_verdict, restricted_verdict_on, scan, Class, VerdictStatus};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;
pub const EXIT_VIOLATION: i32 = 5;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Parity(_) | Error::Divisibility(_) => EXIT_USAGE,
        Error::BudgetExceeded { .. } | Error::Divergence(_) | Error::Quadrature(_) | Error::RootNotFound(_) => {
            EXIT_BUDGET
        }
        Error::WindowExhausted(_) => EXIT_INCONCLUSIVE,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// `optimal` or a positive stripe width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StripeWidth {
    Optimal,
    Width(u64),
}

impl FromStr for StripeWidth {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("optimal") {
            return Ok(StripeWidth::Optimal);
        }
        match s.parse::<u64>() {
            Ok(h) if h >= 1 => Ok(StripeWidth::Width(h)),
            _ => Err(Error::Domain(format!("--h must be a positive integer or \"optimal\", got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    /// thin tiles: E(h1, h2) > E(h1, 3 h2)
    #[value(name = "1")]
    Thin,
    /// thick tiles: E(h1, h2) > average of E over the halves of h2
    #[value(name = "2")]
    Thick,
    /// long tiles: E(h1, h2) > E(3 h1, h2)
    #[value(name = "3")]
    Long,
    /// residual region against the stripes, and the bracket B(lambda)
    #[value(name = "4")]
    Residual,
    /// chessboard estimate on random straight-line configurations
    Rp,
    /// finite-torus remainders R_II and R_III
    Appendix,
}

/// Where the `oracle` command takes its configuration from.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigSource {
    Uniform,
    Stripe(u64),
    Checkerboard(u64, u64),
    /// random straight-line configuration with the given cut density
    Random(f64),
    /// `L` lines of `+` and `-`
    File(PathBuf),
}

impl FromStr for ConfigSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!(
            "config source must be uniform, stripe:H, checkerboard:H1,H2, random:DENSITY or file:PATH, got {s:?}"
        ));
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        let int = |t: &str| t.trim().parse::<u64>().ok().filter(|&h| h >= 1).ok_or_else(bad);
        Ok(match kind {
            "uniform" if arg.is_empty() => ConfigSource::Uniform,
            "stripe" => ConfigSource::Stripe(int(arg)?),
            "checkerboard" => {
                let (a, b) = arg.split_once(',').ok_or_else(bad)?;
                ConfigSource::Checkerboard(int(a)?, int(b)?)
            }
            "random" => ConfigSource::Random(arg.trim().parse().map_err(|_| bad())?),
            "file" if !arg.is_empty() => ConfigSource::File(PathBuf::from(arg)),
            _ => return Err(bad()),
        })
    }
}

impl fmt::Display for ConfigSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigSource::Uniform => write!(f, "uniform"),
            ConfigSource::Stripe(h) => write!(f, "stripe:{h}"),
            ConfigSource::Checkerboard(a, b) => write!(f, "checkerboard:{a},{b}"),
            ConfigSource::Random(d) => write!(f, "random:{d}"),
            ConfigSource::File(p) => write!(f, "file:{}", p.display()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "stripes",
    version,
    about = "Energies of striped and checkerboard states of the dipolar Ising model"
)]
pub struct RunConfig {
    /// Target absolute error of every certified quantity
    #[arg(long, env = ABS_TOL_ENV, global = true)]
    pub abs_tol: Option<f64>,
    /// Largest lattice index a truncated sum may visit
    #[arg(long, global = true)]
    pub truncation_radius: Option<usize>,
    /// Seed of the random configuration sampler
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output format; `scan` defaults to csv, everything else to json
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the output to this file instead of stdout
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Computed constants next to the printed ones
    Constants,
    /// Stripe energy E_s(h), or the optimal width
    Stripe {
        #[arg(long = "J")]
        j: f64,
        #[arg(long, default_value = "optimal")]
        h: StripeWidth,
    },
    /// Checkerboard energy E(h1, h2); either side may be `inf`
    Checkerboard {
        #[arg(long = "J")]
        j: f64,
        #[arg(long)]
        h1: Side,
        #[arg(long)]
        h2: Side,
    },
    /// Region and energy of every cell h1 >= h2 on a grid, plus the stripe column
    Scan {
        #[arg(long = "J")]
        j: f64,
        #[arg(long)]
        h_max: u64,
        #[arg(long, default_value_t = 1)]
        stride: u64,
    },
    /// Whether the optimal stripes beat every scanned cell
    Verdict {
        #[arg(long = "J")]
        j: f64,
        /// defaults to the top of the stripe search window
        #[arg(long)]
        h_max: Option<u64>,
        #[arg(long)]
        stride: Option<u64>,
    },
    /// Energy comparisons behind the exclusion regions, the chessboard
    /// estimate, and the finite-torus remainders
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        #[arg(long = "J")]
        j: Option<f64>,
        #[arg(long)]
        h1: Option<u64>,
        #[arg(long)]
        h2: Option<u64>,
        /// `h` of the residual region
        #[arg(long)]
        h: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long = "L")]
        side: Option<usize>,
        /// number of sampled cells or configurations
        #[arg(long)]
        samples: Option<usize>,
        /// cut density of random configurations
        #[arg(long, default_value_t = 0.25)]
        density: f64,
    },
    /// Energy per site of a configuration on the L x L torus
    Oracle {
        #[arg(long = "L")]
        side: usize,
        #[arg(long = "J")]
        j: f64,
        /// uniform, stripe:H, checkerboard:H1,H2, random:DENSITY or file:PATH
        #[arg(long, default_value = "uniform")]
        source: ConfigSource,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Inconclusive,
    Violation,
}

/// Flat records emitted by a command, plus a line for stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub records: Vec<Map<String, Value>>,
    /// a single record prints as a JSON object rather than an array
    pub single: bool,
    pub status: Status,
    pub summary: Option<String>,
    pub default_format: Format,
}

impl Report {
    fn one(record: Map<String, Value>) -> Self {
        Report {
            records: vec![record],
            single: true,
            status: Status::Ok,
            summary: None,
            default_format: Format::Json,
        }
    }

    fn many(records: Vec<Map<String, Value>>) -> Self {
        Report {
            records,
            single: false,
            status: Status::Ok,
            summary: None,
            default_format: Format::Json,
        }
    }

    fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    fn with_summary(mut self, s: String) -> Self {
        self.summary = Some(s);
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => {
                let v = if self.single {
                    Value::Object(self.records[0].clone())
                } else {
                    Value::Array(self.records.iter().cloned().map(Value::Object).collect())
                };
                let mut s = serde_json::to_string_pretty(&v).expect("values are finite or strings");
                s.push('\n');
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                if let Some(first) = self.records.first() {
                    w.write_record(first.keys()).map_err(csv_error)?;
                }
                for r in &self.records {
                    w.write_record(r.values().map(csv_field)).map_err(csv_error)?;
                }
                let bytes = w.into_inner().map_err(|e| Error::Domain(e.to_string()))?;
                Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
            }
        }
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Domain(format!("csv output: {e}"))
}

fn csv_field(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Builds a record, keeping insertion order.
macro_rules! record {
    ($($k:expr => $v:expr),* $(,)?) => {{
        let mut m = Map::new();
        $(m.insert($k.to_string(), json!($v));)*
        m
    }};
}

fn side_value(s: Side) -> Value {
    match s {
        Side::Finite(h) => json!(h),
        Side::Infinite => json!("inf"),
    }
}

/// Non-finite numbers become strings so both formats can carry them.
fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else if x.is_nan() {
        Value::Null
    } else if x > 0.0 {
        json!("inf")
    } else {
        json!("-inf")
    }
}

fn opt(x: Option<f64>) -> Value {
    x.map_or(Value::Null, num)
}

fn check_j(j: f64) -> Result<()> {
    if !(j > 0.0 && j.is_finite()) {
        return Err(Error::Domain(format!("--J must be positive, got {j}")));
    }
    Ok(())
}

fn require<T>(x: Option<T>, flag: &str, target: &str) -> Result<T> {
    x.ok_or_else(|| Error::Domain(format!("verify {target} needs {flag}")))
}

/// One row of the constants table.
#[derive(Debug, Clone, PartialEq)]
pub struct ConstantRow {
    pub name: &'static str,
    /// the published decimals, when there are any
    pub printed: Option<f64>,
    pub computed: f64,
    pub error_bound: Option<f64>,
}

/// Every headline constant, computed, next to its printed value.
pub fn constants_table() -> Result<Vec<ConstantRow>> {
    let rc = region_constants()?;
    let (f_slope, g_slope) = chord_slopes()?;
    let tail = bessel_double_tail();
    let alpha_err = 8.0 * PI * tail.error_bound;
    let ell = ell_sum_identity();
    let int1 = int_p_full()?;
    let int3 = int_long_q()?;
    let row = |name, printed, computed, error_bound| ConstantRow {
        name,
        printed,
        computed,
        error_bound,
    };
    Ok(vec![
        row("alpha_s", Some(2.276), alpha_s(), Some(alpha_err)),
        row("c_star", Some(0.871), c_star(), Some(alpha_err)),
        row("c_I", Some(0.123), rc.c_i, None),
        row("c_II(1)", Some(79.819), rc.c_ii(1.0), None),
        row("c_III_prefactor", Some(1.507), rc.c_iii_prefactor, None),
        row("c_min", Some(0.356), rc.c_min, None),
        row("c_max", Some(79.819), rc.c_max, None),
        row("delta_star", None, rc.delta_star, Some(1e-12)),
        row("lambda_min", Some(0.007), rc.lambda_min, Some(1e-12)),
        row("ell_sum", Some(-2.0 + 2.0 * (PI / 2.0).ln()), ell.value, Some(ell.error_bound)),
        row("int_I", Some(0.97229), int1.value, Some(int1.error_bound)),
        row("int_3", Some(0.36466), int3.value, Some(int3.error_bound)),
        row("f_chord_slope", Some(0.3998), f_slope, None),
        row("g_chord_slope", Some(1.497), g_slope, None),
    ])
}

pub fn cmd_constants() -> Result<Report> {
    let rows = constants_table()?
        .into_iter()
        .map(|r| {
            record! {
                "name" => r.name,
                "printed" => opt(r.printed),
                "computed" => num(r.computed),
                "err_bound" => opt(r.error_bound),
                "difference" => opt(r.printed.map(|p| r.computed - p)),
            }
        })
        .collect();
    Ok(Report::many(rows))
}

pub fn cmd_stripe(j: f64, h: StripeWidth, budget: &ErrorBudget) -> Result<Report> {
    check_j(j)?;
    let scale = c_star() * (j / 2.0).exp();
    let r = match h {
        StripeWidth::Width(h) => {
            let e = stripe_energy(h, j, budget)?;
            let asym = stripe_energy_asymptotic(h as f64, j);
            record! {
                "j" => j, "h" => h, "energy" => num(e.value), "err_bound" => num(e.error_bound),
                "asymptotic_energy" => num(asym), "asymptotic_ratio" => num(e.value / asym),
                "h_over_c_star_scale" => num(h as f64 / scale),
            }
        }
        StripeWidth::Optimal => {
            let o = optimal_stripe_width(j, budget)?;
            let asym = stripe_energy_asymptotic(o.h_star as f64, j);
            record! {
                "j" => j, "h_star" => o.h_star, "tie" => o.tie, "energy" => num(o.energy.value),
                "err_bound" => num(o.energy.error_bound), "asymptotic_energy" => num(asym),
                "asymptotic_ratio" => num(o.energy.value / asym),
                "c_star_scale" => num(scale), "h_star_ratio" => num(o.h_star as f64 / scale),
                "window_lo" => o.window.0, "window_hi" => o.window.1,
            }
        }
    };
    Ok(Report::one(r))
}

pub fn cmd_checkerboard(j: f64, h1: Side, h2: Side, budget: &ErrorBudget) -> Result<Report> {
    check_j(j)?;
    let e = checkerboard_energy(CheckerboardSpec::new(h1, h2)?, j, budget)?;
    let cell = classify_with(&region_constants()?, h1, h2, j);
    Ok(Report::one(record! {
        "j" => j, "h1" => side_value(h1), "h2" => side_value(h2), "class" => cell.class.as_str(),
        "in_residual_envelope" => cell.in_residual_envelope,
        "energy" => num(e.value), "err_bound" => num(e.error_bound),
    }))
}

pub fn cmd_scan(j: f64, h_max: u64, stride: u64, budget: &ErrorBudget) -> Result<Report> {
    check_j(j)?;
    let r = scan(j, h_max, stride, budget)?;
    let rows = r
        .cells
        .iter()
        .map(|c| {
            let e = c.energy.as_ref().expect("scan computes energies");
            record! {
                "h1" => side_value(c.h1), "h2" => side_value(c.h2), "class" => c.class.as_str(),
                "energy" => num(e.value), "err_bound" => num(e.error_bound),
            }
        })
        .collect();
    let m = r.global_minimum();
    let summary = format!(
        "{} cells; minimum at ({}, {}) with energy {}",
        r.cells.len(),
        m.h1,
        m.h2,
        m.energy.as_ref().expect("scan computes energies").value
    );
    let mut report = Report::many(rows).with_summary(summary);
    report.default_format = Format::Csv;
    Ok(report)
}

pub fn cmd_verdict(j: f64, h_max: Option<u64>, stride: Option<u64>, budget: &ErrorBudget) -> Result<Report> {
    check_j(j)?;
    let v = match (h_max, stride) {
        (None, None) => restricted_verdict(j, budget)?,
        (h_max, stride) => {
            let h_max = match h_max {
                Some(h) => h,
                None => crate::energies::stripe_search_window(j).1,
            };
            restricted_verdict_on(j, h_max, stride.unwrap_or(1), budget)?
        }
    };
    let e = v.runner_up.energy.as_ref().expect("scan computes energies");
    let status = match v.status {
        VerdictStatus::StripesWin => "stripes_win",
        VerdictStatus::FiniteCellWins => "finite_cell_wins",
        VerdictStatus::Inconclusive => "inconclusive",
    };
    let r = record! {
        "j" => j, "h_max" => v.h_max, "stride" => v.stride,
        "h_star" => v.optimal.h_star, "tie" => v.optimal.tie,
        "stripe_energy" => num(v.optimal.energy.value), "stripe_err_bound" => num(v.optimal.energy.error_bound),
        "runner_up_h1" => side_value(v.runner_up.h1), "runner_up_h2" => side_value(v.runner_up.h2),
        "runner_up_class" => v.runner_up.class.as_str(),
        "runner_up_energy" => num(e.value), "runner_up_err_bound" => num(e.error_bound),
        "gap" => num(v.gap), "gap_err_bound" => num(v.gap_error), "status" => status,
        "thin" => v.class_counts[0], "thick" => v.class_counts[1], "long" => v.class_counts[2],
        "residual" => v.class_counts[3], "stripe_candidate" => v.class_counts[4],
    };
    let st = if v.status == VerdictStatus::Inconclusive {
        Status::Inconclusive
    } else {
        Status::Ok
    };
    Ok(Report::one(r).with_status(st))
}

fn margin_record(r: &MarginReport, in_region: bool) -> Map<String, Value> {
    let c = r.energy_check.as_ref().expect("energy check requested");
    record! {
        "region" => r.region.to_string(), "h1" => r.h1, "h2" => r.h2, "j" => r.j,
        "in_region" => in_region, "margin" => num(r.margin),
        "lhs" => num(c.lhs.value), "rhs" => num(c.rhs.value),
        "difference" => num(c.difference), "err_bound" => num(c.error_bound), "holds" => c.holds(),
    }
}

/// Default grid of `(h1, h2, L)` for the finite-torus remainders.
pub const APPENDIX_GRID: [(u64, u64, u64); 12] = [
    (2, 2, 4),
    (2, 2, 8),
    (4, 2, 8),
    (4, 2, 16),
    (4, 4, 8),
    (6, 2, 12),
    (6, 2, 24),
    (6, 6, 12),
    (8, 2, 16),
    (8, 4, 16),
    (10, 2, 20),
    (12, 4, 24),
];

/// Default `(h, lambda)` pairs of the residual-region check.
pub const RESIDUAL_SAMPLES: [(f64, f64); 5] = [(8.0, 0.5), (6.0, 1.0 / 3.0), (12.0, 0.25), (20.0, 0.5), (20.0, 0.2)];

/// Grid size of the bracket scan.
pub const BRACKET_POINTS: usize = 2000;

#[allow(clippy::too_many_arguments)]
pub fn cmd_verify(
    target: VerifyTarget,
    j: Option<f64>,
    h1: Option<u64>,
    h2: Option<u64>,
    h: Option<f64>,
    lambda: Option<f64>,
    side: Option<usize>,
    samples: Option<usize>,
    density: f64,
    seed: u64,
    budget: &ErrorBudget,
) -> Result<Report> {
    if let Some(j) = j {
        check_j(j)?;
    }
    match target {
        VerifyTarget::Thin | VerifyTarget::Thick | VerifyTarget::Long => {
            let name = match target {
                VerifyTarget::Thin => "1",
                VerifyTarget::Thick => "2",
                _ => "3",
            };
            let j = require(j, "--J", name)?;
            let class = match target {
                VerifyTarget::Thin => Class::ThinExcluded,
                VerifyTarget::Thick => Class::ThickExcluded,
                _ => Class::LongExcluded,
            };
            let cells = match (h1, h2) {
                (Some(a), Some(b)) => vec![(a.max(b), a.min(b))],
                (None, None) => class_samples(j, class, samples.unwrap_or(5), 2048)?,
                _ => return Err(Error::Domain(format!("verify {name} needs both --h1 and --h2, or neither"))),
            };
            if cells.is_empty() {
                return Err(Error::Domain(format!("no cell of class {class} up to 2048 at J = {j}")));
            }
            let rc = region_constants()?;
            let mut rows = Vec::new();
            let mut violated = false;
            for (a, b) in cells {
                let r = match target {
                    VerifyTarget::Thin => lemma_I_energy_check(a, b, j, budget)?,
                    VerifyTarget::Thick => lemma_II_energy_check(a, b, j, budget)?,
                    _ => lemma_III_energy_check(a, b, j, budget)?,
                };
                let in_region = classify_with(&rc, Side::Finite(a), Side::Finite(b), j).class == class;
                violated |= in_region && r.verified() == Some(false);
                rows.push(margin_record(&r, in_region));
            }
            let n = rows.len();
            let held = rows.iter().filter(|r| r["holds"] == json!(true)).count();
            Ok(Report::many(rows)
                .with_summary(format!("{held} of {n} comparisons hold"))
                .with_status(if violated { Status::Violation } else { Status::Ok }))
        }
        VerifyTarget::Residual => {
            let j = require(j, "--J", "4")?;
            let pairs = match (h, lambda) {
                (Some(h), Some(l)) => vec![(h, l)],
                (None, None) => RESIDUAL_SAMPLES.to_vec(),
                _ => return Err(Error::Domain("verify 4 needs both --h and --lambda, or neither".into())),
            };
            let mut rows = Vec::new();
            let mut violated = false;
            for (h, l) in pairs {
                let r = lemma_IV_energy_check(h, l, j, budget)?;
                let c = r.energy_check.as_ref().expect("energy check requested");
                let p = r.residual.as_ref().expect("residual pieces");
                violated |= !c.holds() || !p.cross_term.holds();
                rows.push(record! {
                    "kind" => "energy", "h" => h, "lambda" => l, "h1" => r.h1, "h2" => r.h2, "j" => j,
                    "margin" => num(r.margin), "difference" => num(c.difference), "err_bound" => num(c.error_bound),
                    "holds" => c.holds(),
                    "split_residual" => num(p.stripe_split_residual),
                    "cross_difference" => num(p.cross_term.difference), "cross_holds" => p.cross_term.holds(),
                    "bracket_min" => Value::Null, "bracket_argmin" => Value::Null,
                });
            }
            let (bmin, barg) = bracket_scan(BRACKET_POINTS)?;
            let bracket_ok = bmin >= -1e-12;
            violated |= !bracket_ok;
            rows.push(record! {
                "kind" => "bracket", "h" => Value::Null, "lambda" => Value::Null, "h1" => Value::Null,
                "h2" => Value::Null, "j" => Value::Null, "margin" => Value::Null, "difference" => Value::Null,
                "err_bound" => Value::Null, "holds" => bracket_ok, "split_residual" => Value::Null,
                "cross_difference" => Value::Null, "cross_holds" => Value::Null,
                "bracket_min" => num(bmin), "bracket_argmin" => num(barg),
            });
            Ok(Report::many(rows).with_status(if violated { Status::Violation } else { Status::Ok }))
        }
        VerifyTarget::Rp => {
            let side = side.unwrap_or(24);
            let j = j.unwrap_or(4.0);
            let n = samples.unwrap_or(100);
            let mut rows = Vec::with_capacity(n);
            let mut violations = 0;
            for k in 0..n as u64 {
                let s = seed.wrapping_add(k);
                let cfg = sample_config(side, density, s)?;
                let r = chessboard_estimate_check(&cfg, j, budget)?;
                if !r.holds() {
                    violations += 1;
                }
                rows.push(record! {
                    "seed" => s, "side" => side, "j" => j, "tiles" => r.tiles,
                    "lhs" => num(r.lhs.value), "rhs" => num(r.rhs.value),
                    "margin" => num(r.margin), "err_bound" => num(r.error_bound), "holds" => r.holds(),
                    "rhs_literal_ring" => opt(r.rhs_alternative.as_ref().map(|e| e.value)),
                });
            }
            Ok(Report::many(rows)
                .with_summary(format!("{n} configurations, {violations} violations"))
                .with_status(if violations > 0 { Status::Violation } else { Status::Ok }))
        }
        VerifyTarget::Appendix => {
            let grid = match (h1, h2, side) {
                (Some(a), Some(b), Some(l)) => vec![(a, b, l as u64)],
                (None, None, None) => APPENDIX_GRID.to_vec(),
                _ => return Err(Error::Domain("verify appendix needs all of --h1, --h2, --L, or none".into())),
            };
            let mut rows = Vec::new();
            let mut violated = false;
            for (a, b, l) in grid {
                for (name, r) in [("R_II", appendix_R_II(a, b, l, budget)), ("R_III", appendix_R_III(a, b, l, budget))] {
                    let r = r?;
                    let positive = r.certainly_positive();
                    violated |= !positive;
                    rows.push(record! {
                        "remainder" => name, "h1" => a, "h2" => b, "side" => l,
                        "value" => num(r.value), "err_bound" => num(r.error_bound), "positive" => positive,
                    });
                }
            }
            Ok(Report::many(rows).with_status(if violated { Status::Violation } else { Status::Ok }))
        }
    }
}

/// Minimum of the bracket on the grid `k / (2n)`, `k = 1..=n`, and where it sits.
pub fn bracket_scan(n: usize) -> Result<(f64, f64)> {
    let mut best = (f64::INFINITY, f64::NAN);
    for k in 1..=n {
        let l = 0.5 * k as f64 / n as f64;
        let b = lemma_IV_bracket(l)?;
        if b < best.0 {
            best = (b, l);
        }
    }
    Ok(best)
}

fn read_config_file(path: &Path, side: usize) -> Result<SpinConfiguration> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Domain(format!("{}: {e}", path.display())))?;
    let spins: Vec<i8> = text
        .chars()
        .filter(|c| !c.is_whitespace())
        .map(|c| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            _ => Err(Error::Domain(format!("{}: unexpected character {c:?}", path.display()))),
        })
        .collect::<Result<_>>()?;
    if spins.len() != side * side {
        return Err(Error::Domain(format!(
            "{}: expected {} spins for L = {side}, found {}",
            path.display(),
            side * side,
            spins.len()
        )));
    }
    SpinConfiguration::new(side, spins)
}

pub fn cmd_oracle(side: usize, j: f64, source: &ConfigSource, seed: u64, budget: &ErrorBudget) -> Result<Report> {
    check_j(j)?;
    let (config, reference): (SpinConfiguration, Option<EnergyResult>) = match source {
        ConfigSource::Uniform => (
            SpinConfiguration::uniform(side, 1)?,
            Some(checkerboard_energy(CheckerboardSpec::new(Side::Infinite, Side::Infinite)?, j, budget)?),
        ),
        ConfigSource::Stripe(h) => (
            SpinConfiguration::stripe(side, StripeSpec::new(*h, Orientation::Horizontal)?)?,
            Some(stripe_energy(*h, j, budget)?),
        ),
        ConfigSource::Checkerboard(a, b) => (
            SpinConfiguration::checkerboard(side, *a, *b)?,
            Some(checkerboard_energy(CheckerboardSpec::new(*a, *b)?, j, budget)?),
        ),
        ConfigSource::Random(d) => (sample_config(side, *d, seed)?.to_spin_configuration()?, None),
        ConfigSource::File(p) => (read_config_file(p, side)?, None),
    };
    let e = energy_per_site(&config, j, budget)?;
    let straight = StraightLineConfig::from_spin_configuration(&config).ok();
    let agrees = reference.as_ref().map(|r| r.agrees_with(&e));
    let r = record! {
        "side" => side, "j" => j, "source" => source.to_string(),
        "energy_per_site" => num(e.value), "err_bound" => num(e.error_bound),
        "reference" => opt(reference.as_ref().map(|r| r.value)),
        "reference_err_bound" => opt(reference.as_ref().map(|r| r.error_bound)),
        "agrees" => agrees,
        "horizontal_cuts" => straight.as_ref().map(|s| s.horizontal_cuts().len()),
        "vertical_cuts" => straight.as_ref().map(|s| s.vertical_cuts().len()),
    };
    let status = if agrees == Some(false) { Status::Violation } else { Status::Ok };
    Ok(Report::one(r).with_status(status))
}

fn budget_of(cfg: &RunConfig) -> Result<ErrorBudget> {
    let d = ErrorBudget::default();
    ErrorBudget::new(
        cfg.abs_tol.unwrap_or(d.abs_tol),
        cfg.truncation_radius.unwrap_or(d.truncation_radius),
        d.bessel_terms,
    )
}

/// Runs a parsed configuration and returns its report.
pub fn execute(cfg: &RunConfig) -> Result<Report> {
    let budget = budget_of(cfg)?;
    match &cfg.command {
        Command::Constants => cmd_constants(),
        Command::Stripe { j, h } => cmd_stripe(*j, *h, &budget),
        Command::Checkerboard { j, h1, h2 } => cmd_checkerboard(*j, *h1, *h2, &budget),
        Command::Scan { j, h_max, stride } => cmd_scan(*j, *h_max, *stride, &budget),
        Command::Verdict { j, h_max, stride } => cmd_verdict(*j, *h_max, *stride, &budget),
        Command::Verify {
            target,
            j,
            h1,
            h2,
            h,
            lambda,
            side,
            samples,
            density,
        } => cmd_verify(*target, *j, *h1, *h2, *h, *lambda, *side, *samples, *density, cfg.seed, &budget),
        Command::Oracle { side, j, source } => cmd_oracle(*side, *j, source, cfg.seed, &budget),
    }
}

fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, text)?;
    std::fs::rename(&tmp, path)
}

/// Entry point of the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let report = match execute(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("stripes: {e}");
            return exit_code(&e);
        }
    };
    let text = match report.render(cfg.format.unwrap_or(report.default_format)) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("stripes: {e}");
            return exit_code(&e);
        }
    };
    let written = match &cfg.output {
        Some(p) => write_atomically(p, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("stripes: cannot write output: {e}");
        return EXIT_USAGE;
    }
    if let Some(s) = &report.summary {
        eprintln!("{s}");
    }
    match report.status {
        Status::Ok => EXIT_OK,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
        Status::Violation => EXIT_VIOLATION,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sources() {
        assert_eq!("stripe:3".parse::<ConfigSource>().unwrap(), ConfigSource::Stripe(3));
        assert_eq!("checkerboard:2,4".parse::<ConfigSource>().unwrap(), ConfigSource::Checkerboard(2, 4));
        assert!("checkerboard:2".parse::<ConfigSource>().is_err());
        assert!("stripe:0".parse::<ConfigSource>().is_err());
        assert_eq!("optimal".parse::<StripeWidth>().unwrap(), StripeWidth::Optimal);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["stripes", "stripe"]), EXIT_USAGE);
        assert_eq!(run(["stripes", "checkerboard", "--J", "2", "--h1", "0", "--h2", "3"]), EXIT_USAGE);
        assert_eq!(run(["stripes", "verify", "7"]), EXIT_USAGE);
        assert_eq!(run(["stripes", "oracle", "--L", "6", "--J", "1", "--source", "stripe:4"]), EXIT_USAGE);
    }

    #[test]
    fn csv_mirrors_json_fields() {
        let r = cmd_checkerboard(3.0, Side::Infinite, Side::Finite(2), &ErrorBudget::default()).unwrap();
        let csv = r.render(Format::Csv).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "j,h1,h2,class,in_residual_envelope,energy,err_bound");
        assert!(lines.next().unwrap().starts_with("3.0,inf,2,"));
        let json: Value = serde_json::from_str(&r.render(Format::Json).unwrap()).unwrap();
        assert_eq!(json["h1"], "inf");
    }
}
