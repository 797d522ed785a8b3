//! Straight-line configurations on the torus, their tiles, and the chessboard
//! lower bound `H_L(sigma) >= sum_T |T| E(h1(T), h2(T))`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::energies::{checkerboard_energy, energy_per_site, CheckerboardSpec, Side, SpinConfiguration};
use crate::error::{domain, Error, Result};
use crate::kernel::budget::{CompensatedSum, EnergyResult, ErrorBudget};

/// A configuration whose domain walls are full horizontal and vertical lines.
///
/// A cut at `r` is the wall between rows (or columns) `r - 1` and `r`, taken
/// modulo `L`. Horizontal cuts separate rows, vertical cuts separate columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StraightLineConfig {
    side: usize,
    horizontal_cuts: Vec<usize>,
    vertical_cuts: Vec<usize>,
    base_sign: i8,
}

fn normalize_cuts(side: usize, mut cuts: Vec<usize>, axis: &str) -> Result<Vec<usize>> {
    cuts.sort_unstable();
    if cuts.windows(2).any(|w| w[0] == w[1]) {
        return domain(format!("{axis} cuts must be distinct"));
    }
    if cuts.last().is_some_and(|&c| c >= side) {
        return domain(format!("{axis} cuts must lie in [0, {side})"));
    }
    if cuts.len() % 2 == 1 {
        return Err(Error::Parity(format!(
            "{} {axis} cuts: a torus needs an even number of walls per axis",
            cuts.len()
        )));
    }
    Ok(cuts)
}

impl StraightLineConfig {
    pub fn new(side: usize, horizontal_cuts: Vec<usize>, vertical_cuts: Vec<usize>, base_sign: i8) -> Result<Self> {
        if side < 2 {
            return domain("torus side must be >= 2");
        }
        if base_sign != 1 && base_sign != -1 {
            return domain("base sign must be +1 or -1");
        }
        Ok(StraightLineConfig {
            side,
            horizontal_cuts: normalize_cuts(side, horizontal_cuts, "horizontal")?,
            vertical_cuts: normalize_cuts(side, vertical_cuts, "vertical")?,
            base_sign,
        })
    }

    /// Cuts every `h1` columns and every `h2` rows; `L` must be a multiple of both `2h`.
    pub fn checkerboard(side: usize, h1: usize, h2: usize) -> Result<Self> {
        if h1 == 0 || h2 == 0 || !side.is_multiple_of(2 * h1) || !side.is_multiple_of(2 * h2) {
            return Err(Error::Divisibility(format!("L = {side} is not a multiple of 2h1 and 2h2")));
        }
        StraightLineConfig::new(side, (0..side).step_by(h2).collect(), (0..side).step_by(h1).collect(), 1)
    }

    /// Horizontal stripes of width `h`.
    pub fn stripes(side: usize, h: usize) -> Result<Self> {
        if h == 0 || !side.is_multiple_of(2 * h) {
            return Err(Error::Divisibility(format!("L = {side} is not a multiple of 2h = {}", 2 * h)));
        }
        StraightLineConfig::new(side, (0..side).step_by(h).collect(), Vec::new(), 1)
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn horizontal_cuts(&self) -> &[usize] {
        &self.horizontal_cuts
    }

    pub fn vertical_cuts(&self) -> &[usize] {
        &self.vertical_cuts
    }

    pub fn base_sign(&self) -> i8 {
        self.base_sign
    }

    /// The `+-1` field: one sign change per cut crossed from the origin.
    pub fn to_spin_configuration(&self) -> Result<SpinConfiguration> {
        let flips = |cuts: &[usize]| -> Vec<i8> {
            let mut out = vec![1i8; self.side];
            let mut s = 1i8;
            for (x, o) in out.iter_mut().enumerate() {
                if x > 0 && cuts.binary_search(&x).is_ok() {
                    s = -s;
                }
                *o = s;
            }
            out
        };
        let col = flips(&self.vertical_cuts);
        let row = flips(&self.horizontal_cuts);
        SpinConfiguration::from_fn(self.side, |x1, x2| self.base_sign * col[x1] * row[x2])
    }

    /// Recovers the cut sets from a field; fails unless every wall is a full line.
    pub fn from_spin_configuration(config: &SpinConfiguration) -> Result<Self> {
        let l = config.side();
        let li = l as i64;
        let mut horizontal = Vec::new();
        let mut vertical = Vec::new();
        for r in 0..li {
            let across_rows = (0..li).filter(|&x| config.get(x, r - 1) != config.get(x, r)).count();
            let across_cols = (0..li).filter(|&y| config.get(r - 1, y) != config.get(r, y)).count();
            for (count, cuts) in [(across_rows, &mut horizontal), (across_cols, &mut vertical)] {
                if count == l {
                    cuts.push(r as usize);
                } else if count != 0 {
                    return domain(format!("wall at {r} is not a full straight line"));
                }
            }
        }
        StraightLineConfig::new(l, horizontal, vertical, config.get(0, 0))
    }
}

/// One rectangle of the tile decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tile {
    pub origin: (usize, usize),
    pub width: usize,
    pub height: usize,
    pub sign: i8,
    /// the tile wraps around the torus horizontally (no vertical cuts)
    pub horizontal_ring: bool,
    /// the tile wraps around the torus vertically (no horizontal cuts)
    pub vertical_ring: bool,
}

impl Tile {
    pub fn area(&self) -> usize {
        self.width * self.height
    }
}

/// Maximal constant-sign rectangles between consecutive cuts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileDecomposition {
    pub side: usize,
    pub tiles: Vec<Tile>,
}

impl TileDecomposition {
    pub fn total_area(&self) -> usize {
        self.tiles.iter().map(Tile::area).sum()
    }
}

/// Intervals `(start, length)` between consecutive cuts, wrapping around.
fn intervals(side: usize, cuts: &[usize]) -> Vec<(usize, usize)> {
    if cuts.is_empty() {
        return vec![(0, side)];
    }
    (0..cuts.len())
        .map(|i| {
            let start = cuts[i];
            let end = if i + 1 < cuts.len() { cuts[i + 1] } else { cuts[0] + side };
            (start, end - start)
        })
        .collect()
}

pub fn decompose_tiles(cfg: &StraightLineConfig) -> Result<TileDecomposition> {
    let config = cfg.to_spin_configuration()?;
    let cols = intervals(cfg.side, &cfg.vertical_cuts);
    let rows = intervals(cfg.side, &cfg.horizontal_cuts);
    let mut tiles = Vec::with_capacity(cols.len() * rows.len());
    for &(y, height) in &rows {
        for &(x, width) in &cols {
            tiles.push(Tile {
                origin: (x, y),
                width,
                height,
                sign: config.get(x as i64, y as i64),
                horizontal_ring: cfg.vertical_cuts.is_empty(),
                vertical_ring: cfg.horizontal_cuts.is_empty(),
            });
        }
    }
    Ok(TileDecomposition { side: cfg.side, tiles })
}

/// Both sides of the chessboard estimate, per site.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChessboardReport {
    pub side: usize,
    pub j: f64,
    pub tiles: usize,
    /// `H_L(sigma) / L^2`
    pub lhs: EnergyResult,
    /// `sum_T |T| E(h1, h2) / L^2`, a side without cuts counted as infinite
    pub rhs: EnergyResult,
    /// the same with a side without cuts taken literally as `L`
    pub rhs_alternative: Option<EnergyResult>,
    /// `lhs - rhs`
    pub margin: f64,
    pub error_bound: f64,
}

impl ChessboardReport {
    /// No violation beyond the certificates.
    pub fn holds(&self) -> bool {
        self.margin >= -self.error_bound
    }

    /// Both sides agree within the certificates.
    pub fn tight(&self) -> bool {
        self.margin.abs() <= self.error_bound
    }
}

fn tile_sum(
    decomposition: &TileDecomposition,
    j: f64,
    budget: &ErrorBudget,
    side_of: impl Fn(usize, bool) -> Side,
) -> Result<EnergyResult> {
    let mut cache: HashMap<(Side, Side), EnergyResult> = HashMap::new();
    let area = (decomposition.side * decomposition.side) as f64;
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    for t in &decomposition.tiles {
        let key = (side_of(t.width, t.horizontal_ring), side_of(t.height, t.vertical_ring));
        let e = match cache.get(&key) {
            Some(e) => e.clone(),
            None => {
                let e = checkerboard_energy(CheckerboardSpec::new(key.0, key.1)?, j, budget)?;
                cache.insert(key, e.clone());
                e
            }
        };
        let w = t.area() as f64 / area;
        acc.add(w * e.value);
        err += w * e.error_bound;
    }
    Ok(EnergyResult::new(
        acc.value(),
        err + acc.rounding_bound(),
        Some(j),
        "chessboard tile sum",
        *budget,
    ))
}

/// Evaluates `H_L(sigma)` and the tile bound for a straight-line configuration.
pub fn chessboard_estimate_check(cfg: &StraightLineConfig, j: f64, budget: &ErrorBudget) -> Result<ChessboardReport> {
    if !(j > 0.0 && j.is_finite()) {
        return domain(format!("J must be positive, got {j}"));
    }
    let decomposition = decompose_tiles(cfg)?;
    let lhs = energy_per_site(&cfg.to_spin_configuration()?, j, budget)?;
    let infinite = tile_sum(&decomposition, j, budget, |h, ring| {
        if ring {
            Side::Infinite
        } else {
            Side::Finite(h as u64)
        }
    })?;
    let has_ring = cfg.horizontal_cuts.is_empty() || cfg.vertical_cuts.is_empty();
    let rhs_alternative = if has_ring {
        Some(tile_sum(&decomposition, j, budget, |h, _| Side::Finite(h as u64))?)
    } else {
        None
    };
    let rhs = infinite;
    let margin = lhs.value - rhs.value;
    Ok(ChessboardReport {
        side: cfg.side,
        j,
        tiles: decomposition.tiles.len(),
        error_bound: lhs.error_bound + rhs.error_bound + 2.0 * f64::EPSILON * margin.abs(),
        lhs,
        rhs,
        rhs_alternative,
        margin,
    })
}

/// Random straight-line configuration: each wall position is cut with
/// probability `cut_density`, then one position is toggled if needed to make
/// the count even.
pub fn sample_config(side: usize, cut_density: f64, seed: u64) -> Result<StraightLineConfig> {
    if side < 2 {
        return domain("torus side must be >= 2");
    }
    if !(0.0..=1.0).contains(&cut_density) {
        return domain(format!("cut density must lie in [0, 1], got {cut_density}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let mut on: Vec<bool> = (0..side).map(|_| rng.random_bool(cut_density)).collect();
        if on.iter().filter(|&&b| b).count() % 2 == 1 {
            let k = rng.random_range(0..side);
            on[k] = !on[k];
        }
        on.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect::<Vec<_>>()
    };
    let horizontal = draw(&mut rng);
    let vertical = draw(&mut rng);
    let base = if rng.random_bool(0.5) { 1 } else { -1 };
    StraightLineConfig::new(side, horizontal, vertical, base)
}
