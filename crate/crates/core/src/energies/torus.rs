//! Direct evaluation of the torus Hamiltonian, used as a brute-force oracle.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use rayon::prelude::*;

use crate::energies::config::SpinConfiguration;
use crate::error::{domain, Result};
use crate::kernel::budget::{CompensatedSum, EnergyResult, ErrorBudget};
use crate::kernel::lattice::{periodic_kernel_with_tol, Certified};

/// Periodic kernel `K_L(d)` for every displacement on one torus.
#[derive(Debug)]
pub struct KernelTable {
    side: usize,
    values: Vec<Certified>,
}

impl KernelTable {
    /// Builds the table; truncation is driven far enough that the `L^4`
    /// pair count of the Hamiltonian still fits inside `budget.abs_tol`.
    pub fn build(side: usize, budget: &ErrorBudget) -> Result<Self> {
        if side < 2 {
            return domain("kernel table needs L >= 2");
        }
        let lf = side as f64;
        let trunc_tol = (budget.abs_tol * 1e-3 / lf.powi(4)).max(1e-300);
        let values = (0..side * side)
            .into_par_iter()
            .map(|i| {
                if i == 0 {
                    Ok(Certified::exact(0.0))
                } else {
                    periodic_kernel_with_tol(((i % side) as i64, (i / side) as i64), side as u64, trunc_tol, budget)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(KernelTable { side, values })
    }

    /// Shared table for `(L, abs_tol)`, built once per process.
    pub fn cached(side: usize, budget: &ErrorBudget) -> Result<Arc<Self>> {
        type Cache = RwLock<HashMap<(usize, u64), Arc<KernelTable>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let key = (side, budget.abs_tol.to_bits());
        if let Some(t) = cache.read().expect("kernel cache poisoned").get(&key) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(KernelTable::build(side, budget)?);
        let mut w = cache.write().expect("kernel cache poisoned");
        Ok(Arc::clone(w.entry(key).or_insert(table)))
    }

    pub fn side(&self) -> usize {
        self.side
    }

    /// `K_L(d)` for `d` reduced modulo `L`; zero at the origin.
    pub fn get(&self, d1: i64, d2: i64) -> Certified {
        let l = self.side as i64;
        self.values[(d2.rem_euclid(l) * l + d1.rem_euclid(l)) as usize]
    }
}

/// `H_L(sigma)`: the total torus energy.
pub fn hamiltonian_direct(config: &SpinConfiguration, j: f64, budget: &ErrorBudget) -> Result<EnergyResult> {
    let value = hamiltonian_certified(config, j, budget)?;
    budget.check(value.error_bound, "hamiltonian_direct")?;
    Ok(value.into_result(Some(j), format!("torus L={}", config.side()), *budget))
}

pub(crate) fn hamiltonian_certified(config: &SpinConfiguration, j: f64, budget: &ErrorBudget) -> Result<Certified> {
    let l = config.side();
    if l < 2 {
        return domain("hamiltonian_direct needs L >= 2");
    }
    if !j.is_finite() {
        return domain("J must be finite");
    }
    if config.is_uniform() {
        return Ok(Certified::exact(0.0));
    }
    let table = KernelTable::cached(l, budget)?;
    let corr = config.autocorrelation();
    let area = (l * l) as i64;
    let c = |d1: usize, d2: usize| corr[(d2 % l) * l + d1 % l] - area;

    // each site has four neighbour directions
    let nn = c(1, 0) + c(l - 1, 0) + c(0, 1) + c(0, l - 1);
    let mut dip = CompensatedSum::new();
    let mut trunc = 0.0;
    for d2 in 0..l {
        for d1 in 0..l {
            let w = c(d1, d2);
            if w == 0 {
                continue;
            }
            let k = table.get(d1 as i64, d2 as i64);
            dip.add(w as f64 * k.value);
            trunc += (w as f64).abs() * k.error_bound;
        }
    }
    let value = -0.5 * j * nn as f64 + 0.5 * dip.value();
    let err = 0.5 * (trunc + dip.rounding_bound()) + 4.0 * f64::EPSILON * value.abs();
    Ok(Certified::new(value, err))
}

/// `H_L(sigma) / L^2`.
pub fn energy_per_site(config: &SpinConfiguration, j: f64, budget: &ErrorBudget) -> Result<EnergyResult> {
    let area = (config.side() * config.side()) as f64;
    let value = hamiltonian_certified(config, j, budget)?.scale(1.0 / area);
    budget.check(value.error_bound, "energy_per_site")?;
    Ok(value.into_result(Some(j), format!("per site, torus L={}", config.side()), *budget))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_is_zero() {
        let b = ErrorBudget::default();
        let u = SpinConfiguration::uniform(8, 1).unwrap();
        assert_eq!(hamiltonian_direct(&u, 3.0, &b).unwrap().value, 0.0);
    }

    #[test]
    fn spin_flip_symmetry() {
        let b = ErrorBudget::default();
        let c = SpinConfiguration::from_fn(5, |x, y| if (x * 3 + y * y) % 4 < 2 { 1 } else { -1 }).unwrap();
        let a = hamiltonian_direct(&c, 1.5, &b).unwrap();
        let f = hamiltonian_direct(&c.flipped(), 1.5, &b).unwrap();
        assert_eq!(a.value, f.value);
    }

    #[test]
    fn nearest_neighbour_part_counts_walls() {
        // Neel state on L = 2: every bond is broken, four directions per site
        let b = ErrorBudget::default();
        let neel = SpinConfiguration::checkerboard(2, 1, 1).unwrap();
        let e0 = hamiltonian_direct(&neel, 0.0, &b).unwrap().value;
        let e1 = hamiltonian_direct(&neel, 1.0, &b).unwrap().value;
        assert!((e1 - e0 - 16.0).abs() < 1e-12);
    }
}
