//! Special functions, certified accumulation and accelerated lattice sums.

pub mod bessel;
pub mod budget;
pub mod lattice;
pub mod quadrature;
pub mod special;

pub use bessel::{bessel_k1, bessel_k1_scaled, k1_envelope};
pub use budget::{CompensatedSum, EnergyResult, ErrorBudget, Params, ABS_TOL_ENV};
pub use lattice::{
    axis_sum, axis_sum_direct, bessel_double_tail, bessel_tail_bound, lattice_zeta, periodic_kernel,
    shifted_axis_sum, weighted_lattice_sum, Certified, Ray, WeightProfile,
};
pub use special::{harmonic_number, trigamma, EULER_GAMMA, ZETA_3};
