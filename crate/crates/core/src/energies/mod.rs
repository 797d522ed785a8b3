//! Energies per site of stripe and checkerboard states, and the torus oracle.

pub mod checkerboard;
pub mod config;
pub mod stripe;
pub mod torus;

pub use checkerboard::{checkerboard_cross_sum, checkerboard_energy, CheckerboardSpec, Side};
pub use config::{Orientation, SpinConfiguration, StripeSpec};
pub use stripe::{
    alpha_s, c_star, ell_sum_identity, optimal_stripe_width, stripe_energy, stripe_energy_asymptotic,
    stripe_search_window, OptimalWidth,
};
pub use torus::{energy_per_site, hamiltonian_direct, KernelTable};
