//! Certified energies of striped and checkerboard states in the two-dimensional
//! Ising model with nearest-neighbour ferromagnetic coupling `J` and
//! antiferromagnetic dipolar `1/r^3` interactions.
//!
//! Every numerical quantity comes back with a rigorous error bound
//! ([`kernel::EnergyResult`], [`kernel::lattice::Certified`]). The modules build on one another:
//!
//! * [`kernel`]: Bessel `K1`, adaptive quadrature, and accelerated lattice sums
//! * [`energies`]: stripe and checkerboard energies per site, and direct torus energies
//! * [`lemmas`]: the exclusion-region constants, margins and finite-torus remainders
//! * [`rp`]: the chessboard estimate on straight-line configurations
//! * [`search`]: classification of the `(h1, h2)` plane and grid scans
//! * [`cli`]: the `stripes` command-line tool
//!
//! ```
//! use dipolar_stripes::energies::optimal_stripe_width;
//! use dipolar_stripes::kernel::ErrorBudget;
//!
//! let best = optimal_stripe_width(6.0, &ErrorBudget::default()).unwrap();
//! assert_eq!(best.h_star, 17);
//! ```

pub mod cli;
pub mod energies;
pub mod error;
pub mod kernel;
pub mod lemmas;
pub mod rp;
pub mod search;

pub use error::{Error, Result};
