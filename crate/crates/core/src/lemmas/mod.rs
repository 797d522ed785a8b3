//! Exclusion regions of the `(h1, h2)` plane: constants, margins, the lattice
//! sums and integrals behind them, and the finite-torus remainders.
#![allow(non_snake_case)]

pub mod appendix;
pub mod constants;
pub mod integrals;
pub mod margins;
pub mod sums;

pub use appendix::{appendix_R_II, appendix_R_III};
pub use constants::{region_constants, RegionConstants};
pub use integrals::{
    chord_slopes, f_lambda, f_lambda_quadrature, g_lambda, int_corner, int_long_p, int_long_q, int_long_xi,
    int_p_beyond, int_p_full, lemma_IV_bracket, quadrature_integrals, xi_lambda_quadrature, QuadratureIntegrals,
};
pub use margins::{
    lemma_III_energy_check, lemma_III_margin, lemma_II_energy_check, lemma_II_margin, lemma_IV_energy_check,
    lemma_I_energy_check, lemma_I_margin, Comparison, MarginReport, Region, ResidualPieces,
};
pub use sums::{halfplane_tile_sum, lemma_III_sums, residual_sums, s1_sum, s4_sum, xi_corner_sum, LongTileSums};
