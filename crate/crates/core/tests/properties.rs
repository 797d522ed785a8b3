//! Property tests over randomized inputs.

use dipolar_stripes::energies::{checkerboard_energy, stripe_energy, CheckerboardSpec, Side};
use dipolar_stripes::kernel::lattice::periodic_kernel;
use dipolar_stripes::kernel::ErrorBudget;
use dipolar_stripes::lemmas::{f_lambda, g_lambda, lemma_IV_bracket, region_constants};
use dipolar_stripes::rp::{decompose_tiles, StraightLineConfig};
use dipolar_stripes::search::{classify, Class};
use proptest::prelude::*;

fn budget() -> ErrorBudget {
    ErrorBudget::default()
}

/// An even-sized subset of `0..side`.
fn cuts(side: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::btree_set(0..side, 0..=side).prop_map(|s| {
        let mut v: Vec<usize> = s.into_iter().collect();
        if v.len() % 2 == 1 {
            v.pop();
        }
        v
    })
}

fn config() -> impl Strategy<Value = StraightLineConfig> {
    (2usize..20).prop_flat_map(|l| (Just(l), cuts(l), cuts(l), prop::bool::ANY)).prop_map(|(l, h, v, up)| {
        StraightLineConfig::new(l, h, v, if up { 1 } else { -1 }).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn f_and_g_are_concave(a in 0.0f64..0.5, b in 0.0f64..0.5) {
        let m = 0.5 * (a + b);
        prop_assert!(f_lambda(m).unwrap() >= 0.5 * (f_lambda(a).unwrap() + f_lambda(b).unwrap()) - 1e-12);
        prop_assert!(g_lambda(m).unwrap() >= 0.5 * (g_lambda(a).unwrap() + g_lambda(b).unwrap()) - 1e-12);
    }

    #[test]
    fn f_and_g_lie_above_their_chords(l in 0.0f64..=0.5) {
        let f0 = f_lambda(0.0).unwrap();
        let g0 = g_lambda(0.0).unwrap();
        let fc = f0 + 2.0 * l * (f_lambda(0.5).unwrap() - f0);
        let gc = g0 + 2.0 * l * (g_lambda(0.5).unwrap() - g0);
        prop_assert!(f_lambda(l).unwrap() >= fc - 1e-12);
        prop_assert!(g_lambda(l).unwrap() >= gc - 1e-12);
    }

    #[test]
    fn bracket_is_nonnegative(l in 1e-9f64..=0.5) {
        prop_assert!(lemma_IV_bracket(l).unwrap() >= -1e-12);
    }

    #[test]
    fn checkerboard_is_symmetric(a in 1u64..60, b in 1u64..60, j in 0.0f64..10.0) {
        let e1 = checkerboard_energy(CheckerboardSpec::new(a, b).unwrap(), j, &budget()).unwrap();
        let e2 = checkerboard_energy(CheckerboardSpec::new(b, a).unwrap(), j, &budget()).unwrap();
        prop_assert!((e1.value - e2.value).abs() <= e1.error_bound + e2.error_bound);
    }

    #[test]
    fn energies_are_affine_in_j(a in 1u64..40, b in 1u64..40, j in 0.0f64..10.0) {
        let b0 = budget();
        let e0 = checkerboard_energy(CheckerboardSpec::new(a, b).unwrap(), 0.0, &b0).unwrap();
        let ej = checkerboard_energy(CheckerboardSpec::new(a, b).unwrap(), j, &b0).unwrap();
        let wall = 2.0 * j / a as f64 + 2.0 * j / b as f64;
        prop_assert!((ej.value - e0.value - wall).abs() <= ej.error_bound + e0.error_bound + 1e-14);
        let s0 = stripe_energy(a, 0.0, &b0).unwrap();
        let s = checkerboard_energy(CheckerboardSpec::new(Side::Infinite, a).unwrap(), j, &b0).unwrap();
        prop_assert!((s.value - s0.value - 2.0 * j / a as f64).abs() <= s.error_bound + s0.error_bound + 1e-14);
    }

    #[test]
    fn tighter_budget_stays_within_certificate(a in 1u64..30, b in 1u64..30) {
        let loose = ErrorBudget::with_tol(1e-8).unwrap();
        let tight = ErrorBudget::with_tol(5e-9).unwrap();
        let e1 = checkerboard_energy(CheckerboardSpec::new(a, b).unwrap(), 1.0, &loose).unwrap();
        let e2 = checkerboard_energy(CheckerboardSpec::new(a, b).unwrap(), 1.0, &tight).unwrap();
        prop_assert!((e1.value - e2.value).abs() <= e1.error_bound);
    }

    #[test]
    fn periodic_kernel_symmetries(d1 in -7i64..8, d2 in -7i64..8, l in 2u64..9) {
        prop_assume!((d1.rem_euclid(l as i64), d2.rem_euclid(l as i64)) != (0, 0));
        let b = budget();
        let k = periodic_kernel((d1, d2), l, &b).unwrap();
        let neg = periodic_kernel((-d1, -d2), l, &b).unwrap();
        let swap = periodic_kernel((d2, d1), l, &b).unwrap();
        prop_assert!(k.value > 0.0);
        prop_assert!((k.value - neg.value).abs() <= k.error_bound + neg.error_bound);
        prop_assert!((k.value - swap.value).abs() <= k.error_bound + swap.error_bound);
    }

    #[test]
    fn straight_line_round_trip(cfg in config()) {
        let spins = cfg.to_spin_configuration().unwrap();
        prop_assert_eq!(StraightLineConfig::from_spin_configuration(&spins).unwrap(), cfg);
    }

    #[test]
    fn tiles_partition_the_torus(cfg in config()) {
        let d = decompose_tiles(&cfg).unwrap();
        let l = cfg.side();
        prop_assert_eq!(d.total_area(), l * l);
        let nh = cfg.horizontal_cuts().len().max(1);
        let nv = cfg.vertical_cuts().len().max(1);
        prop_assert_eq!(d.tiles.len(), nh * nv);
        let spins = cfg.to_spin_configuration().unwrap();
        for t in &d.tiles {
            prop_assert_eq!(spins.get(t.origin.0 as i64, t.origin.1 as i64), t.sign);
        }
    }

    #[test]
    fn classes_follow_the_region_inequalities(a in 1u64..3000, b in 1u64..3000, j in 2.0f64..12.0) {
        let rc = region_constants().unwrap();
        let cell = classify(a, b, j).unwrap();
        prop_assert_eq!(cell.class, classify(b, a, j).unwrap().class);
        let (long, short) = (a.max(b) as f64, a.min(b) as f64);
        let s = (j / 2.0).exp();
        let delta = short / long;
        match cell.class {
            Class::ThinExcluded => prop_assert!(short <= rc.c_i * s),
            Class::ThickExcluded => prop_assert!(short >= rc.c_ii(delta) * s),
            Class::LongExcluded => prop_assert!(short <= rc.c_iii(delta) * s),
            Class::ResidualR => {
                let h = long * short / (long + short);
                prop_assert!(h >= rc.c_min * s && h <= rc.c_max * s);
                prop_assert!(short / (long + short) >= rc.lambda_min);
            }
            Class::StripeCandidate => {
                prop_assert!(short > rc.c_i * s && short < rc.c_ii(delta) * s && short > rc.c_iii(delta) * s);
                prop_assert!(!cell.in_residual_envelope);
            }
        }
    }
}
