//! Property-based invariants over randomly generated parameters. These
//! complement the seeded loops: proptest shrinks failures to minimal
//! counterexamples instead of reporting a raw seed.

mod common;

use bellmix::chsh::{chsh_report_e0, horodecki_m_e0};
use bellmix::measures::{concurrence_e0, eof_from_concurrence, linear_entropy_e0, measure_e0};
use bellmix::regions::{
    admissible_interval, classify, s1, s2, s_max, Region, RegionPoint,
};
use bellmix::states::{validate_density, E0Params};
use proptest::prelude::*;
use std::f64::consts::FRAC_1_SQRT_2;

/// Positivity-respecting block parameters: populations first, coherence
/// scaled under its ceiling.
fn e0_strategy() -> impl Strategy<Value = E0Params<f64>> {
    (0.0..1.0f64, 0.0..1.0f64, 0.0..1.0f64, -10.0..10.0f64).prop_map(|(a, bf, cf, theta)| {
        let b = bf * (1.0 - a);
        let c = cf * 2.0 * (a * b).sqrt();
        E0Params::new(a, b, c, theta).expect("inside the positivity wedge")
    })
}

proptest! {
    #[test]
    fn block_states_are_valid_and_block_shaped(p in e0_strategy()) {
        let rho = p.density();
        prop_assert!(validate_density(rho.matrix()).is_empty());
        for k in 0..4 {
            prop_assert_eq!(rho.matrix()[(0, k)], num_complex::Complex::new(0.0, 0.0));
            prop_assert_eq!(rho.matrix()[(k, 0)], num_complex::Complex::new(0.0, 0.0));
        }
        prop_assert!((0.0..std::f64::consts::TAU).contains(&p.theta()));
    }

    #[test]
    fn block_measures_stay_in_range(p in e0_strategy()) {
        let report = measure_e0(&p).unwrap();
        prop_assert!((report.concurrence - p.c()).abs() < 1e-15);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&report.linear_entropy));
        prop_assert!((0.25 - 1e-12..=1.0 + 1e-12).contains(&report.purity));
        prop_assert!((0.0..=1.0).contains(&report.entanglement_of_formation));
        prop_assert!(
            (report.linear_entropy - 4.0 / 3.0 * (1.0 - report.purity)).abs() < 1e-12
        );
    }

    #[test]
    fn chsh_report_is_internally_consistent(p in e0_strategy()) {
        let report = chsh_report_e0(&p);
        prop_assert!((0.0..=2.0 + 1e-12).contains(&report.m));
        prop_assert!((report.max_chsh - 2.0 * report.m.sqrt()).abs() < 1e-12);
        prop_assert!((report.n - (report.m - 1.0).max(0.0)).abs() < 1e-12);
        prop_assert_eq!(report.violates, report.m > 1.0);
        // High concurrence forces violation through the first branch.
        if p.c() > FRAC_1_SQRT_2 {
            prop_assert!(report.violates);
        }
    }

    #[test]
    fn eof_is_monotone_and_bounded(c1 in 0.0..1.0f64, c2 in 0.0..1.0f64) {
        let (lo, hi) = if c1 <= c2 { (c1, c2) } else { (c2, c1) };
        let e_lo = eof_from_concurrence(lo).unwrap();
        let e_hi = eof_from_concurrence(hi).unwrap();
        prop_assert!(e_lo <= e_hi + 1e-12);
        prop_assert!((0.0..=1.0).contains(&e_lo) && (0.0..=1.0).contains(&e_hi));
    }

    #[test]
    fn classification_is_total_and_boundary_ordered(
        s in 0.0..1.0f64,
        c in 1e-6..1.0f64,
    ) {
        let p = RegionPoint::new(s, c).unwrap();
        let region = classify(&p);
        let ceiling = s_max(c).unwrap();
        if s > ceiling + 1e-9 {
            prop_assert_eq!(region, Region::OutsideLambda);
        } else if s <= ceiling {
            prop_assert_ne!(region, Region::OutsideLambda);
            if c <= FRAC_1_SQRT_2 {
                let low = s1(c).unwrap();
                let high = s2(c).unwrap();
                prop_assert!(low < high && high <= ceiling + 1e-12);
                let expected = if s < low - 1e-12 {
                    Region::Lambda1
                } else if s < high - 1e-12 {
                    Region::Lambda2
                } else {
                    Region::Lambda3
                };
                prop_assert_eq!(region, expected);
            } else {
                prop_assert_eq!(region, Region::Lambda1);
            }
        }
    }

    #[test]
    fn admissible_arcs_carry_exact_measures(
        s in 0.0..0.99f64,
        cf in 0.05..0.95f64,
        frac in 0.0..1.0f64,
    ) {
        // Map into the wedge: c free, s scaled under the ceiling.
        let c = cf;
        let s = s * s_max(c).unwrap();
        let p = RegionPoint::new(s, c).unwrap();
        let arcs = admissible_interval(&p).unwrap();
        prop_assert!(!arcs.is_empty(), "inside the wedge there is always a state");
        let total: f64 = arcs.iter().map(|a| a.len()).sum();
        let mut offset = frac * total;
        let mut chosen = arcs[0].lo;
        for arc in &arcs {
            if offset <= arc.len() {
                chosen = arc.lo + offset;
                break;
            }
            offset -= arc.len();
        }
        let state = bellmix::regions::family_state(&p, chosen, 0.0).unwrap();
        prop_assert!((concurrence_e0(&state) - c).abs() < 1e-12);
        prop_assert!((linear_entropy_e0(&state) - s).abs() < 1e-10);
        // The verdict agrees with the closed-form criterion everywhere.
        let m = horodecki_m_e0(&state);
        prop_assert!((0.0..=2.0 + 1e-12).contains(&m));
    }

    #[test]
    fn theta_is_reduced_into_one_turn(
        a in 0.0..1.0f64,
        theta in -100.0..100.0f64,
    ) {
        let p = E0Params::new(a, 1.0 - a, 0.0, theta).unwrap();
        prop_assert!((0.0..std::f64::consts::TAU).contains(&p.theta()));
        let turns = (theta - p.theta()) / std::f64::consts::TAU;
        prop_assert!((turns - turns.round()).abs() < 1e-9);
    }
}
