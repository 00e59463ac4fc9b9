mod common;

use geoprog::numeric::{int, rat};
use geoprog::oracle::{brute_esat, brute_window, BruteSat, Depth};
use geoprog::progression::{
    enumerate_window, esystem_sat, level_set, separation_radius, CoeffVector, EConstraintSystem, SatResult,
    DEFAULT_DEPTH_BUDGET,
};
use geoprog::GeoBase;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn arb_base() -> impl Strategy<Value = GeoBase> {
    prop::sample::select(vec![(2, 1), (3, 2), (5, 2), (3, 1), (4, 3)])
        .prop_map(|(n, d)| GeoBase::new(rat(n, d)).unwrap())
}

fn arb_coeffs(max_m: usize) -> impl Strategy<Value = CoeffVector> {
    prop::collection::vec((-5i64..=5, 1i64..=2), 1..=max_m)
        .prop_map(|v| CoeffVector::new(v.into_iter().map(|(n, d)| rat(n, d)).collect()))
}

fn arb_radius() -> impl Strategy<Value = geoprog::ExactRational> {
    (1i64..=40, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn window_equals_brute_force(base in arb_base(), coeffs in arb_coeffs(3), r in arb_radius()) {
        let w = enumerate_window(&base, &coeffs, &r).unwrap();
        let brute = brute_window(&base, &coeffs, &r, Depth(w.depth_bound + 3)).unwrap();
        prop_assert_eq!(w.value_set(), brute);
    }

    #[test]
    fn witnesses_evaluate_to_their_value(base in arb_base(), coeffs in arb_coeffs(3), r in arb_radius()) {
        let w = enumerate_window(&base, &coeffs, &r).unwrap();
        for (v, ws) in &w.witnesses {
            prop_assert!(!ws.is_empty());
            for k in ws {
                prop_assert_eq!(&coeffs.evaluate(&base, k), v);
            }
            prop_assert!(v.abs() < r);
        }
    }

    #[test]
    fn brute_window_is_monotone(base in arb_base(), coeffs in arb_coeffs(3), r in arb_radius(), d in 0u32..6) {
        let a = brute_window(&base, &coeffs, &r, Depth(d)).unwrap();
        let b = brute_window(&base, &coeffs, &r, Depth(d + 1)).unwrap();
        prop_assert!(a.is_subset(&b));
    }

    #[test]
    fn stored_levels_scale(base in arb_base(), coeffs in arb_coeffs(3), r in arb_radius(), k in 0u32..5) {
        let w = enumerate_window(&base, &coeffs, &r).unwrap();
        for p in 0..coeffs.len() {
            prop_assert_eq!(w.scaled_level(&base, p, k), level_set(&base, &coeffs, p, k, &r).unwrap());
        }
    }

    #[test]
    fn separation_radius_isolates_zero(base in arb_base(), coeffs in arb_coeffs(3)) {
        let r = separation_radius(&base, &coeffs);
        prop_assert!(r.is_positive());
        let found = brute_window(&base, &coeffs, &r, Depth(12)).unwrap();
        prop_assert!(found.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn esat_agrees_with_brute_force(seed in any::<u64>(), m in 1usize..=3, rows in 1usize..=4) {
        let mut rng = common::rng(seed);
        let base = &common::bases()[(seed % 4) as usize];
        let sys = common::random_system(&mut rng, m, rows);
        match esystem_sat(base, &sys, DEFAULT_DEPTH_BUDGET).unwrap() {
            SatResult::Sat { witness } => prop_assert!(sys.satisfied_by(base, &witness)),
            SatResult::Unsat { .. } => prop_assert!(!brute_esat(base, &sys, Depth(10)).is_sat()),
            SatResult::Unknown { .. } => {}
        }
    }

    #[test]
    fn brute_esat_is_monotone(seed in any::<u64>(), d in 0u32..6) {
        let mut rng = common::rng(seed);
        let base = GeoBase::integer(2).unwrap();
        let sys = common::random_system(&mut rng, 2, 2);
        if let BruteSat::Sat(w) = brute_esat(&base, &sys, Depth(d)) {
            prop_assert!(sys.satisfied_by(&base, &w));
            prop_assert!(brute_esat(&base, &sys, Depth(d + 1)).is_sat());
        }
    }
}

#[test]
fn difference_window() {
    let two = GeoBase::integer(2).unwrap();
    let w = enumerate_window(&two, &CoeffVector::new(vec![int(1), int(-1)]), &int(3)).unwrap();
    assert_eq!(w.values().cloned().collect::<Vec<_>>(), (-2..=2).map(int).collect::<Vec<_>>());
    assert!(enumerate_window(&two, &CoeffVector::new(vec![int(1)]), &int(0)).is_err());
}

#[test]
fn small_systems() {
    let two = GeoBase::integer(2).unwrap();
    let sat = |s: &str| esystem_sat(&two, &s.parse::<EConstraintSystem>().unwrap(), DEFAULT_DEPTH_BUDGET).unwrap();
    assert_eq!(sat("1 -1 >= 5").witness(), Some(&[3, 0][..]));
    assert!(sat("1 1 <= 1").is_unsat());
    assert!(sat("1 -1 = 5").is_unsat());
    assert!(sat("1 -1 = 3\n0 1 < 1").is_unsat());
    assert_eq!(sat("1 -1 = 3\n0 1 < 2").witness(), Some(&[2, 0][..]));
}

#[test]
fn oracle_mixed_coefficients() {
    let two = GeoBase::integer(2).unwrap();
    let c = CoeffVector::new(vec![int(3), int(-1), rat(1, 2)]);
    assert_eq!(
        brute_window(&two, &c, &int(10), Depth(0)).unwrap().into_iter().collect::<Vec<_>>(),
        vec![rat(5, 2)]
    );
}
