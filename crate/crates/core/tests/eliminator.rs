mod common;

use geoprog::eliminator::{
    decide_membership, decide_membership_in, eliminate_bounded, eliminate_bounded_in, semilinear_boolean, OpenBox,
    Piece, SemilinearSet, SetOp, Status, DEFAULT_DEPTH_BUDGET,
};
use geoprog::logic::{parse_formula, qe_cells, Formula};
use geoprog::numeric::{int, rat};
use geoprog::oracle::{brute_member, Depth};
use geoprog::{ExactRational, GeoBase};
use proptest::prelude::*;

fn two() -> GeoBase {
    GeoBase::integer(2).unwrap()
}

fn elim(src: &str, r: ExactRational, base: &GeoBase) -> geoprog::eliminator::EliminationResult {
    let f = parse_formula(src).unwrap();
    let n = f.free_vars().len();
    eliminate_bounded(&f, &OpenBox::new(n, r).unwrap(), base, DEFAULT_DEPTH_BUDGET).unwrap()
}

#[test]
fn one_dimensional_sets() {
    let pts = |v: Vec<ExactRational>| v.into_iter().map(Piece::Point).collect::<Vec<_>>();
    assert_eq!(elim("E(x)", int(5), &two()).set.pieces().unwrap(), pts(vec![int(1), int(2), int(4)]));
    assert_eq!(
        elim("exists y in E. exists z in E. x = y - z", int(3), &two()).set.pieces().unwrap(),
        pts((-2..=2).map(int).collect())
    );
    assert_eq!(
        elim("exists y in E. x < y", int(1), &two()).set.pieces().unwrap(),
        vec![Piece::Interval(int(-1), int(1))]
    );
    assert_eq!(
        elim("exists y in E. x = 1/3*y", int(2), &two()).set.pieces().unwrap(),
        pts(vec![rat(1, 3), rat(2, 3), rat(4, 3)])
    );
}

#[test]
fn membership_matches_brute_force() {
    let f = parse_formula("exists y in E. exists z in E. x = y - z").unwrap();
    for (n, d) in [(5, 1), (3, 2), (2, 1), (-7, 1), (0, 1), (7, 4)] {
        let p = [rat(n, d)];
        assert_eq!(
            decide_membership(&f, &p, &two()).unwrap(),
            brute_member(&f, &p, &two(), Depth(12)).unwrap(),
            "{n}/{d}"
        );
    }
}

#[test]
fn product_sets_in_the_plane() {
    let r = elim("E(x) and E(y)", int(5), &two());
    assert_eq!(r.status, Status::Exact);
    assert_eq!(r.set.cells().len(), 9);
    assert!(r.set.contains(&[int(2), int(4)]));
    assert!(!r.set.contains(&[int(3), int(4)]));
}

#[test]
fn open_queries_degrade_to_a_subset() {
    // With a gap budget of 1 the exponent solver cannot settle this system.
    let src = "exists y in E. exists z in E. exists w in E. y = z + w and y > 3 and x = 0";
    let f = parse_formula(src).unwrap();
    let bx = OpenBox::new(1, int(2)).unwrap();
    let r = eliminate_bounded(&f, &bx, &two(), 1).unwrap();
    assert_eq!(r.status, Status::UnderApprox);
    assert!(!r.diagnostics.is_empty());
    assert!(!r.set.contains(&[int(0)]) || decide_membership(&f, &[int(0)], &two()).unwrap());
    assert_eq!(r.to_json()["status"], "under_approx");

    let g = Formula::not(f.clone());
    let r = eliminate_bounded(&g, &bx, &two(), 1).unwrap();
    assert_eq!(r.status, Status::UnderApprox);
    for p in [int(0), rat(1, 2), int(-1)] {
        if r.set.contains(std::slice::from_ref(&p)) {
            assert!(decide_membership(&g, &[p], &two()).unwrap());
        }
    }

    let exact = eliminate_bounded(&f, &bx, &two(), DEFAULT_DEPTH_BUDGET).unwrap();
    assert_eq!(exact.status, Status::Exact);
    assert_eq!(exact.set.pieces().unwrap(), vec![Piece::Point(int(0))]);
}

#[test]
fn rejected_fragment() {
    let f = parse_formula("exists y in E. forall z in E. x < y - z").unwrap();
    let bx = OpenBox::new(1, int(2)).unwrap();
    assert!(matches!(
        eliminate_bounded(&f, &bx, &two(), DEFAULT_DEPTH_BUDGET),
        Err(geoprog::Error::Fragment(_))
    ));
}

#[test]
fn explicit_coordinates() {
    let f = parse_formula("E(x)").unwrap();
    let vars = vec!["x".to_string(), "y".to_string()];
    let bx = OpenBox::new(2, int(3)).unwrap();
    let r = eliminate_bounded_in(&f, &vars, &bx, &two(), DEFAULT_DEPTH_BUDGET).unwrap();
    assert!(r.set.contains(&[int(2), rat(-5, 2)]));
    assert!(!r.set.contains(&[int(3), int(0)]));
    assert!(decide_membership_in(&f, &vars, &[int(2), int(7)], &two(), DEFAULT_DEPTH_BUDGET).unwrap());
}

fn corpus_set(i: usize, r: Option<ExactRational>) -> (SemilinearSet, Formula, GeoBase) {
    let case = &common::corpus::corpus()[i];
    let f = parse_formula(case.src).unwrap();
    let n = f.free_vars().len();
    let bx = OpenBox::new(n, r.unwrap_or_else(|| case.radius.clone())).unwrap();
    let res = eliminate_bounded(&f, &bx, &case.base, DEFAULT_DEPTH_BUDGET).unwrap();
    (res.set, f, case.base.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn complement_is_an_involution(i in 0usize..35, seed in any::<u64>()) {
        let (s, _, _) = corpus_set(i, None);
        let cc = semilinear_boolean(
            SetOp::Complement,
            &semilinear_boolean(SetOp::Complement, &s, None).unwrap(),
            None,
        )
        .unwrap();
        let mut rng = common::rng(seed);
        let r = s.bounding_box().radius().clone();
        for _ in 0..100 {
            let p = common::point_in_box(&mut rng, s.vars().len(), &r);
            prop_assert_eq!(s.contains(&p), cc.contains(&p));
        }
    }

    #[test]
    fn shrinking_the_box(i in 0usize..35, seed in any::<u64>()) {
        let (big, _, _) = corpus_set(i, None);
        let r = big.bounding_box().radius().clone();
        let small_r = &r * rat(1, 2);
        let (small, _, _) = corpus_set(i, Some(small_r.clone()));
        let mut rng = common::rng(seed);
        for _ in 0..100 {
            let p = common::point_in_box(&mut rng, big.vars().len(), &small_r);
            prop_assert_eq!(small.contains(&p), big.contains(&p));
        }
    }

    #[test]
    fn e_free_input_is_reproduced(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let f = common::random_qf(&mut rng, &["x", "y"], 4);
        let vars = vec!["x".to_string(), "y".to_string()];
        let bx = OpenBox::new(2, int(4)).unwrap();
        let res = eliminate_bounded_in(&f, &vars, &bx, &two(), DEFAULT_DEPTH_BUDGET).unwrap();
        prop_assert_eq!(res.status, Status::Exact);
        let direct = SemilinearSet::new(vars.clone(), qe_cells(&f).unwrap().cells, bx.clone()).unwrap();
        for _ in 0..100 {
            let p = common::point_in_box(&mut rng, 2, &int(4));
            prop_assert_eq!(res.set.contains(&p), direct.contains(&p));
        }
    }

    #[test]
    fn binary_operations_are_pointwise(i in 0usize..35, j in 0usize..35, seed in any::<u64>()) {
        let (a, _, _) = corpus_set(i, None);
        let (b, _, _) = corpus_set(j, None);
        let r = a.bounding_box().radius().clone();
        prop_assume!(a.vars() == b.vars());
        let b = b.with_box(a.bounding_box().clone()).unwrap();
        let u = semilinear_boolean(SetOp::Union, &a, Some(&b)).unwrap();
        let n = semilinear_boolean(SetOp::Intersection, &a, Some(&b)).unwrap();
        let mut rng = common::rng(seed);
        for _ in 0..100 {
            let p = common::point_in_box(&mut rng, a.vars().len(), &r);
            prop_assert_eq!(u.contains(&p), a.contains(&p) || b.contains(&p));
            prop_assert_eq!(n.contains(&p), a.contains(&p) && b.contains(&p));
        }
    }
}
