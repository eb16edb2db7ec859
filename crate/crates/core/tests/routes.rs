mod common;

use common::*;
use su3_bethe::integral::recursion::{eval_recursion, RecOrder};
use su3_bethe::integral::tower::{eval_multiple_integral_tower, su2_integral_tower};
use su3_bethe::integral::{eval_multiple_integral, eval_multiple_integral_with, su2_integral_with, IntegralOptions, Slot, Su2Form};
use su3_bethe::kernel::{RKind, VarSet};
use su3_bethe::scalar_sum::scalar_product_sum;
use su3_bethe::slavnov::slavnov_det;
use su3_bethe::{Rat, RatFunc, SPInput};

type T2 = RatFunc<RatFunc<Rat>>;

#[test]
fn all_routes_agree_small() {
    let mut r = rng(101);
    for (l, m) in shapes(3) {
        for _ in 0..3 {
            let s = onshell(&mut r, l, m);
            let want = scalar_product_sum(&s).unwrap();
            assert_eq!(eval_multiple_integral(RKind::R1, &s).unwrap(), want, "int1 ({l},{m})");
            assert_eq!(eval_multiple_integral(RKind::R3, &s).unwrap(), want, "int3 ({l},{m})");
            for o in [RecOrder::MFirst, RecOrder::LFirst, RecOrder::Full] {
                assert_eq!(eval_recursion(o, &s).unwrap(), want, "{o:?} ({l},{m})");
            }
        }
    }
}

#[test]
fn permuted_b_parameters_give_the_same_value() {
    let mut r = rng(7);
    for (l, m) in [(2, 1), (1, 2), (2, 2)] {
        let s = onshell(&mut r, l, m);
        let mut p = s.clone();
        p.lam_b.0.reverse();
        p.mu_b.0.reverse();
        p.lam_c.0.rotate_left(1);
        let want = scalar_product_sum(&s).unwrap();
        assert_eq!(scalar_product_sum(&p).unwrap(), want);
        assert_eq!(eval_multiple_integral(RKind::R1, &p).unwrap(), want);
        assert_eq!(eval_multiple_integral(RKind::R3, &p).unwrap(), want);
    }
}

#[test]
fn elimination_order_and_skipping_do_not_matter() {
    let mut r = rng(12);
    for (l, m) in [(1, 2), (2, 2), (2, 1)] {
        let s = onshell(&mut r, l, m);
        let want = scalar_product_sum(&s).unwrap();
        for kind in [RKind::R1, RKind::R3] {
            let n = if kind == RKind::R1 { m } else { l };
            let orders: Vec<Vec<Slot>> = vec![
                (0..n).flat_map(|k| [Slot::X(k), Slot::Y(k)]).collect(),
                (0..n).rev().flat_map(|k| [Slot::Y(k), Slot::X(k)]).collect(),
                (0..n).map(Slot::Y).chain((0..n).map(Slot::X)).collect(),
            ];
            for order in orders {
                for skip in [true, false] {
                    let o = IntegralOptions { order: Some(order.clone()), skip_regular: skip, ..Default::default() };
                    let (v, st) = eval_multiple_integral_with(kind, &s, &o).unwrap();
                    assert_eq!(v, want, "{kind:?} {order:?} skip={skip}");
                    if !skip {
                        assert_eq!(st.skipped, 0);
                    }
                }
            }
        }
    }
}

#[test]
fn bad_order_rejected() {
    let s = onshell(&mut rng(3), 1, 1);
    let o = IntegralOptions { order: Some(vec![Slot::X(0), Slot::X(0)]), ..Default::default() };
    assert!(eval_multiple_integral_with(RKind::R1, &s, &o).is_err());
}

#[test]
fn size_limit_enforced() {
    let s = onshell(&mut rng(4), 2, 1);
    let o = IntegralOptions { max_size: 2, ..Default::default() };
    assert!(eval_multiple_integral_with(RKind::R1, &s, &o).is_err());
}

#[test]
fn fill_value_irrelevant() {
    let mut r = rng(44);
    for (l, m) in [(1, 1), (2, 1), (1, 2), (0, 2), (2, 0)] {
        let s = onshell(&mut r, l, m);
        let base = scalar_product_sum(&s).unwrap();
        for _ in 0..3 {
            let fill = small_rat(&mut r);
            for kind in [RKind::R1, RKind::R3] {
                let o = IntegralOptions { fill: fill.clone(), ..Default::default() };
                assert_eq!(eval_multiple_integral_with(kind, &s, &o).unwrap().0, base);
            }
        }
    }
}

#[test]
fn tower_matches_sparse_engine() {
    let mut r = rng(55);
    for (l, m) in [(0, 1), (1, 1), (2, 1), (1, 0), (1, 2)] {
        let s = onshell(&mut r, l, m);
        let want = scalar_product_sum(&s).unwrap();
        if m == 1 {
            assert_eq!(eval_multiple_integral_tower::<T2>(RKind::R1, &s, None, true).unwrap(), want);
            assert_eq!(eval_multiple_integral_tower::<T2>(RKind::R1, &s, None, false).unwrap(), want);
        }
        if l == 1 {
            assert_eq!(eval_multiple_integral_tower::<T2>(RKind::R3, &s, None, true).unwrap(), want);
        }
    }
}

#[test]
fn su2_forms_match_slavnov() {
    let mut r = rng(66);
    for n in 0..=3 {
        let sl = onshell(&mut r, n, 0);
        let sm = onshell(&mut r, 0, n);
        let dl = slavnov_det(RKind::R1, &sl).unwrap();
        let dm = slavnov_det(RKind::R3, &sm).unwrap();
        assert_eq!(dl, scalar_product_sum(&sl).unwrap());
        assert_eq!(dm, scalar_product_sum(&sm).unwrap());
        for form in [Su2Form::Expanded, Su2Form::Compact] {
            let o = IntegralOptions::default();
            assert_eq!(su2_integral_with(RKind::R3, form, &sl, &o).unwrap().0, dl, "m=0 n={n} {form:?}");
            assert_eq!(su2_integral_with(RKind::R1, form, &sm, &o).unwrap().0, dm, "l=0 n={n} {form:?}");
        }
        if n == 1 {
            assert_eq!(su2_integral_tower::<RatFunc<Rat>>(RKind::R3, Su2Form::Expanded, &sl).unwrap(), dl);
            assert_eq!(su2_integral_tower::<RatFunc<Rat>>(RKind::R1, Su2Form::Compact, &sm).unwrap(), dm);
        }
    }
}

#[test]
fn recursion_needs_nothing_beyond_bethe_data() {
    // (1,0) reference value
    let t = su3_bethe::RTable::new().with(RKind::R1, Rat::int(0), Rat::int(5));
    let s = SPInput::onshell(VarSet::empty(), VarSet::ints(&[1]), VarSet::ints(&[0]), VarSet::empty(), &t).unwrap();
    for o in [RecOrder::MFirst, RecOrder::LFirst, RecOrder::Full] {
        assert_eq!(eval_recursion(o, &s).unwrap(), Rat::int(4));
    }
}
