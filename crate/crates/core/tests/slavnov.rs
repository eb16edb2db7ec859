use su3_bethe::kernel::{RKind, RTable, VarSet};
use su3_bethe::scalar_sum::{scalar_product_sum, SPInput};
use su3_bethe::slavnov::{extended_slavnov, extended_slavnov_at, slavnov_det};
use su3_bethe::symbolic::Affine;
use su3_bethe::{Field, Rat, RatFunc, Ring};

fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

fn sample_l(lb: &[Rat], lc: &[Rat], r1: &[Rat]) -> SPInput {
    let mut t = RTable::new();
    for (p, v) in lc.iter().zip(r1) {
        t.set(RKind::R1, p.clone(), v.clone());
    }
    SPInput::onshell(VarSet::empty(), VarSet::new(lb.to_vec()), VarSet::new(lc.to_vec()), VarSet::empty(), &t).unwrap()
}

fn sample_m(mb: &[Rat], mc: &[Rat], r3: &[Rat]) -> SPInput {
    let mut t = RTable::new();
    for (p, v) in mc.iter().zip(r3) {
        t.set(RKind::R3, p.clone(), v.clone());
    }
    SPInput::onshell(VarSet::new(mb.to_vec()), VarSet::empty(), VarSet::empty(), VarSet::new(mc.to_vec()), &t).unwrap()
}

#[test]
fn slavnov_matches_sum_kind1() {
    let lb = [q(1, 3), q(7, 2), q(-5, 4)];
    let lc = [q(11, 5), q(-2, 7), q(9, 4)];
    let r1 = [q(3, 1), q(-2, 5), q(7, 3)];
    for l in 0..=3 {
        let s = sample_l(&lb[..l], &lc[..l], &r1[..l]);
        assert_eq!(slavnov_det(RKind::R1, &s).unwrap(), scalar_product_sum(&s).unwrap(), "l = {l}");
    }
}

#[test]
fn slavnov_matches_sum_kind3() {
    let mb = [q(2, 3), q(-7, 2), q(5, 6)];
    let mc = [q(13, 5), q(-1, 7), q(17, 4)];
    let r3 = [q(4, 1), q(-3, 5), q(2, 9)];
    for m in 0..=3 {
        let s = sample_m(&mb[..m], &mc[..m], &r3[..m]);
        assert_eq!(slavnov_det(RKind::R3, &s).unwrap(), scalar_product_sum(&s).unwrap(), "m = {m}");
    }
}

#[test]
fn row_permutation_invariance() {
    let s = sample_l(&[q(1, 3), q(7, 2)], &[q(11, 5), q(-2, 7)], &[q(3, 1), q(-2, 5)]);
    let mut t = s.clone();
    t.lam_c = VarSet::new(vec![s.lam_c[1].clone(), s.lam_c[0].clone()]);
    assert_eq!(slavnov_det(RKind::R1, &s).unwrap(), slavnov_det(RKind::R1, &t).unwrap());
}

#[test]
fn extended_specializes_like_tower() {
    type T = RatFunc<RatFunc<Rat>>;
    let mut r = RTable::new().with(RKind::R1, q(3, 2), q(2, 1)).with(RKind::R3, q(-4, 3), q(5, 7));
    r.merge(&su3_bethe::kernel::onshell_rtable(&[q(1, 5)], &[q(9, 4)]).unwrap());
    let s = SPInput::new(
        VarSet::new(vec![q(9, 4)]),
        VarSet::new(vec![q(1, 5)]),
        VarSet::new(vec![q(3, 2)]),
        VarSet::new(vec![q(-4, 3)]),
        r,
    )
    .unwrap();
    let (x, y) = (q(17, 3), q(-11, 6));
    for kind in [RKind::R1, RKind::R3] {
        let sym: T = extended_slavnov(kind, &s, &[Affine::var(0)], &[Affine::var(1)]).unwrap();
        let at_x = sym.eval_at(&RatFunc::from_rat(&x)).unwrap();
        let val = at_x.eval_at(&y).unwrap();
        assert_eq!(val, extended_slavnov_at(kind, &s, &[x.clone()], &[y.clone()]).unwrap());
    }
    let _ = T::DEPTH;
}
