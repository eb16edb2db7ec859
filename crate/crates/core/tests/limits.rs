mod common;

use common::*;
use su3_bethe::integral::limits::*;
use su3_bethe::kernel::RKind;
use su3_bethe::Rat;

#[test]
fn factorization_small() {
    let mut r = rng(401);
    for (l, m) in [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)] {
        let s = onshell(&mut r, l, m);
        for (kind, n) in [(LimitKind::MuBToInf, m), (LimitKind::LamBToInf, l)] {
            if n == 0 {
                continue;
            }
            let c = infinity_limit_check_with(kind, &s, LimitOrder::LastFirst).unwrap();
            assert_eq!(c.n, n);
            assert_eq!(c.lhs, c.rhs, "{kind:?} ({l},{m})");
            assert!(c.passed());
        }
    }
}

#[test]
fn limit_order_irrelevant() {
    let mut r = rng(402);
    for (l, m) in [(2, 1), (1, 2)] {
        let s = onshell(&mut r, l, m);
        for kind in [LimitKind::MuBToInf, LimitKind::LamBToInf] {
            let a = sequential_limits(kind, &s, LimitOrder::LastFirst).unwrap();
            let b = sequential_limits(kind, &s, LimitOrder::FirstFirst).unwrap();
            assert_eq!(a, b, "{kind:?} ({l},{m})");
        }
    }
}

#[test]
fn tower_route_agrees() {
    let mut r = rng(403);
    for (l, m) in [(1, 1), (0, 2)] {
        let s = onshell(&mut r, l, m);
        let kind = LimitKind::MuBToInf;
        assert_eq!(sequential_limits_tower(kind, &s, LimitOrder::LastFirst).unwrap(), sequential_limits(kind, &s, LimitOrder::LastFirst).unwrap());
    }
}

#[test]
fn normalization_calibration() {
    // n = 1 cannot tell the conventions apart; n = 2 can
    let mut r = rng(404);
    let s = onshell(&mut r, 1, 1);
    let c = infinity_limit_check_with(LimitKind::MuBToInf, &s, LimitOrder::LastFirst).unwrap();
    assert!(c.passed() && c.unnormalized_agrees());
    let s = onshell(&mut r, 1, 2);
    let c = infinity_limit_check_with(LimitKind::MuBToInf, &s, LimitOrder::LastFirst).unwrap();
    assert!(c.passed());
    assert_eq!(c.lhs_sequential, c.lhs.clone() * Rat::int(2));
    assert!(!c.unnormalized_agrees());
}

#[test]
fn reconstruction_is_exact() {
    // (3t² − 1)/(t³ + 2t − 5)
    let f = |t: &Rat| -> su3_bethe::Result<Rat> {
        let t = t.clone();
        Ok((Rat::int(3) * t.clone() * t.clone() - Rat::one()) / (t.clone() * t.clone() * t.clone() + Rat::int(2) * t - Rat::int(5)))
    };
    let g = reconstruct(f).unwrap();
    for x in [Rat::int(7), Rat::new(-2, 3), Rat::new(11, 5)] {
        assert_eq!(g.eval_at(&x).unwrap(), f(&x).unwrap());
    }
    assert_eq!(g.limit_scaled_infinity(1).unwrap(), Rat::int(3));
}

#[test]
fn nongeneric_input_rejected() {
    let t = su3_bethe::RTable::new().with(RKind::R3, Rat::int(0), Rat::int(3));
    let s = su3_bethe::SPInput::onshell(su3_bethe::VarSet::ints(&[1]), su3_bethe::VarSet::empty(), su3_bethe::VarSet::empty(), su3_bethe::VarSet::ints(&[0]), &t).unwrap();
    assert!(infinity_limit_check(LimitKind::MuBToInf, &s).is_err());
}
