mod common;

use common::*;
use su3_bethe::lattice::*;
use su3_bethe::scalar_sum::scalar_product_sum;
use su3_bethe::Rat;

#[test]
fn oracle_matches_sum_formula() {
    let mut r = rng(2024);
    for n in 2..=3 {
        for (l, m) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (2, 2)] {
            if l + m > n + 1 {
                continue;
            }
            let (s, chain) = chain_case(&mut r, l, m, n);
            let direct = direct_scalar_product(&s, &chain).unwrap();
            let sum = scalar_product_sum(&with_chain_rtable(&s, &chain).unwrap()).unwrap();
            assert_eq!(direct, sum, "({l},{m}) N={n}");
        }
    }
}

#[test]
fn oracle_is_nontrivial() {
    let (s, chain) = chain_case(&mut rng(5), 1, 1, 3);
    assert!(!direct_scalar_product(&s, &chain).unwrap().is_zero());
    let (s, chain) = chain_case(&mut rng(6), 2, 1, 3);
    assert!(!direct_scalar_product(&s, &chain).unwrap().is_zero());
}

#[test]
fn vectors_with_more_mu_than_lambda_vanish() {
    let mut r = rng(9);
    for (l, m) in [(0, 1), (1, 2), (0, 2)] {
        let (s, chain) = chain_case(&mut r, l, m, 3);
        assert!(bethe_state::<Rat>(&s.lam_c, &s.mu_c, &chain).unwrap().is_zero());
        assert!(dual_bethe_state::<Rat>(&s.mu_b, &s.lam_b, &chain).unwrap().is_zero());
    }
}

#[test]
fn bethe_vectors_are_symmetric() {
    let mut r = rng(31);
    for (l, m) in [(2, 1), (2, 2), (3, 1)] {
        let (s, chain) = chain_case(&mut r, l, m, 4);
        let (mut lp, mut mp) = (s.lam_c.0.clone(), s.mu_c.0.clone());
        lp.reverse();
        mp.reverse();
        assert_eq!(bethe_state::<Rat>(&lp, &mp, &chain).unwrap(), bethe_state::<Rat>(&s.lam_c, &s.mu_c, &chain).unwrap());
        let (mut lb, mut mb) = (s.lam_b.0.clone(), s.mu_b.0.clone());
        lb.rotate_left(1);
        mb.reverse();
        assert_eq!(dual_bethe_state::<Rat>(&mb, &lb, &chain).unwrap(), dual_bethe_state::<Rat>(&s.mu_b, &s.lam_b, &chain).unwrap());
    }
}

#[test]
fn rtt_relation() {
    let mut r = rng(77);
    for n in 1..=3 {
        let p = generic_ints(&mut r, n + 2, 30);
        let chain = ChainSpec::new(p[2..].to_vec()).unwrap();
        assert!(rtt_holds(&p[0], &p[1], &chain).unwrap(), "N={n}");
    }
}

#[test]
fn transfer_matrices_commute() {
    let mut r = rng(78);
    for n in 2..=3 {
        let p = generic_ints(&mut r, n + 2, 30);
        let chain = ChainSpec::new(p[2..].to_vec()).unwrap();
        assert!(transfer_commutes(&p[0], &p[1], &chain).unwrap());
    }
}

#[test]
fn vacuum_rules() {
    let mut r = rng(79);
    for n in 1..=3 {
        let p = generic_ints(&mut r, n + 1, 30);
        let chain = ChainSpec::new(p[1..].to_vec()).unwrap();
        assert!(vacuum_rules_hold(&p[0], &chain).unwrap());
        let (a1, a2, a3) = vacuum_eigenvalues(&p[0], &chain).unwrap();
        assert_eq!((a2, a3), (Rat::one(), Rat::one()));
        let want = chain.xi.iter().fold(Rat::one(), |acc, x| acc * su3_bethe::kernel::f(&p[0], x).unwrap());
        assert_eq!(a1, want);
    }
}

#[test]
fn action_identities_small() {
    let mut r = rng(80);
    for (l, m, n) in [(1, 0, 2), (0, 1, 2), (1, 1, 2), (1, 1, 3), (2, 1, 3)] {
        let s = sets(&mut r, l, m, n + 1);
        let chain = ChainSpec::new(s.extra[1..].to_vec()).unwrap();
        for a in Action::ALL {
            let res = action_residual(a, &s.extra[0], &s.lam_c, &s.mu_c, &chain).unwrap();
            assert!(res.is_zero(), "{a:?} ({l},{m}) N={n}");
        }
    }
}

#[test]
fn offshell_state_is_not_an_eigenvector() {
    let mut r = rng(81);
    let s = sets(&mut r, 1, 1, 3);
    let chain = ChainSpec::new(s.extra[1..].to_vec()).unwrap();
    let t = transfer_matrix(&s.extra[0], &chain).unwrap();
    let v = normalized_bethe_state::<Rat>(&s.lam_c, &s.mu_c, &chain).unwrap();
    let tv = t.apply(&v);
    assert!(!tv.sub(&v).is_zero());
}

#[test]
fn too_many_sites_rejected() {
    let xi: Vec<Rat> = (0..=MAX_SITES as i64).map(|k| Rat::int(3 * k)).collect();
    assert!(ChainSpec::new(xi).is_err());
}
