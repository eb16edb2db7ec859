#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use su3_bethe::kernel::{genericity_check, RKind, RTable, VarSet};
use su3_bethe::lattice::ChainSpec;
use su3_bethe::{Rat, SPInput};

pub fn q(n: i64, d: i64) -> Rat {
    Rat::new(n, d)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` integers in [−window, window], pairwise differing by at least 2.
pub fn generic_ints(r: &mut ChaCha8Rng, n: usize, window: i64) -> Vec<Rat> {
    loop {
        let v: Vec<Rat> = (0..n).map(|_| Rat::int(r.gen_range(-window..=window))).collect();
        if genericity_check(&v).is_empty() {
            return v;
        }
    }
}

pub fn small_nonzero(r: &mut ChaCha8Rng) -> Rat {
    let n = *[-7, -5, -3, -2, -1, 1, 2, 3, 5, 7].choose(r).unwrap();
    Rat::new(n, r.gen_range(1..=5))
}

pub fn small_rat(r: &mut ChaCha8Rng) -> Rat {
    Rat::new(r.gen_range(-40..=40), r.gen_range(1..=7))
}

pub struct Sets {
    pub mu_b: Vec<Rat>,
    pub lam_b: Vec<Rat>,
    pub lam_c: Vec<Rat>,
    pub mu_c: Vec<Rat>,
    pub extra: Vec<Rat>,
}

/// Four generic sets of sizes (m, ℓ, ℓ, m) plus `extra` more generic points.
pub fn sets(r: &mut ChaCha8Rng, l: usize, m: usize, extra: usize) -> Sets {
    let w = 4 * (l + m + extra) as i64 + 12;
    let mut p = generic_ints(r, 2 * (l + m) + extra, w);
    let extra = p.split_off(2 * (l + m));
    let mu_c = p.split_off(2 * l + m);
    let lam_c = p.split_off(l + m);
    let lam_b = p.split_off(m);
    Sets { mu_b: p, lam_b, lam_c, mu_c, extra }
}

/// Random C-side r-values.
pub fn c_side(r: &mut ChaCha8Rng, s: &Sets) -> RTable {
    let mut t = RTable::new();
    for x in &s.lam_c {
        t.set(RKind::R1, x.clone(), small_nonzero(r));
    }
    for y in &s.mu_c {
        t.set(RKind::R3, y.clone(), small_nonzero(r));
    }
    t
}

/// A generic case with on-shell B-side.
pub fn onshell(r: &mut ChaCha8Rng, l: usize, m: usize) -> SPInput {
    let s = sets(r, l, m, 0);
    let t = c_side(r, &s);
    SPInput::onshell(VarSet::new(s.mu_b), VarSet::new(s.lam_b), VarSet::new(s.lam_c), VarSet::new(s.mu_c), &t).unwrap()
}

/// A generic case with every r-value free.
pub fn offshell(r: &mut ChaCha8Rng, l: usize, m: usize) -> SPInput {
    let s = sets(r, l, m, 0);
    let mut t = c_side(r, &s);
    for x in &s.lam_b {
        t.set(RKind::R1, x.clone(), small_nonzero(r));
    }
    for y in &s.mu_b {
        t.set(RKind::R3, y.clone(), small_nonzero(r));
    }
    SPInput::new(VarSet::new(s.mu_b), VarSet::new(s.lam_b), VarSet::new(s.lam_c), VarSet::new(s.mu_c), t).unwrap()
}

/// Generic parameters for a chain of `n` sites; r-values are left empty.
pub fn chain_case(r: &mut ChaCha8Rng, l: usize, m: usize, n: usize) -> (SPInput, ChainSpec) {
    let s = sets(r, l, m, n);
    let chain = ChainSpec::new(s.extra).unwrap();
    let sp = SPInput::new(VarSet::new(s.mu_b), VarSet::new(s.lam_b), VarSet::new(s.lam_c), VarSet::new(s.mu_c), RTable::new()).unwrap();
    (sp, chain)
}

/// All (ℓ,m) with ℓ+m ≤ n.
pub fn shapes(n: usize) -> Vec<(usize, usize)> {
    (0..=n).flat_map(|l| (0..=n - l).map(move |m| (l, m))).collect()
}
