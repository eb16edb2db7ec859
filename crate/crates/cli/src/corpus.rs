//! Seeded random cases.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use su3_bethe::kernel::genericity_check;
use su3_bethe::lattice::MAX_SITES;
use su3_bethe::{Error, RKind, Rat, Result};

use crate::case::CaseFile;

#[derive(Clone, Debug)]
pub struct CorpusSpec {
    pub seed: u64,
    pub count: usize,
    /// Upper bound on ℓ+m; every (ℓ,m) with 1 ≤ ℓ+m ≤ max_lm is drawn uniformly.
    pub max_lm: usize,
    /// Parameters are integers in [−window, window].
    pub window: i64,
    /// Chain sites per case; 0 omits the chain.
    pub sites: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec { seed: 0, count: 10, max_lm: 3, window: 24, sites: 0 }
    }
}

const ATTEMPTS: usize = 10_000;

fn draw(rng: &mut ChaCha8Rng, n: usize, window: i64) -> Result<Vec<Rat>> {
    for _ in 0..ATTEMPTS {
        let v: Vec<Rat> = (0..n).map(|_| Rat::int(rng.gen_range(-window..=window))).collect();
        if genericity_check(&v).is_empty() {
            return Ok(v);
        }
    }
    Err(Error::Genericity(format!("no generic sample of {n} integers in a window of {window}")))
}

fn nonzero(rng: &mut ChaCha8Rng) -> Rat {
    let n = *[-9, -7, -5, -4, -3, -2, -1, 1, 2, 3, 4, 5, 7, 9].choose(rng).expect("nonempty");
    Rat::new(n, rng.gen_range(1..=4))
}

pub fn generate(spec: &CorpusSpec) -> Result<Vec<CaseFile>> {
    if spec.max_lm == 0 {
        return Err(Error::Unsupported("max-lm must be at least 1".into()));
    }
    if spec.sites > MAX_SITES {
        return Err(Error::Unsupported(format!("{} sites (at most {MAX_SITES})", spec.sites)));
    }
    let shapes: Vec<(usize, usize)> = (0..=spec.max_lm).flat_map(|l| (0..=spec.max_lm - l).map(move |m| (l, m))).filter(|&(l, m)| l + m > 0).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    for i in 0..spec.count {
        let (l, m) = *shapes.choose(&mut rng).expect("nonempty");
        let mut p = draw(&mut rng, 2 * (l + m) + spec.sites, spec.window)?;
        let chain = p.split_off(2 * (l + m));
        let mu_c = p.split_off(2 * l + m);
        let lam_c = p.split_off(l + m);
        let lam_b = p.split_off(m);
        let mut c = CaseFile::new(format!("s{}-{i:04}", spec.seed), p, lam_b, lam_c.clone(), mu_c.clone());
        for x in lam_c {
            c = c.with_r(RKind::R1, x, nonzero(&mut rng));
        }
        for y in mu_c {
            c = c.with_r(RKind::R3, y, nonzero(&mut rng));
        }
        if spec.sites > 0 {
            c.chain = Some(chain);
        }
        out.push(c);
    }
    Ok(out)
}
