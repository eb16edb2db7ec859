//! The double-partition sum for 𝒮_{ℓ,m}, r-table modifications, and the
//! residue identities of the scalar product.

use crate::error::{Error, Result};
use crate::field::{Field, Rat, RatFunc, Ring};
use crate::kernel::{ensure_generic, f_prod, onshell_rtable, partition_indices, RKind, RTable, VarSet};
use crate::partition_functions::reshetikhin_z;

/// Arguments (μ̄ᴮ, λ̄ᴮ | λ̄ᶜ, μ̄ᶜ) with their r-values.
#[derive(Clone, Debug, PartialEq)]
pub struct SPInput<K = Rat> {
    pub mu_b: VarSet<K>,
    pub lam_b: VarSet<K>,
    pub lam_c: VarSet<K>,
    pub mu_c: VarSet<K>,
    pub r: RTable<K>,
    pub onshell_b: bool,
}

impl<K: Field> SPInput<K> {
    pub fn new(mu_b: VarSet<K>, lam_b: VarSet<K>, lam_c: VarSet<K>, mu_c: VarSet<K>, r: RTable<K>) -> Result<Self> {
        if lam_b.len() != lam_c.len() || mu_b.len() != mu_c.len() {
            return Err(Error::CardinalityMismatch(format!(
                "|lamB| = {}, |lamC| = {}, |muB| = {}, |muC| = {}",
                lam_b.len(),
                lam_c.len(),
                mu_b.len(),
                mu_c.len()
            )));
        }
        Ok(SPInput { mu_b, lam_b, lam_c, mu_c, r, onshell_b: false })
    }

    /// B-side r-values from the Bethe equations, C-side values from `c_side`.
    pub fn onshell(mu_b: VarSet<K>, lam_b: VarSet<K>, lam_c: VarSet<K>, mu_c: VarSet<K>, c_side: &RTable<K>) -> Result<Self> {
        let mut r = c_side.clone();
        r.merge(&onshell_rtable(&lam_b, &mu_b)?);
        let mut s = Self::new(mu_b, lam_b, lam_c, mu_c, r)?;
        s.onshell_b = true;
        Ok(s)
    }

    pub fn ell(&self) -> usize {
        self.lam_b.len()
    }

    pub fn m(&self) -> usize {
        self.mu_b.len()
    }

    pub fn params(&self) -> Vec<K> {
        self.mu_b.oplus(&self.lam_b).oplus(&self.lam_c).oplus(&self.mu_c).0
    }

    pub fn lift<L: Field>(&self, m: impl Fn(&K) -> L + Copy) -> SPInput<L> {
        SPInput {
            mu_b: self.mu_b.map(m),
            lam_b: self.lam_b.map(m),
            lam_c: self.lam_c.map(m),
            mu_c: self.mu_c.map(m),
            r: self.r.lift(m),
            onshell_b: self.onshell_b,
        }
    }
}

impl SPInput<Rat> {
    pub fn check_generic(&self) -> Result<()> {
        ensure_generic(&self.params())
    }
}

fn pick<K: Clone>(s: &[K], idx: &[usize]) -> Vec<K> {
    idx.iter().map(|&i| s[i].clone()).collect()
}

fn r_prod<K: Field>(r: &RTable<K>, kind: RKind, pts: &[K]) -> Result<K> {
    let mut acc = K::one();
    for p in pts {
        acc = acc * r.get(kind, p)?;
    }
    Ok(acc)
}

/// 𝒮_{ℓ,m} from the double-partition sum, prefactors divided out.
pub fn scalar_product_sum<K: Field>(s: &SPInput<K>) -> Result<K> {
    let (l, m) = (s.ell(), s.m());
    if s.lam_c.len() != l || s.mu_c.len() != m {
        return Err(Error::CardinalityMismatch("B and C sets differ in size".into()));
    }
    let (lb, lc, mb, mc) = (&s.lam_b[..], &s.lam_c[..], &s.mu_b[..], &s.mu_c[..]);
    let mut acc = K::zero();
    for kl in 0..=l {
        let lparts = partition_indices(l, kl);
        for km in 0..=m {
            let mparts = partition_indices(m, km);
            for (lci, lcii) in &lparts {
                let (lc1, lc2) = (pick(lc, lci), pick(lc, lcii));
                let rc = r_prod(&s.r, RKind::R1, &lc2)?;
                if rc.is_zero() {
                    continue;
                }
                for (lbi, lbii) in &lparts {
                    let (lb1, lb2) = (pick(lb, lbi), pick(lb, lbii));
                    let rl = rc.clone() * r_prod(&s.r, RKind::R1, &lb1)?;
                    if rl.is_zero() {
                        continue;
                    }
                    let fl = f_prod(&lc1, &lc2)? * f_prod(&lb2, &lb1)?;
                    for (mci, mcii) in &mparts {
                        let (mc1, mc2) = (pick(mc, mci), pick(mc, mcii));
                        for (mbi, mbii) in &mparts {
                            let (mb1, mb2) = (pick(mb, mbi), pick(mb, mbii));
                            let rr = rl.clone() * r_prod(&s.r, RKind::R3, &mb1)? * r_prod(&s.r, RKind::R3, &mc2)?;
                            if rr.is_zero() {
                                continue;
                            }
                            let term = reshetikhin_z(&lb2, &mc1, &lc2, &mb1)?
                                * reshetikhin_z(&lc1, &mb2, &lb1, &mc2)?
                                * fl.clone()
                                * f_prod(&mc2, &mc1)?
                                * f_prod(&mb1, &mb2)?
                                * f_prod(&mb2, &lb2)?
                                * f_prod(&mc1, &lc1)?
                                * rr;
                            acc = acc + term;
                        }
                    }
                }
            }
        }
    }
    let pref = f_prod(mb, lb)? * f_prod(mc, lc)?;
    let inv = pref.inv().ok_or_else(|| Error::ZeroDenominator("f(muB,lamB) f(muC,lamC)".into()))?;
    Ok(acc * inv)
}

fn frac<K: Field>(n: K, d: K, ctx: &str) -> Result<K> {
    Ok(n * d.inv().ok_or_else(|| Error::ZeroDenominator(ctx.to_string()))?)
}

/// Modification of every r-value by a λ (`RKind::R1`) or a μ (`RKind::R3`).
pub fn mod_rtable<K: Field>(kind: RKind, point: &K, r: &RTable<K>) -> Result<RTable<K>> {
    let one = K::one();
    r.try_map(|which, x, v| {
        let p = point.clone();
        let x = x.clone();
        let factor = match (kind, which) {
            // f(λ,x)/f(x,λ) and 1/f(x,λ)
            (RKind::R1, RKind::R1) => -frac(p.clone() - x.clone() + one.clone(), x - p + one.clone(), "mod1 r1")?,
            (RKind::R1, RKind::R3) => frac(x.clone() - p.clone(), x - p + one.clone(), "mod1 r3")?,
            // f(y,μ)/f(μ,y) and 1/f(μ,y)
            (RKind::R3, RKind::R3) => -frac(x.clone() - p.clone() + one.clone(), p - x + one.clone(), "mod3 r3")?,
            (RKind::R3, RKind::R1) => frac(p.clone() - x.clone(), p - x + one.clone(), "mod3 r1")?,
        };
        Ok(v.clone() * factor)
    })
}

/// [`mod_rtable`] without the entries whose modification is singular. A
/// later lookup of a dropped point fails instead of using a wrong value.
pub fn mod_rtable_partial<K: Field>(kind: RKind, point: &K, r: &RTable<K>) -> RTable<K> {
    let mut out = RTable::new();
    for which in [RKind::R1, RKind::R3] {
        for (x, v) in r.entries(which) {
            let single = RTable::new().with(which, x.clone(), v.clone());
            if let Ok(m) = mod_rtable(kind, point, &single) {
                out.merge(&m);
            }
        }
    }
    out
}

type Eps = RatFunc<Rat>;

fn lift_eps(s: &SPInput<Rat>) -> SPInput<Eps> {
    s.lift(Eps::from_rat)
}

fn move_point(s: &mut SPInput<Eps>, kind: RKind, old: &Eps, new: Eps) -> Result<()> {
    let v = s.r.get(kind, old)?;
    s.r.set(kind, new, v);
    Ok(())
}

/// LHS − RHS of the residue identity for λᶜ_ℓ, λᴮ_ℓ → λ (`RKind::R1`)
/// or μᶜ_m, μᴮ_m → μ (`RKind::R3`). The collision point is the B-parameter.
pub fn residue_identity_gap(kind: RKind, s: &SPInput<Rat>) -> Result<Rat> {
    let (l, m) = (s.ell(), s.m());
    let mut e = lift_eps(s);
    match kind {
        RKind::R1 => {
            if l == 0 {
                return Err(Error::CardinalityMismatch("residue in lambda needs l >= 1".into()));
            }
            let lam = s.lam_b[l - 1].clone();
            let moved = Eps::from_rat(&lam) + Eps::t();
            move_point(&mut e, RKind::R1, &Eps::from_rat(&s.lam_c[l - 1]), moved.clone())?;
            e.lam_c.0[l - 1] = moved;
            let lhs = scalar_product_sum(&e)?.residue(&Rat::zero())?;
            let diff = s.r.r1(&lam)? - s.r.r1(&s.lam_c[l - 1])?;
            let pre = f_prod(&s.lam_c[..l - 1], &[lam.clone()])? * f_prod(&s.lam_b[..l - 1], &[lam.clone()])?;
            let reduced = SPInput::new(
                s.mu_b.clone(),
                s.lam_b.prefix(l - 1),
                s.lam_c.prefix(l - 1),
                s.mu_c.clone(),
                mod_rtable(RKind::R1, &lam, &s.r)?,
            )?;
            Ok(lhs - diff * pre * scalar_product_sum(&reduced)?)
        }
        RKind::R3 => {
            if m == 0 {
                return Err(Error::CardinalityMismatch("residue in mu needs m >= 1".into()));
            }
            let mu = s.mu_b[m - 1].clone();
            let moved = Eps::from_rat(&mu) + Eps::t();
            move_point(&mut e, RKind::R3, &Eps::from_rat(&s.mu_c[m - 1]), moved.clone())?;
            e.mu_c.0[m - 1] = moved;
            let lhs = scalar_product_sum(&e)?.residue(&Rat::zero())?;
            let diff = s.r.r3(&s.mu_c[m - 1])? - s.r.r3(&mu)?;
            let pre = f_prod(&[mu.clone()], &s.mu_c[..m - 1])? * f_prod(&[mu.clone()], &s.mu_b[..m - 1])?;
            let reduced = SPInput::new(
                s.mu_b.prefix(m - 1),
                s.lam_b.clone(),
                s.lam_c.clone(),
                s.mu_c.prefix(m - 1),
                mod_rtable(RKind::R3, &mu, &s.r)?,
            )?;
            Ok(lhs - diff * pre * scalar_product_sum(&reduced)?)
        }
    }
}

/// Residue of 𝒮 as λᶜ_i → μᴮ_j (`RKind::R1`) or μᶜ_j → λᴮ_i (`RKind::R3`).
pub fn collision_residue(kind: RKind, i: usize, j: usize, s: &SPInput<Rat>) -> Result<Rat> {
    let mut e = lift_eps(s);
    match kind {
        RKind::R1 => {
            let moved = Eps::from_rat(&s.mu_b[j]) + Eps::t();
            move_point(&mut e, RKind::R1, &Eps::from_rat(&s.lam_c[i]), moved.clone())?;
            e.lam_c.0[i] = moved;
        }
        RKind::R3 => {
            let moved = Eps::from_rat(&s.lam_b[i]) + Eps::t();
            move_point(&mut e, RKind::R3, &Eps::from_rat(&s.mu_c[j]), moved.clone())?;
            e.mu_c.0[j] = moved;
        }
    }
    scalar_product_sum(&e)?.residue(&Rat::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::int(n)
    }

    #[test]
    fn sum_examples() {
        let empty = SPInput::<Rat>::new(VarSet::empty(), VarSet::empty(), VarSet::empty(), VarSet::empty(), RTable::new()).unwrap();
        assert_eq!(scalar_product_sum(&empty).unwrap(), r(1));

        let t = RTable::new().with(RKind::R1, r(0), r(5)).with(RKind::R1, r(1), r(2));
        let s = SPInput::new(VarSet::empty(), VarSet::ints(&[1]), VarSet::ints(&[0]), VarSet::empty(), t).unwrap();
        assert_eq!(scalar_product_sum(&s).unwrap(), r(3));

        let t = RTable::new().with(RKind::R3, r(0), r(3)).with(RKind::R3, r(1), r(1));
        let s = SPInput::new(VarSet::ints(&[1]), VarSet::empty(), VarSet::empty(), VarSet::ints(&[0]), t).unwrap();
        assert_eq!(scalar_product_sum(&s).unwrap(), r(-2));
    }

    #[test]
    fn mod_examples() {
        let t = RTable::new().with(RKind::R1, r(0), r(5));
        assert_eq!(mod_rtable(RKind::R3, &r(5), &t).unwrap().r1(&r(0)).unwrap(), Rat::new(25, 6));
        let t = RTable::new().with(RKind::R3, r(0), r(2));
        assert_eq!(mod_rtable(RKind::R1, &r(5), &t).unwrap().r3(&r(0)).unwrap(), Rat::new(5, 2));
        assert!(mod_rtable(RKind::R1, &r(5), &RTable::<Rat>::new()).unwrap().is_empty());
    }
}
