//! Finite recursion in ℓ and m.
//!
//! Each step removes the last B-parameter of one family; the removed point
//! joins the C-side of the other family and every r-value is modified by it.
//! The modified tables still satisfy the Bethe equations on the B-side.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Rat;
use crate::kernel::{beta, f, f_prod, g, RKind, RTable, VarSet};
use crate::scalar_sum::{mod_rtable_partial, SPInput};
use crate::slavnov::slavnov_det;

/// Which family is reduced first.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecOrder {
    /// Reduce m to 0, then use the Slavnov determinant in λ.
    #[default]
    MFirst,
    /// Reduce ℓ to 0, then use the Slavnov determinant in μ.
    LFirst,
    /// Reduce m, then ℓ, down to 𝒮_{0,0} = 1.
    Full,
}

fn prod_except(n: usize, skip: usize, mut term: impl FnMut(usize) -> Result<Rat>) -> Result<Rat> {
    let mut acc = Rat::one();
    for k in (0..n).filter(|&k| k != skip) {
        acc = acc * term(k)?;
    }
    Ok(acc)
}

fn sub(mu_b: VarSet, lam_b: VarSet, lam_c: VarSet, mu_c: VarSet, r: &RTable) -> Result<SPInput> {
    let mut s = SPInput::new(mu_b, lam_b, lam_c, mu_c, r.clone())?;
    s.onshell_b = true;
    Ok(s)
}

/// One step of the recursion that removes λᴮ_ℓ.
pub fn step_l(s: &SPInput, next: &dyn Fn(&SPInput) -> Result<Rat>) -> Result<Rat> {
    let (l, m) = (s.ell(), s.m());
    if l == 0 {
        return Err(Error::CardinalityMismatch("no lambda to remove".into()));
    }
    let (lc, mc) = (&s.lam_c, &s.mu_c);
    let x = s.lam_b[l - 1].clone();
    let lam_b = s.lam_b.prefix(l - 1);
    let mut r = s.r.clone();
    r.set_if_absent(RKind::R3, x.clone(), Rat::zero());
    let r = mod_rtable_partial(RKind::R1, &x, &r);
    let mut acc = Rat::zero();
    for i in 0..l {
        let common = prod_except(l, i, |k| f(&lc[k], &x))? * prod_except(l, i, |k| f(&lc[i], &lc[k]))?;
        let b1 = beta(RKind::R1, &lc[i], lc, mc, &s.r)?;
        for j in 0..m {
            let b3 = beta(RKind::R3, &mc[j], lc, mc, &s.r)?;
            let coeff = g(&mc[j], &lc[i])?
                * common.clone()
                * prod_except(m, j, |k| f(&mc[k], &mc[j]))?
                * (g(&mc[j], &x)? * b1.clone() - g(&lc[i], &x)? * b3);
            if coeff.is_zero() {
                continue;
            }
            let t = sub(s.mu_b.clone(), lam_b.clone(), lc.hat(i), mc.hat(j).with(x.clone()), &r)?;
            acc = acc + coeff * next(&t)?;
        }
        let coeff = f_prod(mc, std::slice::from_ref(&x))? * common * g(&lc[i], &x)? * b1;
        if !coeff.is_zero() {
            let t = sub(s.mu_b.clone(), lam_b.clone(), lc.hat(i), mc.clone(), &r)?;
            acc = acc + coeff * next(&t)?;
        }
    }
    Ok(acc)
}

/// One step of the recursion that removes μᴮ_m.
pub fn step_m(s: &SPInput, next: &dyn Fn(&SPInput) -> Result<Rat>) -> Result<Rat> {
    let (l, m) = (s.ell(), s.m());
    if m == 0 {
        return Err(Error::CardinalityMismatch("no mu to remove".into()));
    }
    let (lc, mc) = (&s.lam_c, &s.mu_c);
    let y = s.mu_b[m - 1].clone();
    let mu_b = s.mu_b.prefix(m - 1);
    let mut r = s.r.clone();
    r.set_if_absent(RKind::R1, y.clone(), Rat::zero());
    let r = mod_rtable_partial(RKind::R3, &y, &r);
    let mut acc = Rat::zero();
    for j in 0..m {
        let common = prod_except(m, j, |k| f(&y, &mc[k]))? * prod_except(m, j, |k| f(&mc[k], &mc[j]))?;
        let b3 = beta(RKind::R3, &mc[j], lc, mc, &s.r)?;
        for i in 0..l {
            let b1 = beta(RKind::R1, &lc[i], lc, mc, &s.r)?;
            let coeff = g(&mc[j], &lc[i])?
                * common.clone()
                * prod_except(l, i, |k| f(&lc[i], &lc[k]))?
                * (g(&mc[j], &y)? * b1 - g(&lc[i], &y)? * b3.clone());
            if coeff.is_zero() {
                continue;
            }
            let t = sub(mu_b.clone(), s.lam_b.clone(), lc.hat(i).with(y.clone()), mc.hat(j), &r)?;
            acc = acc + coeff * next(&t)?;
        }
        let coeff = f_prod(std::slice::from_ref(&y), lc)? * common * g(&mc[j], &y)? * b3;
        if !coeff.is_zero() {
            let t = sub(mu_b.clone(), s.lam_b.clone(), lc.clone(), mc.hat(j), &r)?;
            acc = acc - coeff * next(&t)?;
        }
    }
    Ok(acc)
}

fn descend(order: RecOrder, s: &SPInput) -> Result<Rat> {
    let rec = |t: &SPInput| descend(order, t);
    match order {
        RecOrder::MFirst if s.m() == 0 => slavnov_det(RKind::R1, s),
        RecOrder::LFirst if s.ell() == 0 => slavnov_det(RKind::R3, s),
        RecOrder::MFirst => step_m(s, &rec),
        RecOrder::LFirst => step_l(s, &rec),
        RecOrder::Full if s.m() > 0 => step_m(s, &rec),
        RecOrder::Full if s.ell() > 0 => step_l(s, &rec),
        RecOrder::Full => Ok(Rat::one()),
    }
}

/// 𝒮_{ℓ,m} by the finite recursion; the B-side must be on-shell.
pub fn eval_recursion(order: RecOrder, s: &SPInput) -> Result<Rat> {
    descend(order, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_case() {
        let t = RTable::new().with(RKind::R1, Rat::int(0), Rat::int(5));
        let s = SPInput::onshell(VarSet::empty(), VarSet::ints(&[1]), VarSet::ints(&[0]), VarSet::empty(), &t).unwrap();
        for o in [RecOrder::MFirst, RecOrder::LFirst, RecOrder::Full] {
            assert_eq!(eval_recursion(o, &s).unwrap(), Rat::int(4));
        }
    }
}
