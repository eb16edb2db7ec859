//! Factorization of the scalar product when one family of B-parameters goes to infinity.
//!
//! Limits are taken one B-parameter at a time, each as lim t·F(t). The
//! innermost limit is read off a univariate rational function; outer limits
//! act on rational functions rebuilt from exact samples of the inner ones.
//! A tower route computes the same limits at small sizes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Rat, RatFunc};
use crate::kernel::{RKind, RTable, VarSet};
use crate::scalar_sum::{scalar_product_sum, SPInput};
use crate::slavnov::{slavnov_det, slavnov_det_sets};

/// Which family of B-parameters is sent to infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitKind {
    MuBToInf,
    LamBToInf,
}

/// Order in which the sequential limits are taken.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LimitOrder {
    /// The last parameter first.
    #[default]
    LastFirst,
    FirstFirst,
}

/// Both sides of a factorization check, plus the raw sequential limits
/// that fix the normalization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitCheck {
    pub kind: LimitKind,
    /// Number of parameters sent to infinity.
    pub n: usize,
    /// lim t₁⋯t_n·𝒮, without the 1/n! factor.
    pub lhs_sequential: Rat,
    /// The same limit of the modified Slavnov determinant.
    pub modified_sequential: Rat,
    /// The finite Slavnov factor.
    pub slavnov: Rat,
    pub lhs: Rat,
    pub rhs: Rat,
}

impl LimitCheck {
    pub fn passed(&self) -> bool {
        self.lhs == self.rhs
    }

    /// Whether lhs = rhs also holds with the 1/n! dropped from the left side
    /// only. Agreement of both conventions is only possible when n ≤ 1 or the
    /// product vanishes.
    pub fn unnormalized_agrees(&self) -> bool {
        self.lhs_sequential == self.rhs
    }
}

/// Repeated limits lim t·F(t) down a tower.
pub trait Peel: Field {
    fn peel(&self) -> Result<Rat>;
}

impl Peel for Rat {
    fn peel(&self) -> Result<Rat> {
        Ok(self.clone())
    }
}

impl<K: Peel> Peel for RatFunc<K> {
    fn peel(&self) -> Result<Rat> {
        self.limit_scaled_infinity(1)?.peel()
    }
}

fn factorial(n: usize) -> Rat {
    (1..=n as i64).fold(Rat::one(), |a, k| a * Rat::int(k))
}

fn symbols<T: Field>(n: usize, order: LimitOrder) -> VarSet<T> {
    // the outermost level is peeled first
    VarSet::new(
        (0..n)
            .map(|k| match order {
                LimitOrder::LastFirst => T::var(k),
                LimitOrder::FirstFirst => T::var(n - 1 - k),
            })
            .collect(),
    )
}

fn c_side(s: &SPInput<Rat>) -> RTable<Rat> {
    let mut t = RTable::new();
    for p in s.lam_c.iter() {
        if let Ok(v) = s.r.get(RKind::R1, p) {
            t.set(RKind::R1, p.clone(), v);
        }
    }
    for p in s.mu_c.iter() {
        if let Ok(v) = s.r.get(RKind::R3, p) {
            t.set(RKind::R3, p.clone(), v);
        }
    }
    t
}

fn sides<T: Peel>(kind: LimitKind, s: &SPInput<Rat>, order: LimitOrder) -> Result<(Rat, Rat)> {
    let lift = |x: &Rat| T::from_rat(x);
    let c = c_side(s).lift(lift);
    let (lc, mc) = (s.lam_c.map(lift), s.mu_c.map(lift));
    match kind {
        LimitKind::MuBToInf => {
            let mb = symbols::<T>(s.m(), order);
            let full = SPInput::onshell(mb.clone(), s.lam_b.map(lift), lc.clone(), mc.clone(), &c)?;
            let lhs = scalar_product_sum(&full)?.peel()?;
            let modified = slavnov_det_sets(RKind::R3, &mb, &lc, &mc, &c)?.peel()?;
            Ok((lhs, modified))
        }
        LimitKind::LamBToInf => {
            let lb = symbols::<T>(s.ell(), order);
            let full = SPInput::onshell(s.mu_b.map(lift), lb.clone(), lc.clone(), mc.clone(), &c)?;
            let lhs = scalar_product_sum(&full)?.peel()?;
            let modified = slavnov_det_sets(RKind::R1, &mc, &lb, &lc, &c)?.peel()?;
            Ok((lhs, modified))
        }
    }
}

type T1 = RatFunc<Rat>;
type T2 = RatFunc<T1>;

/// Builds a rational function of one variable from exact samples by Thiele
/// interpolation. Sampling stops once the interpolant has predicted
/// `CONFIRM` further points in a row; sample points where `f` fails are skipped.
pub fn reconstruct(f: impl FnMut(&Rat) -> Result<Rat>) -> Result<RatFunc<Rat>> {
    reconstruct_salted(0, f)
}

/// [`reconstruct`] with a sample sequence shifted by `salt`, so that nested
/// reconstructions never sample two variables at the same point.
pub fn reconstruct_salted(salt: usize, mut f: impl FnMut(&Rat) -> Result<Rat>) -> Result<RatFunc<Rat>> {
    const CONFIRM: usize = 3;
    const MAX_POINTS: i64 = 400;
    let mut xs: Vec<Rat> = Vec::new();
    let mut a: Vec<Rat> = Vec::new();
    let mut confirmed = 0;
    for i in 0..MAX_POINTS {
        let x = Rat::new(53 + 11 * i, 3) + Rat::new(i * i, 17) + Rat::new(salt as i64 * 7, 19);
        let y = match f(&x) {
            Ok(y) => y,
            Err(
                Error::ZeroDenominator(_)
                | Error::DivergentLimit { .. }
                | Error::PoleOrder { .. }
                | Error::VandermondeZero(_)
                | Error::Genericity(_),
            ) => continue,
            Err(e) => return Err(e),
        };
        if !a.is_empty() && thiele_eval(&xs, &a, &x) == Some(y.clone()) {
            confirmed += 1;
            if confirmed == CONFIRM {
                return thiele_symbolic(&xs, &a);
            }
            continue;
        }
        confirmed = 0;
        let mut d = y;
        let mut ok = true;
        for j in 0..a.len() {
            match (d.clone() - a[j].clone()).checked_inv() {
                Some(inv) => d = (x.clone() - xs[j].clone()) * inv,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            xs.push(x);
            a.push(d);
        }
    }
    Err(Error::Unsupported(format!("rational reconstruction did not settle within {MAX_POINTS} samples")))
}

fn thiele_eval(xs: &[Rat], a: &[Rat], x: &Rat) -> Option<Rat> {
    let n = a.len();
    let mut v = a[n - 1].clone();
    for j in (0..n - 1).rev() {
        v = a[j].clone() + (x.clone() - xs[j].clone()) * v.checked_inv()?;
    }
    Some(v)
}

fn thiele_symbolic(xs: &[Rat], a: &[Rat]) -> Result<RatFunc<Rat>> {
    let n = a.len();
    let t = RatFunc::<Rat>::t();
    let mut v = RatFunc::constant(a[n - 1].clone());
    for j in (0..n - 1).rev() {
        let inv = v.inv().ok_or_else(|| Error::ZeroDenominator("continued fraction".into()))?;
        v = RatFunc::constant(a[j].clone()) + (t.clone() - RatFunc::constant(xs[j].clone())) * inv;
    }
    Ok(v)
}

/// Evaluates F with one parameter symbolic and the others fixed.
type Slice<'a> = &'a dyn Fn(usize, &[Option<Rat>]) -> Result<RatFunc<Rat>>;

/// lim over `peel[n-1]` of … lim over `peel[0]` of (∏ t)·F, peel[0] first.
fn nested(eval: Slice, peel: &[usize], vals: &mut Vec<Option<Rat>>, j: usize) -> Result<Rat> {
    if j == 0 {
        return eval(peel[0], vals)?.limit_scaled_infinity(1);
    }
    let g = reconstruct_salted(j, |x| {
        vals[peel[j]] = Some(x.clone());
        let r = nested(eval, peel, vals, j - 1);
        vals[peel[j]] = None;
        r
    })?;
    g.limit_scaled_infinity(1)
}

fn peel_order(n: usize, order: LimitOrder) -> Vec<usize> {
    match order {
        LimitOrder::LastFirst => (0..n).rev().collect(),
        LimitOrder::FirstFirst => (0..n).collect(),
    }
}

fn slice_vars(sym: usize, vals: &[Option<Rat>]) -> VarSet<T1> {
    VarSet::new(
        vals.iter()
            .enumerate()
            .map(|(k, v)| match v {
                Some(v) if k != sym => T1::constant(v.clone()),
                _ => T1::t(),
            })
            .collect(),
    )
}

fn sliced(kind: LimitKind, s: &SPInput<Rat>, modified: bool, sym: usize, vals: &[Option<Rat>]) -> Result<T1> {
    let lift = |x: &Rat| T1::constant(x.clone());
    let c = c_side(s).lift(lift);
    let (lc, mc) = (s.lam_c.map(lift), s.mu_c.map(lift));
    let b = slice_vars(sym, vals);
    match (kind, modified) {
        (LimitKind::MuBToInf, false) => scalar_product_sum(&SPInput::onshell(b, s.lam_b.map(lift), lc, mc, &c)?),
        (LimitKind::LamBToInf, false) => scalar_product_sum(&SPInput::onshell(s.mu_b.map(lift), b, lc, mc, &c)?),
        (LimitKind::MuBToInf, true) => slavnov_det_sets(RKind::R3, &b, &lc, &mc, &c),
        (LimitKind::LamBToInf, true) => slavnov_det_sets(RKind::R1, &mc, &b, &lc, &c),
    }
}

fn family_size(kind: LimitKind, s: &SPInput<Rat>) -> usize {
    match kind {
        LimitKind::MuBToInf => s.m(),
        LimitKind::LamBToInf => s.ell(),
    }
}

/// The raw sequential limits (of 𝒮 and of the modified Slavnov determinant)
/// in the given order. One parameter is symbolic at a time; the outer limits
/// act on rational functions rebuilt from exact samples.
pub fn sequential_limits(kind: LimitKind, s: &SPInput<Rat>, order: LimitOrder) -> Result<(Rat, Rat)> {
    let n = family_size(kind, s);
    if n == 0 {
        return sides::<Rat>(kind, s, order);
    }
    let peel = peel_order(n, order);
    let mut out = Vec::with_capacity(2);
    for modified in [false, true] {
        let eval = |sym: usize, vals: &[Option<Rat>]| sliced(kind, s, modified, sym, vals);
        out.push(nested(&eval, &peel, &mut vec![None; n], n - 1)?);
    }
    let modified = out.pop().expect("two limits");
    Ok((out.pop().expect("two limits"), modified))
}

/// [`sequential_limits`] computed entirely in a function-field tower.
/// Only practical for up to two parameters at small sizes.
pub fn sequential_limits_tower(kind: LimitKind, s: &SPInput<Rat>, order: LimitOrder) -> Result<(Rat, Rat)> {
    match family_size(kind, s) {
        0 => sides::<Rat>(kind, s, order),
        1 => sides::<T1>(kind, s, order),
        2 => sides::<T2>(kind, s, order),
        n => Err(Error::Unsupported(format!("{n} parameters in a tower (at most 2)"))),
    }
}

/// Checks 𝒮 = (finite Slavnov) × (modified Slavnov at infinity) with the
/// 1/n! normalization on both limits.
pub fn infinity_limit_check_with(kind: LimitKind, s: &SPInput<Rat>, order: LimitOrder) -> Result<LimitCheck> {
    s.check_generic()?;
    let (lhs_sequential, modified_sequential) = sequential_limits(kind, s, order)?;
    let c = c_side(s);
    let (n, slavnov) = match kind {
        LimitKind::MuBToInf => {
            let t = SPInput::onshell(VarSet::empty(), s.lam_b.clone(), s.lam_c.clone(), VarSet::empty(), &c)?;
            (s.m(), slavnov_det(RKind::R1, &t)?)
        }
        LimitKind::LamBToInf => {
            let t = SPInput::onshell(s.mu_b.clone(), VarSet::empty(), VarSet::empty(), s.mu_c.clone(), &c)?;
            (s.ell(), slavnov_det(RKind::R3, &t)?)
        }
    };
    let nf = factorial(n);
    Ok(LimitCheck {
        kind,
        n,
        lhs: lhs_sequential.clone() / nf.clone(),
        rhs: slavnov.clone() * modified_sequential.clone() / nf,
        lhs_sequential,
        modified_sequential,
        slavnov,
    })
}

/// (lhs, rhs) of the factorization in the given limit.
pub fn infinity_limit_check(kind: LimitKind, s: &SPInput<Rat>) -> Result<(Rat, Rat)> {
    let c = infinity_limit_check_with(kind, s, LimitOrder::default())?;
    Ok((c.lhs, c.rhs))
}
