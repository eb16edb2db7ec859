//! The two multiple-integral formulas for 𝒮_{ℓ,m}, their SU(2)
//! degenerations, the finite recursion, and the infinity limits.
//!
//! Integrals are evaluated as iterated residues at the contour candidate
//! points. The default engine expands the integrand into a
//! [`LaurentSum`]; [`tower`] repeats the computation in nested
//! rational-function fields for cross-checking at small sizes.

pub mod limits;
pub mod recursion;
pub mod tower;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Rat, Ring};
use crate::kernel::{RKind, RTable, VarSet};
use crate::scalar_sum::SPInput;
use crate::slavnov::extended_slavnov;
use crate::symbolic::{af, af_inv, ag, ah, ah_inv, Affine, Algebra, LaurentSum};

/// An integration variable: x_k or y_k, k counted from 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slot {
    X(usize),
    Y(usize),
}

/// Residue candidates of each level.
#[derive(Clone, Debug, PartialEq)]
pub struct ContourSpec {
    pub x: Vec<VarSet>,
    pub y: Vec<VarSet>,
}

impl ContourSpec {
    /// Kind R1: 𝒳_k = λ̄ᶜ ⊕ μ̄ᴮ_k, 𝒴_k = μ̄ᶜ. Kind R3: 𝒳_k = λ̄ᶜ, 𝒴_k = μ̄ᶜ ⊕ λ̄ᴮ_k.
    pub fn new(kind: RKind, s: &SPInput) -> Self {
        let (mut x, mut y) = (Vec::new(), Vec::new());
        match kind {
            RKind::R1 => {
                for k in 0..s.m() {
                    x.push(s.lam_c.oplus(&s.mu_b[..=k]));
                    y.push(s.mu_c.clone());
                }
            }
            RKind::R3 => {
                for k in 0..s.ell() {
                    x.push(s.lam_c.clone());
                    y.push(s.mu_c.oplus(&s.lam_b[..=k]));
                }
            }
        }
        ContourSpec { x, y }
    }

    pub fn candidates(&self, slot: Slot) -> &[Rat] {
        match slot {
            Slot::X(k) => &self.x[k],
            Slot::Y(k) => &self.y[k],
        }
    }
}

#[derive(Clone, Debug)]
pub struct IntegralOptions {
    /// Elimination order, innermost first. Defaults to y₁, x₁, y₂, x₂, …
    pub order: Option<Vec<Slot>>,
    /// Skip candidates where no term of the integrand has a pole.
    pub skip_regular: bool,
    /// Value used for r-factors at candidate points that the formula never
    /// really depends on (r₁ at μ̄ᴮ for kind 1, r₃ at λ̄ᴮ for kind 3).
    pub fill: Rat,
    /// Largest ℓ+m accepted.
    pub max_size: usize,
}

impl Default for IntegralOptions {
    fn default() -> Self {
        IntegralOptions { order: None, skip_regular: true, fill: Rat::zero(), max_size: 4 }
    }
}

/// Work counters of one evaluation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegralStats {
    pub residues: usize,
    pub skipped: usize,
    pub max_terms: usize,
}

pub fn default_order(levels: usize) -> Vec<Slot> {
    (0..levels).flat_map(|k| [Slot::Y(k), Slot::X(k)]).collect()
}

/// Maps each slot to its variable index, which is its elimination position.
#[derive(Clone, Debug)]
pub struct VarMap {
    order: Vec<Slot>,
}

impl VarMap {
    pub fn new(order: Vec<Slot>) -> Self {
        VarMap { order }
    }

    pub fn index(&self, slot: Slot) -> usize {
        self.order.iter().position(|s| *s == slot).expect("slot present in order")
    }

    pub fn var(&self, slot: Slot) -> Affine {
        Affine::var(self.index(slot))
    }

    fn try_var(&self, slot: Slot) -> Option<Affine> {
        self.order.iter().position(|s| *s == slot).map(Affine::var)
    }

    pub fn order(&self) -> &[Slot] {
        &self.order
    }
}

/// A multiset with excluded elements kept as inverse factors.
struct Signed {
    plus: Vec<Affine>,
    minus: Vec<Affine>,
}

fn consts(v: &[Rat]) -> Vec<Affine> {
    v.iter().map(|x| Affine::constant(x.clone())).collect()
}

fn prod_signed<A: Algebra>(set: &Signed, mut fac: impl FnMut(&Affine) -> Result<A>, mut inv: impl FnMut(&Affine) -> Result<A>) -> Result<A> {
    let mut acc = A::one();
    for p in &set.plus {
        acc = acc * fac(p)?;
    }
    for p in &set.minus {
        acc = acc * inv(p)?;
    }
    Ok(acc)
}

fn one() -> Rat {
    Rat::one()
}

/// (a+s)/(b+t) for forms a, b and constant shifts s, t
fn quot<A: Algebra>(num: &Affine, den: &Affine) -> Result<A> {
    Ok(A::affine(num)? * A::inv_affine(den)?)
}

/// β₁(x|X̄,Ȳ) with r₁(x) given.
fn beta1<A: Algebra>(x: &Affine, xs: &Signed, ys: &Signed, r: A) -> Result<A> {
    let m1 = -one();
    let py = prod_signed(
        ys,
        |y| quot(&y.minus(x), &y.minus(x).add_const(&one())),
        |y| quot(&y.minus(x).add_const(&one()), &y.minus(x)),
    )?;
    let px = prod_signed(
        xs,
        |z| quot(&z.minus(x).add_const(&one()), &z.minus(x).add_const(&m1)),
        |z| quot(&z.minus(x).add_const(&m1), &z.minus(x).add_const(&one())),
    )?;
    Ok(A::one() + r * py * px)
}

/// β₃(y|X̄,Ȳ) with r₃(y) given.
fn beta3<A: Algebra>(y: &Affine, xs: &Signed, ys: &Signed, r: A) -> Result<A> {
    let m1 = -one();
    let px = prod_signed(
        xs,
        |z| quot(&y.minus(z), &y.minus(z).add_const(&one())),
        |z| quot(&y.minus(z).add_const(&one()), &y.minus(z)),
    )?;
    let py = prod_signed(
        ys,
        |z| quot(&y.minus(z).add_const(&one()), &y.minus(z).add_const(&m1)),
        |z| quot(&y.minus(z).add_const(&m1), &y.minus(z).add_const(&one())),
    )?;
    Ok(A::one() + r * px * py)
}

/// r-factor at a symbolic variable.
pub type RAt<'a, A> = &'a dyn Fn(RKind, usize) -> Result<A>;

fn level_sets(kind: RKind, s: &SPInput, vm: &VarMap, k: usize) -> (Signed, Signed) {
    let b = match kind {
        RKind::R1 => &s.mu_b[..k],
        RKind::R3 => &s.lam_b[..k],
    };
    let mut xp = consts(&s.lam_c);
    xp.extend(consts(b));
    let mut yp = consts(&s.mu_c);
    yp.extend(consts(b));
    let xm = (0..k).filter_map(|j| vm.try_var(Slot::X(j))).collect();
    let ym = (0..k).filter_map(|j| vm.try_var(Slot::Y(j))).collect();
    (Signed { plus: xp, minus: xm }, Signed { plus: yp, minus: ym })
}

/// Full integrand of the kind-1 (`RKind::R1`, m levels) or kind-3
/// (`RKind::R3`, ℓ levels) formula.
pub fn integrand<A: Algebra>(kind: RKind, s: &SPInput, vm: &VarMap, r_at: RAt<'_, A>) -> Result<A> {
    let n = match kind {
        RKind::R1 => s.m(),
        RKind::R3 => s.ell(),
    };
    let bs = match kind {
        RKind::R1 => &s.mu_b,
        RKind::R3 => &s.lam_b,
    };
    let xs: Vec<Affine> = (0..n).map(|k| vm.var(Slot::X(k))).collect();
    let ys: Vec<Affine> = (0..n).map(|k| vm.var(Slot::Y(k))).collect();
    let mut acc = extended_slavnov::<A>(kind, s, &xs, &ys)?;
    for i in 0..n {
        for j in i + 1..n {
            let d = match kind {
                RKind::R1 => ys[j].minus(&ys[i]),
                RKind::R3 => xs[i].minus(&xs[j]),
            };
            acc = acc * A::affine(&d)?;
        }
    }
    for k in 0..n {
        let (x, y) = (&xs[k], &ys[k]);
        let (xset, yset) = level_sets(kind, s, vm, k);
        let mut fac = ag::<A>(x, y)?;
        fac = fac * prod_signed(&xset, |z| ah::<A>(x, z), |z| ah_inv::<A>(x, z))?;
        fac = fac * prod_signed(&yset, |z| ah::<A>(z, y), |z| ah_inv::<A>(z, y))?;
        let bk = Affine::constant(bs[k].clone());
        let b3 = beta3(y, &xset, &yset, r_at(RKind::R3, vm.index(Slot::Y(k)))?)?;
        let b1 = beta1(x, &xset, &yset, r_at(RKind::R1, vm.index(Slot::X(k)))?)?;
        fac = fac * (b3 * A::affine(&y.minus(&bk))? - b1 * A::affine(&x.minus(&bk))?);
        for b in &bs[..=k] {
            let b = Affine::constant(b.clone());
            fac = fac * ag::<A>(x, &b)? * ag::<A>(&b, y)?;
        }
        acc = acc * fac;
    }
    Ok(acc)
}

/// Which printed form of an SU(2) reduction to assemble.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Su2Form {
    /// Vandermonde and h-factors.
    Expanded,
    /// g- and f-factors only.
    Compact,
}

/// Integrand of the SU(2) reduction: kind R1 needs ℓ = 0 and uses the
/// variables y_k; kind R3 needs m = 0 and uses x_k.
pub fn su2_integrand<A: Algebra>(kind: RKind, form: Su2Form, s: &SPInput, vm: &VarMap, r_at: RAt<'_, A>) -> Result<A> {
    let empty = || Signed { plus: Vec::new(), minus: Vec::new() };
    let mut acc = A::one();
    match kind {
        RKind::R1 => {
            if s.ell() != 0 {
                return Err(Error::CardinalityMismatch("kind 1 reduction needs l = 0".into()));
            }
            let m = s.m();
            let ys: Vec<Affine> = (0..m).map(|k| vm.var(Slot::Y(k))).collect();
            if form == Su2Form::Expanded {
                for i in 0..m {
                    for j in i + 1..m {
                        acc = acc * A::affine(&ys[i].minus(&ys[j]))?;
                    }
                }
                if m % 2 == 1 {
                    acc = -acc;
                }
            }
            for k in 0..m {
                let y = &ys[k];
                let (_, yset) = level_sets(kind, s, vm, k);
                acc = acc * beta3(y, &empty(), &yset, r_at(RKind::R3, vm.index(Slot::Y(k)))?)?;
                match form {
                    Su2Form::Expanded => {
                        acc = acc * prod_signed(&yset, |z| ah::<A>(z, y), |z| ah_inv::<A>(z, y))?;
                        for b in &s.mu_b[..=k] {
                            acc = acc * ag::<A>(&Affine::constant(b.clone()), y)?;
                        }
                        for c in s.mu_c.iter() {
                            acc = acc * ag::<A>(&Affine::constant(c.clone()), y)?;
                        }
                    }
                    Su2Form::Compact => {
                        acc = acc * ag::<A>(y, &Affine::constant(s.mu_b[k].clone()))?;
                        acc = acc * prod_signed(&yset, |z| af::<A>(z, y), |z| af_inv::<A>(z, y))?;
                    }
                }
            }
        }
        RKind::R3 => {
            if s.m() != 0 {
                return Err(Error::CardinalityMismatch("kind 3 reduction needs m = 0".into()));
            }
            let l = s.ell();
            let xs: Vec<Affine> = (0..l).map(|k| vm.var(Slot::X(k))).collect();
            if form == Su2Form::Expanded {
                for i in 0..l {
                    for j in i + 1..l {
                        acc = acc * A::affine(&xs[j].minus(&xs[i]))?;
                    }
                }
                if l % 2 == 1 {
                    acc = -acc;
                }
            }
            for k in 0..l {
                let x = &xs[k];
                let (xset, _) = level_sets(kind, s, vm, k);
                acc = acc * beta1(x, &xset, &empty(), r_at(RKind::R1, vm.index(Slot::X(k)))?)?;
                match form {
                    Su2Form::Expanded => {
                        acc = acc * prod_signed(&xset, |z| ah::<A>(x, z), |z| ah_inv::<A>(x, z))?;
                        for b in &s.lam_b[..=k] {
                            acc = acc * ag::<A>(x, &Affine::constant(b.clone()))?;
                        }
                        for c in s.lam_c.iter() {
                            acc = acc * ag::<A>(x, &Affine::constant(c.clone()))?;
                        }
                    }
                    Su2Form::Compact => {
                        acc = acc * ag::<A>(&Affine::constant(s.lam_b[k].clone()), x)?;
                        acc = acc * prod_signed(&xset, |z| af::<A>(x, z), |z| af_inv::<A>(x, z))?;
                    }
                }
            }
        }
    }
    Ok(acc)
}

/// The r-table with the formally present but irrelevant r-values filled in.
pub fn filled_rtable(kind: RKind, s: &SPInput, fill: &Rat) -> RTable {
    let mut r = s.r.clone();
    match kind {
        RKind::R1 => {
            for p in s.mu_b.iter() {
                r.set_if_absent(RKind::R1, p.clone(), fill.clone());
            }
        }
        RKind::R3 => {
            for p in s.lam_b.iter() {
                r.set_if_absent(RKind::R3, p.clone(), fill.clone());
            }
        }
    }
    r
}

fn check_order(order: &[Slot], slots: &[Slot]) -> Result<()> {
    let mut a = order.to_vec();
    let mut b = slots.to_vec();
    a.sort();
    b.sort();
    if a != b {
        return Err(Error::Unsupported(format!("order {order:?} is not a permutation of {slots:?}")));
    }
    Ok(())
}

/// Sums residues over the candidates of each slot in turn.
pub fn iterate_residues(
    mut expr: LaurentSum,
    order: &[Slot],
    cands: impl Fn(Slot) -> Vec<Rat>,
    r: &RTable,
    skip_regular: bool,
) -> Result<(Rat, IntegralStats)> {
    let mut st = IntegralStats { max_terms: expr.num_terms(), ..Default::default() };
    for (var, slot) in order.iter().enumerate() {
        let mut next = LaurentSum::zero();
        for c in cands(*slot) {
            if skip_regular && !expr.has_pole_at(var, &c) {
                st.skipped += 1;
                continue;
            }
            st.residues += 1;
            next = next + expr.residue(var, &c, r)?;
        }
        expr = next;
        st.max_terms = st.max_terms.max(expr.num_terms());
    }
    Ok((expr.into_constant()?, st))
}

fn marker(kind: RKind, var: usize) -> Result<LaurentSum> {
    Ok(LaurentSum::r_marker(kind, var))
}

fn check_size(s: &SPInput, opts: &IntegralOptions) -> Result<()> {
    if s.ell() + s.m() > opts.max_size {
        return Err(Error::Unsupported(format!("l + m = {} exceeds the limit {}", s.ell() + s.m(), opts.max_size)));
    }
    Ok(())
}

/// 𝒮_{ℓ,m} from the kind-1 or kind-3 multiple integral, with work counters.
pub fn eval_multiple_integral_with(kind: RKind, s: &SPInput, opts: &IntegralOptions) -> Result<(Rat, IntegralStats)> {
    check_size(s, opts)?;
    let n = match kind {
        RKind::R1 => s.m(),
        RKind::R3 => s.ell(),
    };
    let order = opts.order.clone().unwrap_or_else(|| default_order(n));
    check_order(&order, &default_order(n))?;
    let vm = VarMap::new(order.clone());
    let expr = integrand::<LaurentSum>(kind, s, &vm, &marker)?;
    let cs = ContourSpec::new(kind, s);
    let r = filled_rtable(kind, s, &opts.fill);
    let (v, st) = iterate_residues(expr, &order, |sl| cs.candidates(sl).to_vec(), &r, opts.skip_regular)?;
    Ok((orient(kind, n, v), st))
}

/// The x-contours of the kind-3 formula and of its m = 0 reduction are
/// traversed clockwise: as printed they produce (−1)^ℓ 𝒮.
pub fn orientation_sign(kind: RKind, levels: usize) -> Rat {
    match kind {
        RKind::R3 if levels % 2 == 1 => -Rat::one(),
        _ => Rat::one(),
    }
}

fn orient(kind: RKind, levels: usize, v: Rat) -> Rat {
    orientation_sign(kind, levels) * v
}

/// 𝒮_{ℓ,m} from the kind-1 or kind-3 multiple integral.
pub fn eval_multiple_integral(kind: RKind, s: &SPInput) -> Result<Rat> {
    Ok(eval_multiple_integral_with(kind, s, &IntegralOptions::default())?.0)
}

/// The SU(2) reduction of the given kind as an iterated residue sum.
pub fn su2_integral_with(kind: RKind, form: Su2Form, s: &SPInput, opts: &IntegralOptions) -> Result<(Rat, IntegralStats)> {
    check_size(s, opts)?;
    let slots: Vec<Slot> = match kind {
        RKind::R1 => (0..s.m()).map(Slot::Y).collect(),
        RKind::R3 => (0..s.ell()).map(Slot::X).collect(),
    };
    let order = opts.order.clone().unwrap_or_else(|| slots.clone());
    check_order(&order, &slots)?;
    let vm = VarMap::new(order.clone());
    let expr = su2_integrand::<LaurentSum>(kind, form, s, &vm, &marker)?;
    let cands = move |sl: Slot| match sl {
        Slot::X(_) => s.lam_c.0.clone(),
        Slot::Y(_) => s.mu_c.0.clone(),
    };
    let (v, st) = iterate_residues(expr, &order, cands, &s.r, opts.skip_regular)?;
    Ok((orient(kind, slots.len(), v), st))
}

pub fn su2_integral(kind: RKind, s: &SPInput) -> Result<Rat> {
    Ok(su2_integral_with(kind, Su2Form::Compact, s, &IntegralOptions::default())?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::int(n)
    }

    fn std1() -> SPInput {
        let t = RTable::new().with(RKind::R1, r(0), r(5));
        SPInput::onshell(VarSet::empty(), VarSet::ints(&[1]), VarSet::ints(&[0]), VarSet::empty(), &t).unwrap()
    }

    fn std3() -> SPInput {
        let t = RTable::new().with(RKind::R3, r(0), r(3));
        SPInput::onshell(VarSet::ints(&[1]), VarSet::empty(), VarSet::empty(), VarSet::ints(&[0]), &t).unwrap()
    }

    #[test]
    fn examples() {
        let e = SPInput::new(VarSet::empty(), VarSet::empty(), VarSet::empty(), VarSet::empty(), RTable::new()).unwrap();
        assert_eq!(eval_multiple_integral(RKind::R1, &e).unwrap(), r(1));
        assert_eq!(su2_integral(RKind::R1, &e).unwrap(), r(1));
        assert_eq!(eval_multiple_integral(RKind::R1, &std3()).unwrap(), r(-2));
        assert_eq!(eval_multiple_integral(RKind::R3, &std1()).unwrap(), r(4));
        assert_eq!(eval_multiple_integral(RKind::R1, &std1()).unwrap(), r(4));
        assert_eq!(eval_multiple_integral(RKind::R3, &std3()).unwrap(), r(-2));
        assert_eq!(su2_integral(RKind::R1, &std3()).unwrap(), r(-2));
        assert_eq!(su2_integral(RKind::R3, &std1()).unwrap(), r(4));
    }
}
