//! Iterated residues in nested rational-function fields, the reference
//! route for the sparse engine at small sizes.
//!
//! r-factors at symbolic variables cannot live in a tower, so the
//! integrand is assembled once per subset S of them with r = 1 on S and
//! r = 0 elsewhere. Inclusion-exclusion recovers the coefficient G_S of
//! ∏_{v∈S} r(v), and each residue of G_S at v = c picks up r(c).

use crate::error::{Error, Result};
use crate::field::{Field, Rat, RatFunc};
use crate::kernel::{RKind, RTable};
use crate::scalar_sum::SPInput;

use super::{default_order, orientation_sign, filled_rtable, integrand, su2_integrand, ContourSpec, Slot, Su2Form, VarMap};

/// A field whose outermost variable can be residued away down to `Rat`.
pub trait Tower: Field {
    /// Σ over candidate tuples of the iterated residues times the weights,
    /// outermost variable first.
    fn residue_sum(&self, steps: &[Vec<(Rat, Rat)>], skip_regular: bool) -> Result<Rat>;
}

impl Tower for Rat {
    fn residue_sum(&self, steps: &[Vec<(Rat, Rat)>], _: bool) -> Result<Rat> {
        debug_assert!(steps.is_empty());
        Ok(self.clone())
    }
}

impl<K: Tower> Tower for RatFunc<K> {
    fn residue_sum(&self, steps: &[Vec<(Rat, Rat)>], skip_regular: bool) -> Result<Rat> {
        let (first, rest) = steps.split_first().ok_or_else(|| Error::Unsupported("too few residue steps".into()))?;
        let mut acc = K::zero();
        for (c, w) in first {
            if w.is_zero() {
                continue;
            }
            let ck = K::from_rat(c);
            if skip_regular && !self.den().eval(&ck).is_zero() {
                continue;
            }
            acc = acc + self.residue(&ck)? * K::from_rat(w);
        }
        acc.residue_sum(rest, skip_regular)
    }
}

type Assemble<'a, T> = dyn Fn(&VarMap, &dyn Fn(RKind, usize) -> Result<T>) -> Result<T> + 'a;

fn run<T: Tower>(order: &[Slot], cands: &dyn Fn(Slot) -> Vec<Rat>, markers: &[(RKind, usize)], r: &RTable, build: &Assemble<'_, T>, skip: bool) -> Result<Rat> {
    if order.len() != T::DEPTH {
        return Err(Error::Unsupported(format!("{} variables need a tower of that depth, got {}", order.len(), T::DEPTH)));
    }
    let vm = VarMap::new(order.to_vec());
    let nm = markers.len();
    let mut parts: Vec<T> = Vec::with_capacity(1 << nm);
    for mask in 0usize..(1 << nm) {
        let pick = |kind: RKind, var: usize| -> Result<T> {
            let i = markers.iter().position(|&(k, v)| k == kind && v == var).expect("registered marker");
            Ok(if mask & (1 << i) != 0 { T::one() } else { T::zero() })
        };
        parts.push(build(&vm, &pick)?);
    }
    // Möbius inversion over subsets
    for i in 0..nm {
        for mask in 0usize..(1 << nm) {
            if mask & (1 << i) != 0 {
                let lower = parts[mask ^ (1 << i)].clone();
                parts[mask] = parts[mask].clone() - lower;
            }
        }
    }
    let mut total = Rat::zero();
    for (mask, g) in parts.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let mut steps = Vec::with_capacity(order.len());
        for (var, slot) in order.iter().enumerate() {
            let kinds: Vec<RKind> = markers
                .iter()
                .enumerate()
                .filter(|(i, (_, v))| *v == var && mask & (1 << i) != 0)
                .map(|(_, (k, _))| *k)
                .collect();
            let mut step = Vec::new();
            for c in cands(*slot) {
                let mut w = Rat::one();
                for k in &kinds {
                    w = w * r.get(*k, &c)?;
                }
                step.push((c, w));
            }
            steps.push(step);
        }
        total = total + g.residue_sum(&steps, skip)?;
    }
    Ok(total)
}

fn markers_for(order: &[Slot]) -> Vec<(RKind, usize)> {
    order
        .iter()
        .enumerate()
        .map(|(i, s)| match s {
            Slot::X(_) => (RKind::R1, i),
            Slot::Y(_) => (RKind::R3, i),
        })
        .collect()
}

/// The multiple integral of the given kind evaluated in the tower `T`,
/// whose depth must be twice the number of levels.
pub fn eval_multiple_integral_tower<T: Tower>(kind: RKind, s: &SPInput, order: Option<Vec<Slot>>, skip_regular: bool) -> Result<Rat> {
    let n = match kind {
        RKind::R1 => s.m(),
        RKind::R3 => s.ell(),
    };
    let order = order.unwrap_or_else(|| default_order(n));
    let cs = ContourSpec::new(kind, s);
    let r = filled_rtable(kind, s, &Rat::zero());
    let build = |vm: &VarMap, ra: &dyn Fn(RKind, usize) -> Result<T>| integrand::<T>(kind, s, vm, ra);
    let v = run::<T>(&order, &|sl| cs.candidates(sl).to_vec(), &markers_for(&order), &r, &build, skip_regular)?;
    Ok(orientation_sign(kind, n) * v)
}

/// The SU(2) reduction evaluated in the tower `T`.
pub fn su2_integral_tower<T: Tower>(kind: RKind, form: Su2Form, s: &SPInput) -> Result<Rat> {
    let order: Vec<Slot> = match kind {
        RKind::R1 => (0..s.m()).map(Slot::Y).collect(),
        RKind::R3 => (0..s.ell()).map(Slot::X).collect(),
    };
    let cands = |sl: Slot| match sl {
        Slot::X(_) => s.lam_c.0.clone(),
        Slot::Y(_) => s.mu_c.0.clone(),
    };
    let build = |vm: &VarMap, ra: &dyn Fn(RKind, usize) -> Result<T>| su2_integrand::<T>(kind, form, s, vm, ra);
    let v = run::<T>(&order, &cands, &markers_for(&order), &s.r, &build, false)?;
    Ok(orientation_sign(kind, order.len()) * v)
}
