//! Elementary functions f, g, h, parameter sets, r-tables and the
//! Bethe-equation right-hand sides.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fgh {
    F,
    G,
    H,
}

/// f(x,y) = (x−y+1)/(x−y)
pub fn f<K: Field>(x: &K, y: &K) -> Result<K> {
    fgh1(Fgh::F, x, y)
}

/// g(x,y) = 1/(x−y)
pub fn g<K: Field>(x: &K, y: &K) -> Result<K> {
    fgh1(Fgh::G, x, y)
}

/// h(x,y) = x−y+1
pub fn h<K: Field>(x: &K, y: &K) -> Result<K> {
    fgh1(Fgh::H, x, y)
}

fn fgh1<K: Field>(kind: Fgh, x: &K, y: &K) -> Result<K> {
    let d = x.clone() - y.clone();
    let zero_den = || Error::ZeroDenominator(format!("{kind:?}({x}, {y})"));
    match kind {
        Fgh::H => Ok(d + K::one()),
        Fgh::G => d.inv().ok_or_else(zero_den),
        Fgh::F => {
            let i = d.inv().ok_or_else(zero_den)?;
            Ok((d + K::one()) * i)
        }
    }
}

/// Product of `kind(x, y)` over all pairs; empty sets give 1.
pub fn fgh<K: Field>(kind: Fgh, xs: &[K], ys: &[K]) -> Result<K> {
    let mut acc = K::one();
    for x in xs {
        for y in ys {
            acc = acc * fgh1(kind, x, y)?;
        }
    }
    Ok(acc)
}

pub fn f_prod<K: Field>(xs: &[K], ys: &[K]) -> Result<K> {
    fgh(Fgh::F, xs, ys)
}

pub fn g_prod<K: Field>(xs: &[K], ys: &[K]) -> Result<K> {
    fgh(Fgh::G, xs, ys)
}

pub fn h_prod<K: Field>(xs: &[K], ys: &[K]) -> Result<K> {
    fgh(Fgh::H, xs, ys)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// ∏_{i<j} (x_i − x_j)
    Right,
    /// ∏_{i<j} (x_j − x_i)
    Left,
}

pub fn vandermonde<K: Field>(o: Orientation, xs: &[K]) -> K {
    let mut acc = K::one();
    for (i, j) in (0..xs.len()).tuple_combinations() {
        let d = match o {
            Orientation::Right => xs[i].clone() - xs[j].clone(),
            Orientation::Left => xs[j].clone() - xs[i].clone(),
        };
        acc = acc * d;
    }
    acc
}

/// Ordered parameter list; formulas are symmetric in it but order is kept
/// so symmetry can be tested.
#[derive(Clone, Debug, PartialEq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VarSet<K = Rat>(pub Vec<K>);

impl<K: Field> VarSet<K> {
    pub fn new(v: Vec<K>) -> Self {
        VarSet(v)
    }

    pub fn empty() -> Self {
        VarSet(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[K] {
        &self.0
    }

    /// x̄ ⊕ ȳ
    pub fn oplus(&self, o: &[K]) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(o);
        VarSet(v)
    }

    pub fn with(&self, x: K) -> Self {
        let mut v = self.0.clone();
        v.push(x);
        VarSet(v)
    }

    /// x̄ ⊖ ȳ, removing the last occurrence of each element of ȳ.
    pub fn ominus(&self, o: &[K]) -> Result<Self> {
        let mut v = self.0.clone();
        for y in o {
            let pos = v.iter().rposition(|x| x == y).ok_or_else(|| Error::NotInSet(y.to_string()))?;
            v.remove(pos);
        }
        Ok(VarSet(v))
    }

    /// ŵ_i: the set without its i-th element (0-based).
    pub fn hat(&self, i: usize) -> Self {
        let mut v = self.0.clone();
        v.remove(i);
        VarSet(v)
    }

    /// The first k elements, x̄_k.
    pub fn prefix(&self, k: usize) -> Self {
        VarSet(self.0[..k].to_vec())
    }

    pub fn map<L: Field>(&self, m: impl Fn(&K) -> L) -> VarSet<L> {
        VarSet(self.0.iter().map(m).collect())
    }
}

impl<K> std::ops::Deref for VarSet<K> {
    type Target = [K];
    fn deref(&self) -> &[K] {
        &self.0
    }
}

impl VarSet<Rat> {
    pub fn ints(v: &[i64]) -> Self {
        VarSet(v.iter().map(|&x| Rat::int(x)).collect())
    }
}

/// Index pairs (I, II) for every split of `n` elements with |I| = `size_i`.
pub fn partition_indices(n: usize, size_i: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    if size_i > n {
        return Vec::new();
    }
    (0..n)
        .combinations(size_i)
        .map(|i| {
            let ii = (0..n).filter(|k| !i.contains(k)).collect();
            (i, ii)
        })
        .collect()
}

/// All splits s̄ = s̄_I ⊕ s̄_II with |s̄_I| = `size_i`, each exactly once.
pub fn partitions<T: Clone>(s: &[T], size_i: usize) -> Vec<(Vec<T>, Vec<T>)> {
    partition_indices(s.len(), size_i)
        .into_iter()
        .map(|(i, ii)| (i.iter().map(|&k| s[k].clone()).collect(), ii.iter().map(|&k| s[k].clone()).collect()))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RKind {
    R1,
    R3,
}

impl RKind {
    pub fn index(self) -> u8 {
        match self {
            RKind::R1 => 1,
            RKind::R3 => 3,
        }
    }
}

impl fmt::Display for RKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.index())
    }
}

/// Point values of r₁ and r₃. Lookups of unregistered points fail.
#[derive(Clone, Debug, PartialEq)]
pub struct RTable<K = Rat> {
    r1: Vec<(K, K)>,
    r3: Vec<(K, K)>,
}

impl<K: Field> Default for RTable<K> {
    fn default() -> Self {
        Self::new()
    }
}

impl<K: Field> RTable<K> {
    pub fn new() -> Self {
        RTable { r1: Vec::new(), r3: Vec::new() }
    }

    fn slot(&self, kind: RKind) -> &Vec<(K, K)> {
        match kind {
            RKind::R1 => &self.r1,
            RKind::R3 => &self.r3,
        }
    }

    fn slot_mut(&mut self, kind: RKind) -> &mut Vec<(K, K)> {
        match kind {
            RKind::R1 => &mut self.r1,
            RKind::R3 => &mut self.r3,
        }
    }

    /// Inserts or overwrites.
    pub fn set(&mut self, kind: RKind, point: K, value: K) {
        let s = self.slot_mut(kind);
        match s.iter_mut().find(|(p, _)| *p == point) {
            Some(e) => e.1 = value,
            None => s.push((point, value)),
        }
    }

    pub fn with(mut self, kind: RKind, point: K, value: K) -> Self {
        self.set(kind, point, value);
        self
    }

    pub fn set_if_absent(&mut self, kind: RKind, point: K, value: K) {
        if !self.contains(kind, &point) {
            self.slot_mut(kind).push((point, value));
        }
    }

    pub fn contains(&self, kind: RKind, point: &K) -> bool {
        self.slot(kind).iter().any(|(p, _)| p == point)
    }

    pub fn get(&self, kind: RKind, point: &K) -> Result<K> {
        self.slot(kind)
            .iter()
            .find(|(p, _)| p == point)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::MissingRValue { kind: kind.index(), point: point.to_string() })
    }

    pub fn r1(&self, point: &K) -> Result<K> {
        self.get(RKind::R1, point)
    }

    pub fn r3(&self, point: &K) -> Result<K> {
        self.get(RKind::R3, point)
    }

    pub fn entries(&self, kind: RKind) -> &[(K, K)] {
        self.slot(kind)
    }

    pub fn is_empty(&self) -> bool {
        self.r1.is_empty() && self.r3.is_empty()
    }

    /// Copies every entry of `o` into this table (overwriting).
    pub fn merge(&mut self, o: &RTable<K>) {
        for kind in [RKind::R1, RKind::R3] {
            for (p, v) in o.slot(kind) {
                self.set(kind, p.clone(), v.clone());
            }
        }
    }

    /// Applies `m(kind, point, value)` to every entry.
    pub fn try_map(&self, m: impl Fn(RKind, &K, &K) -> Result<K>) -> Result<Self> {
        let mut out = Self::new();
        for kind in [RKind::R1, RKind::R3] {
            for (p, v) in self.slot(kind) {
                out.slot_mut(kind).push((p.clone(), m(kind, p, v)?));
            }
        }
        Ok(out)
    }

    pub fn lift<L: Field>(&self, m: impl Fn(&K) -> L) -> RTable<L> {
        RTable {
            r1: self.r1.iter().map(|(p, v)| (m(p), m(v))).collect(),
            r3: self.r3.iter().map(|(p, v)| (m(p), m(v))).collect(),
        }
    }
}

fn ratio<K: Field>(n: K, d: K, what: impl Fn() -> String) -> Result<K> {
    let i = d.inv().ok_or_else(|| Error::ZeroDenominator(what()))?;
    Ok(n * i)
}

/// β₁(ν|λ̄,μ̄) (`kind` R1) or β₃(ν|λ̄,μ̄) (`kind` R3).
pub fn beta<K: Field>(kind: RKind, nu: &K, lam: &[K], mu: &[K], r: &RTable<K>) -> Result<K> {
    let rv = r.get(kind, nu)?;
    beta_with(kind, nu, lam, mu, rv)
}

/// β with an explicitly supplied r-value at ν.
pub fn beta_with<K: Field>(kind: RKind, nu: &K, lam: &[K], mu: &[K], rv: K) -> Result<K> {
    if rv.is_zero() {
        return Ok(K::one());
    }
    let one = K::one();
    let mut acc = rv;
    let ctx = || format!("beta{}({nu})", kind.index());
    match kind {
        RKind::R1 => {
            for m in mu {
                acc = acc * ratio(m.clone() - nu.clone(), m.clone() - nu.clone() + one.clone(), ctx)?;
            }
            for l in lam {
                acc = acc
                    * ratio(l.clone() - nu.clone() + one.clone(), l.clone() - nu.clone() - one.clone(), ctx)?;
            }
        }
        RKind::R3 => {
            for l in lam {
                acc = acc * ratio(nu.clone() - l.clone(), nu.clone() - l.clone() + one.clone(), ctx)?;
            }
            for m in mu {
                acc = acc
                    * ratio(nu.clone() - m.clone() + one.clone(), nu.clone() - m.clone() - one.clone(), ctx)?;
            }
        }
    }
    Ok(one + acc)
}

/// r₁(λ_i) and r₃(μ_j) from the Bethe equations (products include k = i, j).
pub fn onshell_rtable<K: Field>(lam: &[K], mu: &[K]) -> Result<RTable<K>> {
    let one = K::one();
    let mut t = RTable::new();
    for li in lam {
        let ctx = || format!("Bethe equation at lambda = {li}");
        let mut acc = -one.clone();
        for lk in lam {
            let d = lk.clone() - li.clone();
            acc = acc * ratio(d.clone() - one.clone(), d + one.clone(), ctx)?;
        }
        for mk in mu {
            let d = mk.clone() - li.clone();
            acc = acc * ratio(d.clone() + one.clone(), d, ctx)?;
        }
        t.set(RKind::R1, li.clone(), acc);
    }
    for mj in mu {
        let ctx = || format!("Bethe equation at mu = {mj}");
        let mut acc = -one.clone();
        for mk in mu {
            let d = mj.clone() - mk.clone();
            acc = acc * ratio(d.clone() - one.clone(), d + one.clone(), ctx)?;
        }
        for lk in lam {
            let d = mj.clone() - lk.clone();
            acc = acc * ratio(d.clone() + one.clone(), d, ctx)?;
        }
        t.set(RKind::R3, mj.clone(), acc);
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub a: Rat,
    pub b: Rat,
    pub difference: Rat,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {} = {}", self.a, self.b, self.difference)
    }
}

/// Every pair whose difference lies in {−1, 0, 1}; empty means generic.
pub fn genericity_check(params: &[Rat]) -> Vec<Violation> {
    let one = Rat::one();
    let mut out = Vec::new();
    for (i, j) in (0..params.len()).tuple_combinations() {
        let d = &params[i] - &params[j];
        if d.is_zero() || d == one || d == -one.clone() {
            out.push(Violation { a: params[i].clone(), b: params[j].clone(), difference: d });
        }
    }
    out
}

pub fn ensure_generic(params: &[Rat]) -> Result<()> {
    let v = genericity_check(params);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Genericity(v.iter().map(|x| x.to_string()).join(", ")))
    }
}
