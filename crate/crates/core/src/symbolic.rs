//! Affine forms in the integration variables and a sparse algebra of
//! products of their powers, with exact iterated residues.
//!
//! Variables are numbered in elimination order: variable 0 is residued
//! first. Every stored factor is normalized so that its lowest variable has
//! coefficient one; when variable `v` is eliminated it is therefore the
//! lowest variable of each factor that contains it, and substituting
//! `v = c + ε` turns that factor into `A + ε` with `A` free of `v`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::field::{Field, Rat, Ring};
use crate::kernel::{RKind, RTable};

/// Σ c_i v_i + constant, coefficients nonzero and sorted by variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Affine {
    terms: Vec<(usize, Rat)>,
    constant: Rat,
}

impl Affine {
    pub fn constant(c: Rat) -> Self {
        Affine { terms: Vec::new(), constant: c }
    }

    pub fn var(i: usize) -> Self {
        Affine { terms: vec![(i, Rat::one())], constant: Rat::zero() }
    }

    pub fn as_constant(&self) -> Option<&Rat> {
        if self.terms.is_empty() {
            Some(&self.constant)
        } else {
            None
        }
    }

    pub fn terms(&self) -> &[(usize, Rat)] {
        &self.terms
    }

    pub fn constant_term(&self) -> &Rat {
        &self.constant
    }

    pub fn coeff(&self, v: usize) -> Rat {
        self.terms.iter().find(|(i, _)| *i == v).map(|(_, c)| c.clone()).unwrap_or_else(Rat::zero)
    }

    fn combine(&self, o: &Affine, sign: bool) -> Affine {
        let mut terms: Vec<(usize, Rat)> = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let take_a = j >= o.terms.len() || (i < self.terms.len() && self.terms[i].0 < o.terms[j].0);
            let take_b = i >= self.terms.len() || (j < o.terms.len() && o.terms[j].0 < self.terms[i].0);
            if take_a {
                terms.push(self.terms[i].clone());
                i += 1;
            } else if take_b {
                let c = if sign { o.terms[j].1.clone() } else { -&o.terms[j].1 };
                terms.push((o.terms[j].0, c));
                j += 1;
            } else {
                let c = if sign { &self.terms[i].1 + &o.terms[j].1 } else { &self.terms[i].1 - &o.terms[j].1 };
                if !c.is_zero() {
                    terms.push((self.terms[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        let constant = if sign { &self.constant + &o.constant } else { &self.constant - &o.constant };
        Affine { terms, constant }
    }

    pub fn plus(&self, o: &Affine) -> Affine {
        self.combine(o, true)
    }

    pub fn minus(&self, o: &Affine) -> Affine {
        self.combine(o, false)
    }

    pub fn add_const(&self, c: &Rat) -> Affine {
        Affine { terms: self.terms.clone(), constant: &self.constant + c }
    }

    pub fn scale(&self, c: &Rat) -> Affine {
        if c.is_zero() {
            return Affine::constant(Rat::zero());
        }
        Affine {
            terms: self.terms.iter().map(|(i, x)| (*i, x * c)).collect(),
            constant: &self.constant * c,
        }
    }

    /// Replaces variable `v` by the constant `c`.
    pub fn substitute(&self, v: usize, c: &Rat) -> Affine {
        let k = self.coeff(v);
        if k.is_zero() {
            return self.clone();
        }
        Affine {
            terms: self.terms.iter().filter(|(i, _)| *i != v).cloned().collect(),
            constant: &self.constant + &(&k * c),
        }
    }

    /// Splits a non-constant form into (s, L̂) with L = s·L̂ and L̂ monic in its lowest variable.
    pub fn normalize(&self) -> (Rat, Affine) {
        match self.terms.first() {
            None => (self.constant.clone(), Affine::constant(Rat::one())),
            Some((_, lead)) => {
                let s = lead.clone();
                let inv = s.checked_inv().expect("nonzero coefficient");
                (s, self.scale(&inv))
            }
        }
    }

    /// Evaluates with the given variable values.
    pub fn eval(&self, values: &[Rat]) -> Rat {
        let mut acc = self.constant.clone();
        for (i, c) in &self.terms {
            acc = acc + c * &values[*i];
        }
        acc
    }
}

impl From<Rat> for Affine {
    fn from(c: Rat) -> Self {
        Affine::constant(c)
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "v{i}")?;
            } else {
                write!(f, "{c}*v{i}")?;
            }
        }
        if first {
            write!(f, "{}", self.constant)
        } else if !self.constant.is_zero() {
            write!(f, " + {}", self.constant)
        } else {
            Ok(())
        }
    }
}

/// A ring whose elements can be built from affine forms and their inverses.
pub trait Algebra: Ring {
    fn affine(a: &Affine) -> Result<Self>;
    fn inv_affine(a: &Affine) -> Result<Self>;
}

/// In a tower of depth D, variable i is mapped to tower level D−1−i so the
/// first variable to eliminate is the outermost one.
impl<K: Field> Algebra for K {
    fn affine(a: &Affine) -> Result<K> {
        let mut acc = K::from_rat(a.constant_term());
        for (i, c) in a.terms() {
            if *i >= K::DEPTH {
                return Err(Error::Unsupported(format!("variable v{i} in a tower of depth {}", K::DEPTH)));
            }
            acc = acc + K::var(K::DEPTH - 1 - i) * K::from_rat(c);
        }
        Ok(acc)
    }

    fn inv_affine(a: &Affine) -> Result<K> {
        K::affine(a)?.inv().ok_or_else(|| Error::ZeroDenominator(format!("1/({a})")))
    }
}

/// g(x,y) = 1/(x−y)
pub fn ag<A: Algebra>(x: &Affine, y: &Affine) -> Result<A> {
    A::inv_affine(&x.minus(y))
}

/// h(x,y) = x−y+1
pub fn ah<A: Algebra>(x: &Affine, y: &Affine) -> Result<A> {
    A::affine(&x.minus(y).add_const(&Rat::one()))
}

/// 1/h(x,y)
pub fn ah_inv<A: Algebra>(x: &Affine, y: &Affine) -> Result<A> {
    A::inv_affine(&x.minus(y).add_const(&Rat::one()))
}

/// f(x,y) = (x−y+1)/(x−y)
pub fn af<A: Algebra>(x: &Affine, y: &Affine) -> Result<A> {
    Ok(ah::<A>(x, y)? * ag::<A>(x, y)?)
}

/// 1/f(x,y)
pub fn af_inv<A: Algebra>(x: &Affine, y: &Affine) -> Result<A> {
    Ok(A::affine(&x.minus(y))? * ah_inv::<A>(x, y)?)
}

/// Formal factors that are not affine forms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Mark {
    /// r(v) at a still-symbolic variable.
    R { kind: RKind, var: usize },
    /// r^{(order)}(point), produced by a higher-order pole; must cancel.
    D { kind: RKind, point: Rat, order: u32 },
}

type FormId = u32;

/// Process-wide table of normalized affine forms, so monomials store ids.
#[derive(Default)]
struct Interner {
    forms: Vec<Affine>,
    index: HashMap<Affine, FormId>,
}

fn interner() -> &'static RwLock<Interner> {
    static FORMS: OnceLock<RwLock<Interner>> = OnceLock::new();
    FORMS.get_or_init(Default::default)
}

fn intern(a: Affine) -> FormId {
    if let Some(id) = interner().read().expect("interner lock").index.get(&a) {
        return *id;
    }
    let mut t = interner().write().expect("interner lock");
    if let Some(id) = t.index.get(&a) {
        return *id;
    }
    let id = t.forms.len() as FormId;
    t.forms.push(a.clone());
    t.index.insert(a, id);
    id
}

fn lookup(a: &Affine) -> Option<FormId> {
    interner().read().expect("interner lock").index.get(a).copied()
}

fn form(id: FormId) -> Affine {
    interner().read().expect("interner lock").forms[id as usize].clone()
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
struct Monomial {
    factors: Vec<(FormId, i32)>,
    marks: Vec<Mark>,
}

fn merge_sorted(a: &[(FormId, i32)], b: &[(FormId, i32)]) -> Vec<(FormId, i32)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            let e = a[i].1 + b[j].1;
            if e != 0 {
                out.push((a[i].0, e));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl Monomial {
    fn mul(&self, o: &Monomial) -> Monomial {
        let factors = merge_sorted(&self.factors, &o.factors);
        let marks = if o.marks.is_empty() {
            self.marks.clone()
        } else {
            let mut m = self.marks.clone();
            m.extend(o.marks.iter().cloned());
            m.sort();
            m
        };
        Monomial { factors, marks }
    }
}

/// Finite sum of rational multiples of monomials ∏ L_i^{e_i} × marks.
#[derive(Clone, Debug, Default)]
pub struct LaurentSum {
    terms: HashMap<Monomial, Rat>,
}

impl LaurentSum {
    fn single(m: Monomial, c: Rat) -> Self {
        let mut terms = HashMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentSum { terms }
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn power(a: &Affine, e: i32) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one());
        }
        if let Some(c) = a.as_constant() {
            if c.is_zero() && e < 0 {
                return Err(Error::ZeroDenominator(format!("1/({a})")));
            }
            return Ok(Self::from_rat(&c.pow(e)));
        }
        let (s, n) = a.normalize();
        Ok(Self::single(Monomial { factors: vec![(intern(n), e)], marks: Vec::new() }, s.pow(e)))
    }

    /// The formal factor r(v) at symbolic variable `var`.
    pub fn r_marker(kind: RKind, var: usize) -> Self {
        Self::single(Monomial { factors: Vec::new(), marks: vec![Mark::R { kind, var }] }, Rat::one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True if some term has a pole at `var = point`.
    pub fn has_pole_at(&self, var: usize, point: &Rat) -> bool {
        let Some(id) = lookup(&Affine::var(var).add_const(&-point)) else {
            return false;
        };
        self.terms.keys().any(|m| m.factors.iter().any(|(f, e)| *f == id && *e < 0))
    }

    /// Res_{var = point}; r-markers at `var` are read from `r` at `point`.
    pub fn residue(&self, var: usize, point: &Rat, r: &RTable<Rat>) -> Result<LaurentSum> {
        let mut out = LaurentSum::default();
        let mut memo = HashMap::new();
        for (mono, coeff) in &self.terms {
            residue_term(mono, coeff, var, point, r, &mut memo, &mut out)?;
        }
        Ok(out)
    }

    /// The value once every variable has been eliminated. Terms carrying
    /// derivatives of r must cancel exactly.
    pub fn into_constant(self) -> Result<Rat> {
        let mut value = Rat::zero();
        let mut leftovers: HashMap<Vec<Mark>, Rat> = HashMap::new();
        for (m, c) in self.terms {
            if !m.factors.is_empty() {
                let fs: Vec<String> = m.factors.iter().map(|(f, e)| format!("({})^{e}", form(*f))).collect();
                return Err(Error::Unsupported(format!("variables remain: {}", fs.join(" "))));
            }
            if m.marks.is_empty() {
                value = value + c;
            } else {
                let e = leftovers.entry(m.marks).or_insert_with(Rat::zero);
                *e = &*e + &c;
            }
        }
        if let Some((marks, _)) = leftovers.iter().find(|(_, c)| !c.is_zero()) {
            return Err(Error::Unsupported(format!("non-cancelling formal factors {marks:?}")));
        }
        Ok(value)
    }
}

fn is_eps_factor(l: &Affine, var: usize, point: &Rat) -> bool {
    l.terms.len() == 1 && l.terms[0].0 == var && l.terms[0].1.is_one() && l.constant == -point
}

fn binom_gen(e: i32, n: u32) -> Rat {
    let mut acc = Rat::one();
    for i in 0..n {
        acc = acc * Rat::int(e as i64 - i as i64);
    }
    acc / Rat::factorial(n)
}

/// How a factor behaves under var = point + ε.
#[derive(Clone)]
enum Moved {
    Fixed,
    Eps,
    /// L(point) = scale · form, with `form` None for a constant.
    Shift { value: Affine, scale: Rat, form: Option<FormId> },
}

fn classify(id: FormId, var: usize, point: &Rat) -> Moved {
    let l = form(id);
    if l.coeff(var).is_zero() {
        Moved::Fixed
    } else if is_eps_factor(&l, var, point) {
        Moved::Eps
    } else {
        debug_assert_eq!(l.terms[0].0, var, "elimination order violated");
        let value = l.substitute(var, point);
        match value.as_constant() {
            Some(c) => Moved::Shift { scale: c.clone(), form: None, value },
            None => {
                let (scale, n) = value.normalize();
                Moved::Shift { value, scale, form: Some(intern(n)) }
            }
        }
    }
}

fn merge_unsorted(mut f: Vec<(FormId, i32)>) -> Vec<(FormId, i32)> {
    f.sort_unstable_by_key(|x| x.0);
    let mut out: Vec<(FormId, i32)> = Vec::with_capacity(f.len());
    for (a, e) in f {
        match out.last_mut() {
            Some((b, x)) if *b == a => *x += e,
            _ => out.push((a, e)),
        }
    }
    out.retain(|(_, e)| *e != 0);
    out
}

fn residue_term(
    mono: &Monomial,
    coeff: &Rat,
    var: usize,
    point: &Rat,
    r: &RTable<Rat>,
    memo: &mut HashMap<FormId, Moved>,
    out: &mut LaurentSum,
) -> Result<()> {
    let mut eps_exp = 0i32;
    let mut moving: Vec<(&Moved, i32)> = Vec::new();
    let mut fixed: Vec<(FormId, i32)> = Vec::new();
    for (id, _) in &mono.factors {
        memo.entry(*id).or_insert_with(|| classify(*id, var, point));
    }
    for (id, e) in &mono.factors {
        let mv = &memo[id];
        match mv {
            Moved::Fixed => fixed.push((*id, *e)),
            Moved::Eps => eps_exp += e,
            Moved::Shift { .. } => moving.push((mv, *e)),
        }
    }
    if eps_exp >= 0 {
        return Ok(());
    }
    if eps_exp == -1 {
        let mut c = coeff.clone();
        for (mv, e) in moving {
            if let Moved::Shift { scale, form, .. } = mv {
                if scale.is_zero() {
                    if e < 0 {
                        return Err(Error::ZeroDenominator(format!("residue at v{var} = {point}")));
                    }
                    return Ok(());
                }
                if e == 1 {
                    c = c * scale;
                } else {
                    c = c * scale.pow(e);
                }
                if let Some(n) = form {
                    fixed.push((*n, e));
                }
            }
        }
        let mut marks = Vec::with_capacity(mono.marks.len());
        for mk in &mono.marks {
            match mk {
                Mark::R { kind, var: v } if *v == var => {
                    c = c * r.get(*kind, point)?;
                }
                _ => marks.push(mk.clone()),
            }
        }
        if !c.is_zero() {
            out.add_term(Monomial { factors: merge_unsorted(fixed), marks }, c);
        }
        return Ok(());
    }
    let moving: Vec<(Affine, i32)> = moving
        .into_iter()
        .map(|(mv, e)| match mv {
            Moved::Shift { value, .. } => (value.clone(), e),
            _ => unreachable!(),
        })
        .collect();
    let mut r_kind = None;
    let mut marks = Vec::with_capacity(mono.marks.len());
    for mk in &mono.marks {
        match mk {
            Mark::R { kind, var: v } if *v == var => {
                if r_kind.is_some() {
                    return Err(Error::Unsupported("repeated r-factor at one variable".into()));
                }
                r_kind = Some(*kind);
            }
            _ => marks.push(mk.clone()),
        }
    }
    let base = LaurentSum::single(Monomial { factors: fixed, marks }, coeff.clone());
    let degree = (-eps_exp - 1) as u32;
    // ε^{degree} coefficient of ∏ (A_j + ε)^{e_j} · Σ r^{(n)}(c) εⁿ/n!
    let slots = moving.len() + usize::from(r_kind.is_some());
    let mut split = vec![0u32; slots];
    loop {
        if split.iter().sum::<u32>() == degree {
            let mut acc = base.clone();
            for (j, (a, e)) in moving.iter().enumerate() {
                let n = split[j];
                let b = binom_gen(*e, n);
                if b.is_zero() {
                    acc = LaurentSum::zero();
                    break;
                }
                acc = acc * LaurentSum::from_rat(&b) * LaurentSum::power(a, *e - n as i32)?;
            }
            if let Some(k) = r_kind {
                let n = split[slots - 1];
                let factor = if n == 0 {
                    LaurentSum::from_rat(&r.get(k, point)?)
                } else {
                    LaurentSum::single(
                        Monomial { factors: Vec::new(), marks: vec![Mark::D { kind: k, point: point.clone(), order: n }] },
                        Rat::one() / Rat::factorial(n),
                    )
                };
                acc = acc * factor;
            }
            for (m, c) in acc.terms {
                out.add_term(m, c);
            }
        }
        // next composition with entries bounded by `degree`
        let mut i = 0;
        loop {
            if i == slots {
                return Ok(());
            }
            split[i] += 1;
            if split[i] <= degree && split.iter().sum::<u32>() <= degree {
                break;
            }
            split[i] = 0;
            i += 1;
        }
    }
}

impl Add for LaurentSum {
    type Output = LaurentSum;
    fn add(mut self, o: LaurentSum) -> LaurentSum {
        if self.terms.len() < o.terms.len() {
            return o + self;
        }
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for LaurentSum {
    type Output = LaurentSum;
    fn neg(self) -> LaurentSum {
        LaurentSum { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl Sub for LaurentSum {
    type Output = LaurentSum;
    fn sub(self, o: LaurentSum) -> LaurentSum {
        self + (-o)
    }
}

impl Mul for LaurentSum {
    type Output = LaurentSum;
    fn mul(self, o: LaurentSum) -> LaurentSum {
        let mut out = LaurentSum::default();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Ring for LaurentSum {
    fn zero() -> Self {
        LaurentSum::default()
    }
    fn one() -> Self {
        Self::single(Monomial::default(), Rat::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rat(r: &Rat) -> Self {
        Self::single(Monomial::default(), r.clone())
    }
}

impl Algebra for LaurentSum {
    fn affine(a: &Affine) -> Result<Self> {
        Self::power(a, 1)
    }
    fn inv_affine(a: &Affine) -> Result<Self> {
        Self::power(a, -1)
    }
}
