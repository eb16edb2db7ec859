//! Brute-force ground truth: the fundamental inhomogeneous SU(3) chain with
//! dense exact states, nested Bethe vectors, their duals, and the action of
//! the diagonal monodromy entries.
//!
//! Index conventions: T_{ij} uses 1-based i, j. A state over N sites and ℓ
//! auxiliary C² factors is a flat vector; site s has stride 3^s and
//! auxiliary factor k has stride 3^N·2^k.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Rat, RatFunc};
use crate::kernel::{f, g, RKind, RTable, VarSet};
use crate::scalar_sum::SPInput;

/// Largest chain handled.
pub const MAX_SITES: usize = 5;
/// Largest number of λ-variables (auxiliary C² factors) handled.
pub const MAX_AUX: usize = 3;

/// N sites with inhomogeneities ξ̄.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub xi: Vec<Rat>,
}

impl ChainSpec {
    pub fn new(xi: Vec<Rat>) -> Result<Self> {
        if xi.len() > MAX_SITES {
            return Err(Error::Unsupported(format!("{} sites (at most {MAX_SITES})", xi.len())));
        }
        Ok(ChainSpec { xi })
    }

    pub fn sites(&self) -> usize {
        self.xi.len()
    }

    pub fn dim(&self) -> usize {
        3usize.pow(self.xi.len() as u32)
    }
}

/// Dense matrix over K.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator<K> {
    pub rows: Vec<Vec<K>>,
}

impl<K: Field> DenseOperator<K> {
    pub fn identity(n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| if i == j { K::one() } else { K::zero() }).collect()).collect();
        DenseOperator { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.dim();
        let mut rows = vec![vec![K::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for k in 0..n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !o.rows[k][j].is_zero() {
                        row[j] = row[j].clone() + a.clone() * o.rows[k][j].clone();
                    }
                }
            }
        }
        DenseOperator { rows }
    }

    pub fn apply(&self, v: &DenseState<K>) -> DenseState<K> {
        let entries = self
            .rows
            .iter()
            .map(|row| row.iter().zip(&v.entries).fold(K::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
            .collect();
        DenseState { entries }
    }
}

/// A vector or covector, as a flat list of components.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseState<K> {
    pub entries: Vec<K>,
}

impl<K: Field> DenseState<K> {
    pub fn zero(n: usize) -> Self {
        DenseState { entries: vec![K::zero(); n] }
    }

    pub fn basis(n: usize, i: usize) -> Self {
        let mut s = Self::zero(n);
        s.entries[i] = K::one();
        s
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn dot(&self, o: &Self) -> K {
        self.entries.iter().zip(&o.entries).fold(K::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }

    pub fn scale(&self, k: &K) -> Self {
        DenseState { entries: self.entries.iter().map(|e| e.clone() * k.clone()).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        DenseState { entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.clone() + b.clone()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        DenseState { entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.clone() - b.clone()).collect() }
    }

    fn axpy(&mut self, k: &K, o: &Self) {
        if k.is_zero() {
            return;
        }
        for (a, b) in self.entries.iter_mut().zip(&o.entries) {
            if !b.is_zero() {
                *a = a.clone() + k.clone() * b.clone();
            }
        }
    }
}

/// The R-matrix of level 1 (9×9, SU(3)) or level 2 (4×4, SU(2)): 1 + g(λ,μ)·P.
/// Row (a,b) is block a, component b.
pub fn r_matrix<K: Field>(level: u8, lam: &K, mu: &K) -> Result<DenseOperator<K>> {
    let d = match level {
        1 => 3,
        2 => 2,
        _ => return Err(Error::Unsupported(format!("R-matrix level {level}"))),
    };
    let gv = g(lam, mu)?;
    let mut m = DenseOperator::<K>::identity(d * d);
    for a in 0..d {
        for b in 0..d {
            let (r, c) = (a * d + b, b * d + a);
            m.rows[r][c] = m.rows[r][c].clone() + gv.clone();
        }
    }
    Ok(m)
}

/// v ↦ L_{ab} v on the factor with the given stride and local dimension,
/// where L_{ab} = δ_ab + w·E_{ba} and E_{ba}|a⟩ = |b⟩. With `left`, the
/// covector ω ↦ ω·L_{ab} instead.
fn local<K: Field>(v: &DenseState<K>, stride: usize, d: usize, a: usize, b: usize, w: &K, left: bool) -> DenseState<K> {
    let mut out = if a == b { v.clone() } else { DenseState::zero(v.entries.len()) };
    for (idx, slot) in out.entries.iter_mut().enumerate() {
        let digit = (idx / stride) % d;
        let (want, from) = if left { (a, b) } else { (b, a) };
        if digit == want {
            let src = idx - want * stride + from * stride;
            let x = &v.entries[src];
            if !x.is_zero() {
                *slot = slot.clone() + w.clone() * x.clone();
            }
        }
    }
    out
}

/// A chain of local L-operators: factor k has stride, local dimension and weight g(z, point_k).
struct Chain<K> {
    factors: Vec<(usize, usize, K)>,
    d: usize,
}

impl<K: Field> Chain<K> {
    /// (L_N ⋯ L_1)_{ij} v, 0-based i, j.
    fn apply(&self, i: usize, j: usize, v: &DenseState<K>) -> DenseState<K> {
        if self.factors.is_empty() {
            return if i == j { v.clone() } else { DenseState::zero(v.entries.len()) };
        }
        let (s0, d0, w0) = &self.factors[0];
        let mut w: Vec<DenseState<K>> = (0..self.d).map(|k| local(v, *s0, *d0, k, j, w0, false)).collect();
        for (s, d, wt) in &self.factors[1..] {
            w = (0..self.d)
                .map(|k| {
                    let mut acc = DenseState::zero(v.entries.len());
                    for (m, wm) in w.iter().enumerate() {
                        let t = local(wm, *s, *d, k, m, wt, false);
                        acc.axpy(&K::one(), &t);
                    }
                    acc
                })
                .collect();
        }
        w.swap_remove(i)
    }

    /// ω (L_N ⋯ L_1)_{ij}, 0-based i, j.
    fn apply_left(&self, i: usize, j: usize, om: &DenseState<K>) -> DenseState<K> {
        let n = self.factors.len();
        if n == 0 {
            return if i == j { om.clone() } else { DenseState::zero(om.entries.len()) };
        }
        let (s0, d0, w0) = &self.factors[n - 1];
        let mut u: Vec<DenseState<K>> = (0..self.d).map(|k| local(om, *s0, *d0, i, k, w0, true)).collect();
        for (s, d, wt) in self.factors[..n - 1].iter().rev() {
            u = (0..self.d)
                .map(|k| {
                    let mut acc = DenseState::zero(om.entries.len());
                    for (m, um) in u.iter().enumerate() {
                        let t = local(um, *s, *d, m, k, wt, true);
                        acc.axpy(&K::one(), &t);
                    }
                    acc
                })
                .collect();
        }
        u.swap_remove(j)
    }
}

fn site_chain<K: Field>(z: &K, chain: &ChainSpec) -> Result<Chain<K>> {
    let mut factors = Vec::with_capacity(chain.sites());
    let mut stride = 1;
    for x in &chain.xi {
        factors.push((stride, 3, g(z, &K::from_rat(x))?));
        stride *= 3;
    }
    Ok(Chain { factors, d: 3 })
}

fn check_ij(i: usize, j: usize) -> Result<()> {
    if !(1..=3).contains(&i) || !(1..=3).contains(&j) {
        return Err(Error::Unsupported(format!("monodromy entry ({i},{j})")));
    }
    Ok(())
}

/// T_{ij}(z) v. The vector may carry auxiliary factors above the chain.
pub fn apply_t<K: Field>(i: usize, j: usize, z: &K, chain: &ChainSpec, v: &DenseState<K>) -> Result<DenseState<K>> {
    check_ij(i, j)?;
    Ok(site_chain(z, chain)?.apply(i - 1, j - 1, v))
}

/// ω T_{ij}(z) for a covector ω.
pub fn apply_t_left<K: Field>(i: usize, j: usize, z: &K, chain: &ChainSpec, om: &DenseState<K>) -> Result<DenseState<K>> {
    check_ij(i, j)?;
    Ok(site_chain(z, chain)?.apply_left(i - 1, j - 1, om))
}

/// T_{ij}(z) as a dense 3^N × 3^N matrix.
pub fn monodromy_entry<K: Field>(i: usize, j: usize, z: &K, chain: &ChainSpec) -> Result<DenseOperator<K>> {
    let n = chain.dim();
    let cols: Vec<DenseState<K>> = (0..n).map(|c| apply_t(i, j, z, chain, &DenseState::basis(n, c))).collect::<Result<_>>()?;
    let rows = (0..n).map(|r| (0..n).map(|c| cols[c].entries[r].clone()).collect()).collect();
    Ok(DenseOperator { rows })
}

/// |0⟩: every site in state 1.
pub fn vacuum<K: Field>(chain: &ChainSpec) -> DenseState<K> {
    DenseState::basis(chain.dim(), 0)
}

fn eigenvalue<K: Field>(v: &DenseState<K>, w: &DenseState<K>, i: usize) -> Result<K> {
    let a = w.entries[0].clone();
    if w.sub(&v.scale(&a)).is_zero() {
        Ok(a)
    } else {
        Err(Error::NotEigenvector(i))
    }
}

/// (a₁, a₂, a₃) at z, read off from T_{ii}(z)|0⟩ and checked on ⟨0|T_{ii}(z).
pub fn vacuum_eigenvalues<K: Field>(z: &K, chain: &ChainSpec) -> Result<(K, K, K)> {
    let v = vacuum::<K>(chain);
    let mut a = Vec::with_capacity(3);
    for i in 1..=3 {
        let right = eigenvalue(&v, &apply_t(i, i, z, chain, &v)?, i)?;
        let left = eigenvalue(&v, &apply_t_left(i, i, z, chain, &v)?, i)?;
        if left != right {
            return Err(Error::NotEigenvector(i));
        }
        a.push(right);
    }
    let a3 = a.pop().expect("three");
    let a2 = a.pop().expect("three");
    Ok((a.pop().expect("three"), a2, a3))
}

/// Checks the pseudo-vacuum rules: T_{kj}|0⟩ = 0 and ⟨0|T_{jk} = 0 for
/// j < k, and the diagonal eigenvalues on both sides. In this chain T₂₃ and
/// T₃₂ also annihilate the vacuum, so nonvanishing is only required of the
/// entries in the first row and column.
pub fn vacuum_rules_hold(z: &Rat, chain: &ChainSpec) -> Result<bool> {
    if chain.sites() == 0 {
        return Ok(true);
    }
    vacuum_eigenvalues(z, chain)?;
    let v = vacuum::<Rat>(chain);
    for j in 1..=3 {
        for k in j + 1..=3 {
            let raises = j == 1;
            let ok = apply_t(k, j, z, chain, &v)?.is_zero()
                && apply_t_left(j, k, z, chain, &v)?.is_zero()
                && apply_t(j, k, z, chain, &v)?.is_zero() != raises
                && apply_t_left(k, j, z, chain, &v)?.is_zero() != raises;
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// r₁ = a₁/a₂ and r₃ = a₃/a₂ of the chain at the given points.
pub fn chain_rtable(chain: &ChainSpec, lam_points: &[Rat], mu_points: &[Rat]) -> Result<RTable<Rat>> {
    let mut t = RTable::new();
    for p in lam_points {
        let (a1, a2, _) = vacuum_eigenvalues(p, chain)?;
        t.set(RKind::R1, p.clone(), a1 / a2);
    }
    for p in mu_points {
        let (_, a2, a3) = vacuum_eigenvalues(p, chain)?;
        t.set(RKind::R3, p.clone(), a3 / a2);
    }
    Ok(t)
}

/// Removes auxiliary factor k (stride `stride`) by splitting into its two components.
fn split_aux<K: Field>(v: &DenseState<K>, stride: usize) -> [DenseState<K>; 2] {
    let n = v.entries.len() / 2;
    let pick = |c: usize| {
        let entries = (0..n)
            .map(|idx| {
                let (lo, hi) = (idx % stride, idx / stride);
                v.entries[lo + stride * (2 * hi + c)].clone()
            })
            .collect();
        DenseState { entries }
    };
    [pick(0), pick(1)]
}

fn aux_chain<K: Field>(mu: &K, lam: &[K], base: usize) -> Result<Chain<K>> {
    // R^{(2)}(μ,λ_k) acts on auxiliary factor k
    let mut factors = Vec::with_capacity(lam.len());
    let mut stride = base;
    for l in lam {
        factors.push((stride, 2, g(mu, l)?));
        stride *= 2;
    }
    Ok(Chain { factors, d: 2 })
}

fn check_sizes<K>(lam: &[K], chain: &ChainSpec) -> Result<()> {
    if lam.len() > MAX_AUX {
        return Err(Error::Unsupported(format!("{} lambda variables (at most {MAX_AUX})", lam.len())));
    }
    if chain.sites() > MAX_SITES {
        return Err(Error::Unsupported(format!("{} sites (at most {MAX_SITES})", chain.sites())));
    }
    Ok(())
}

/// |λ̄, μ̄⟩ = C⁽¹⁾(λ₁)⋯C⁽¹⁾(λ_ℓ) C⁽²⁾(μ₁)⋯C⁽²⁾(μ_m) |0⟩⊗|⇑⟩.
pub fn bethe_state<K: Field>(lam: &[K], mu: &[K], chain: &ChainSpec) -> Result<DenseState<K>> {
    check_sizes(lam, chain)?;
    let base = chain.dim();
    let l = lam.len();
    let mut v = DenseState::basis(base << l, 0);
    for m in mu.iter().rev() {
        // C⁽²⁾(μ) = Σ_k D_{1k}(μ) (R_{βα_ℓ}⋯R_{βα_1})_{k2}
        let aux = aux_chain(m, lam, base)?;
        let sc = site_chain(m, chain)?;
        let mut acc = DenseState::zero(v.entries.len());
        for k in 0..2 {
            let u = aux.apply(k, 1, &v);
            acc.axpy(&K::one(), &sc.apply(1, k + 1, &u));
        }
        v = acc;
    }
    for (k, lk) in lam.iter().enumerate().rev() {
        let [v0, v1] = split_aux(&v, base << k);
        let sc = site_chain(lk, chain)?;
        v = sc.apply(0, 1, &v0).add(&sc.apply(0, 2, &v1));
    }
    Ok(v)
}

/// ⟨μ̄, λ̄| = ⟨⇑|⊗⟨0| B⁽²⁾(μ₁)⋯B⁽²⁾(μ_m) B⁽¹⁾(λ₁)⋯B⁽¹⁾(λ_ℓ), built by
/// multiplication from the left.
pub fn dual_bethe_state<K: Field>(mu: &[K], lam: &[K], chain: &ChainSpec) -> Result<DenseState<K>> {
    check_sizes(lam, chain)?;
    let base = chain.dim();
    let mut om = DenseState::basis(base << lam.len(), 0);
    for m in mu {
        // B⁽²⁾(μ) = Σ_k (R_{βα_ℓ}⋯R_{βα_1})_{2k} D_{k1}(μ)
        let aux = aux_chain(m, lam, base)?;
        let sc = site_chain(m, chain)?;
        let mut acc = DenseState::zero(om.entries.len());
        for k in 0..2 {
            let u = aux.apply_left(1, k, &om);
            acc.axpy(&K::one(), &sc.apply_left(k + 1, 1, &u));
        }
        om = acc;
    }
    for lk in lam {
        let [w0, w1] = split_aux(&om, base);
        let sc = site_chain(lk, chain)?;
        om = sc.apply_left(1, 0, &w0).add(&sc.apply_left(2, 0, &w1));
    }
    Ok(om)
}

fn a2_prod<K: Field>(pts: &[K], chain: &ChainSpec) -> Result<K> {
    let mut acc = K::one();
    for p in pts {
        acc = acc * vacuum_eigenvalues(p, chain)?.1;
    }
    Ok(acc)
}

fn norm<K: Field>(lam: &[K], mu: &[K], chain: &ChainSpec) -> Result<K> {
    let mut acc = a2_prod(lam, chain)? * a2_prod(mu, chain)?;
    for m in mu {
        for l in lam {
            acc = acc * f(m, l)?;
        }
    }
    acc.inv().ok_or_else(|| Error::ZeroDenominator("Bethe vector normalization".into()))
}

/// ‖λ̄, μ̄⟩⟩: the Bethe vector divided by f(μ̄,λ̄) a₂(λ̄) a₂(μ̄).
pub fn normalized_bethe_state<K: Field>(lam: &[K], mu: &[K], chain: &ChainSpec) -> Result<DenseState<K>> {
    Ok(bethe_state(lam, mu, chain)?.scale(&norm(lam, mu, chain)?))
}

/// ⟨⟨μ̄, λ̄‖ with the same normalization.
pub fn normalized_dual_state<K: Field>(mu: &[K], lam: &[K], chain: &ChainSpec) -> Result<DenseState<K>> {
    Ok(dual_bethe_state(mu, lam, chain)?.scale(&norm(lam, mu, chain)?))
}

/// ⟨⟨μ̄ᴮ, λ̄ᴮ‖λ̄ᶜ, μ̄ᶜ⟩⟩ by direct contraction. The r-values of `s` are ignored:
/// the chain fixes them.
pub fn direct_scalar_product(s: &SPInput<Rat>, chain: &ChainSpec) -> Result<Rat> {
    let dual = normalized_dual_state(&s.mu_b, &s.lam_b, chain)?;
    let ket = normalized_bethe_state(&s.lam_c, &s.mu_c, chain)?;
    Ok(dual.dot(&ket))
}

/// `s` with its r-table replaced by the chain's values.
pub fn with_chain_rtable(s: &SPInput<Rat>, chain: &ChainSpec) -> Result<SPInput<Rat>> {
    let lam: Vec<Rat> = s.lam_b.oplus(&s.lam_c).0;
    let mu: Vec<Rat> = s.mu_b.oplus(&s.mu_c).0;
    let r = chain_rtable(chain, &lam, &mu)?;
    SPInput::new(s.mu_b.clone(), s.lam_b.clone(), s.lam_c.clone(), s.mu_c.clone(), r)
}

/// Which action identity to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Action {
    T11,
    T22,
    T33,
    Transfer,
}

impl Action {
    pub const ALL: [Action; 4] = [Action::T11, Action::T22, Action::T33, Action::Transfer];
}

type E = RatFunc<Rat>;

/// ‖λ̄, μ̄⟩⟩ where the last points of λ̄ and μ̄ may coincide: the μ-copy is
/// shifted by ε and ε → 0 is taken entrywise.
fn ket_limit(lam: &[Rat], mu: &[Rat], shared: bool, chain: &ChainSpec) -> Result<DenseState<Rat>> {
    if !shared {
        return normalized_bethe_state(lam, mu, chain);
    }
    let j = mu.len() - 1;
    let le: Vec<E> = lam.iter().map(|x| E::constant(x.clone())).collect();
    let mut me: Vec<E> = mu.iter().map(|x| E::constant(x.clone())).collect();
    me[j] = me[j].clone() + E::t();
    let v = normalized_bethe_state(&le, &me, chain)?;
    let entries = v.entries.iter().map(|e| e.eval_at(&Rat::zero())).collect::<Result<Vec<_>>>()?;
    Ok(DenseState { entries })
}

fn prod(n: usize, skip: usize, mut term: impl FnMut(usize) -> Result<Rat>) -> Result<Rat> {
    let mut acc = Rat::one();
    for k in (0..n).filter(|&k| k != skip) {
        acc = acc * term(k)?;
    }
    Ok(acc)
}

fn fp(x: &Rat, ys: &[Rat]) -> Result<Rat> {
    ys.iter().try_fold(Rat::one(), |a, y| Ok(a * f(x, y)?))
}

fn pf(xs: &[Rat], y: &Rat) -> Result<Rat> {
    xs.iter().try_fold(Rat::one(), |a, x| Ok(a * f(x, y)?))
}

/// LHS − RHS of the action of 𝕋_{ii}(z) = T_{ii}(z)/a₂(z) (or of their sum)
/// on ‖λ̄, μ̄⟩⟩, with r-values from the chain. Zero when the identity holds.
pub fn action_residual(which: Action, z: &Rat, lam: &[Rat], mu: &[Rat], chain: &ChainSpec) -> Result<DenseState<Rat>> {
    let (l, m) = (lam.len(), mu.len());
    check_sizes(lam, chain)?;
    let (a1, a2, a3) = vacuum_eigenvalues(z, chain)?;
    let a2i = a2.checked_inv().ok_or_else(|| Error::ZeroDenominator("a2(z)".into()))?;
    let (r1z, r3z) = (a1.clone() * a2i.clone(), a3.clone() * a2i.clone());
    let r = chain_rtable(chain, lam, mu)?;
    let ket = normalized_bethe_state(lam, mu, chain)?;

    let diag = |i: usize| -> Result<DenseState<Rat>> { Ok(apply_t(i, i, z, chain, &ket)?.scale(&a2i)) };
    let lhs = match which {
        Action::T11 => diag(1)?,
        Action::T22 => diag(2)?,
        Action::T33 => diag(3)?,
        Action::Transfer => diag(1)?.add(&diag(2)?).add(&diag(3)?),
    };

    let li = |i: usize| VarSet::new(lam.to_vec()).hat(i).with(z.clone()).0;
    let mj = |j: usize| VarSet::new(mu.to_vec()).hat(j).with(z.clone()).0;
    let fll = |i: usize| prod(l, i, |k| f(&lam[k], &lam[i]));
    let fll_r = |i: usize| prod(l, i, |k| f(&lam[i], &lam[k]));
    let fmm = |j: usize| prod(m, j, |k| f(&mu[k], &mu[j]));
    let fmm_r = |j: usize| prod(m, j, |k| f(&mu[j], &mu[k]));
    let r1 = |i: usize| r.r1(&lam[i]);
    let r3 = |j: usize| r.r3(&mu[j]);

    let mut rhs = DenseState::zero(ket.entries.len());
    let mut add = |c: Rat, v: &DenseState<Rat>| rhs.axpy(&c, v);
    let one_l = |i: usize| ket_limit(&li(i), mu, false, chain);
    let one_m = |j: usize| ket_limit(lam, &mj(j), false, chain);
    let both = |i: usize, j: usize| ket_limit(&li(i), &mj(j), true, chain);

    match which {
        Action::T11 => {
            add(r1z.clone() * pf(lam, z)?, &ket);
            for i in 0..l {
                let c = pf(mu, z)? * r1(i)? / pf(mu, &lam[i])? * g(z, &lam[i])? * fll(i)?;
                add(c, &one_l(i)?);
                for j in 0..m {
                    let c = r1(i)? / pf(mu, &lam[i])? * g(z, &mu[j])? * g(&mu[j], &lam[i])? * fll(i)? * fmm(j)?;
                    add(c, &both(i, j)?);
                }
            }
        }
        Action::T22 => {
            add(fp(z, lam)? * pf(mu, z)?, &ket);
            for i in 0..l {
                add(pf(mu, z)? * g(&lam[i], z)? * fll_r(i)?, &one_l(i)?);
            }
            for j in 0..m {
                add(fp(z, lam)? * g(z, &mu[j])? * fmm(j)?, &one_m(j)?);
            }
            for i in 0..l {
                for j in 0..m {
                    add(g(&lam[i], z)? * g(z, &mu[j])? * fll_r(i)? * fmm(j)?, &both(i, j)?);
                }
            }
        }
        Action::T33 => {
            add(r3z.clone() * fp(z, mu)?, &ket);
            for j in 0..m {
                let c = fp(z, lam)? * r3(j)? / fp(&mu[j], lam)? * g(&mu[j], z)? * fmm_r(j)?;
                add(c, &one_m(j)?);
                for i in 0..l {
                    let c = r3(j)? / fp(&mu[j], lam)? * g(&lam[i], z)? * g(&mu[j], &lam[i])? * fll_r(i)? * fmm_r(j)?;
                    add(c, &both(i, j)?);
                }
            }
        }
        Action::Transfer => {
            let eig = a1 * pf(lam, z)? + a2.clone() * fp(z, lam)? * pf(mu, z)? + a3 * fp(z, mu)?;
            add(eig * a2i.clone(), &ket);
            let lam_coef = |i: usize| -> Result<Rat> { Ok(fll_r(i)? - r1(i)? / pf(mu, &lam[i])? * fll(i)?) };
            let mu_coef = |j: usize| -> Result<Rat> { Ok(r3(j)? / fp(&mu[j], lam)? * fmm_r(j)? - fmm(j)?) };
            for i in 0..l {
                add(pf(mu, z)? * g(&lam[i], z)? * lam_coef(i)?, &one_l(i)?);
            }
            for j in 0..m {
                add(fp(z, lam)? * g(&mu[j], z)? * mu_coef(j)?, &one_m(j)?);
            }
            for i in 0..l {
                for j in 0..m {
                    let c = g(&mu[j], z)? * g(&mu[j], &lam[i])? * lam_coef(i)? * fmm(j)?
                        + g(&lam[i], z)? * g(&mu[j], &lam[i])? * mu_coef(j)? * fll_r(i)?;
                    add(c, &both(i, j)?);
                }
            }
        }
    }
    Ok(lhs.sub(&rhs))
}

/// R(λ,μ) T_α(λ) T_β(μ) = T_β(μ) T_α(λ) R(λ,μ), checked entrywise on the
/// 9·3^N-dimensional space.
pub fn rtt_holds(lam: &Rat, mu: &Rat, chain: &ChainSpec) -> Result<bool> {
    let mut tl = Vec::with_capacity(9);
    let mut tm = Vec::with_capacity(9);
    for i in 1..=3 {
        for j in 1..=3 {
            tl.push(monodromy_entry::<Rat>(i, j, lam, chain)?);
            tm.push(monodromy_entry::<Rat>(i, j, mu, chain)?);
        }
    }
    let t = |v: &Vec<DenseOperator<Rat>>, i: usize, j: usize| v[i * 3 + j].clone();
    let r = r_matrix::<Rat>(1, lam, mu)?;
    let n = chain.dim();
    for a in 0..3 {
        for b in 0..3 {
            for e in 0..3 {
                for h in 0..3 {
                    let mut lhs = DenseOperator { rows: vec![vec![Rat::zero(); n]; n] };
                    let mut rhs = lhs.clone();
                    for c in 0..3 {
                        for d in 0..3 {
                            let rl = &r.rows[a * 3 + b][c * 3 + d];
                            if !rl.is_zero() {
                                let p = t(&tl, c, e).mul(&t(&tm, d, h));
                                lhs = add_op(&lhs, &p, rl);
                            }
                            let rr = &r.rows[c * 3 + d][e * 3 + h];
                            if !rr.is_zero() {
                                let p = t(&tm, b, d).mul(&t(&tl, a, c));
                                rhs = add_op(&rhs, &p, rr);
                            }
                        }
                    }
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn add_op(a: &DenseOperator<Rat>, b: &DenseOperator<Rat>, k: &Rat) -> DenseOperator<Rat> {
    let rows = a
        .rows
        .iter()
        .zip(&b.rows)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p.clone() + k.clone() * q.clone()).collect())
        .collect();
    DenseOperator { rows }
}

/// The transfer matrix Σ_k T_{kk}(z).
pub fn transfer_matrix(z: &Rat, chain: &ChainSpec) -> Result<DenseOperator<Rat>> {
    let mut t = DenseOperator { rows: vec![vec![Rat::zero(); chain.dim()]; chain.dim()] };
    for k in 1..=3 {
        t = add_op(&t, &monodromy_entry(k, k, z, chain)?, &Rat::one());
    }
    Ok(t)
}

/// [𝒯(z), 𝒯(w)] = 0.
pub fn transfer_commutes(z: &Rat, w: &Rat, chain: &ChainSpec) -> Result<bool> {
    let (a, b) = (transfer_matrix(z, chain)?, transfer_matrix(w, chain)?);
    Ok(a.mul(&b) == b.mul(&a))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::int(n)
    }

    #[test]
    fn r_matrix_entries() {
        let m = r_matrix::<Rat>(1, &r(3), &r(1)).unwrap();
        assert_eq!(m.rows[0][0], Rat::new(3, 2));
        // block (1,2), component (2,1)
        assert_eq!(m.rows[1][3], Rat::new(1, 2));
        let m2 = r_matrix::<Rat>(2, &r(3), &r(1)).unwrap();
        let d: Vec<Rat> = (0..4).map(|i| m2.rows[i][i].clone()).collect();
        assert_eq!(d, vec![Rat::new(3, 2), r(1), r(1), Rat::new(3, 2)]);
        assert!(r_matrix::<Rat>(1, &r(1), &r(1)).is_err());
    }

    #[test]
    fn one_site() {
        let c = ChainSpec::new(vec![r(0)]).unwrap();
        let v = vacuum::<Rat>(&c);
        let t11 = apply_t(1, 1, &r(2), &c, &v).unwrap();
        assert_eq!(t11, v.scale(&Rat::new(3, 2)));
        assert!(apply_t(2, 1, &r(2), &c, &v).unwrap().is_zero());
    }

    #[test]
    fn eigenvalues() {
        let c = ChainSpec::new(vec![r(0), r(5)]).unwrap();
        let (a1, a2, a3) = vacuum_eigenvalues(&r(2), &c).unwrap();
        assert_eq!(a1, f(&r(2), &r(0)).unwrap() * f(&r(2), &r(5)).unwrap());
        assert_eq!((a2, a3), (r(1), r(1)));
    }

    #[test]
    fn simple_states() {
        let c = ChainSpec::new(vec![r(0), r(5)]).unwrap();
        let v = vacuum::<Rat>(&c);
        assert_eq!(bethe_state::<Rat>(&[], &[], &c).unwrap(), v);
        assert_eq!(bethe_state(&[r(2)], &[], &c).unwrap(), apply_t(1, 2, &r(2), &c, &v).unwrap());
        assert_eq!(bethe_state(&[], &[r(2)], &c).unwrap(), apply_t(2, 3, &r(2), &c, &v).unwrap());
        assert_eq!(dual_bethe_state(&[], &[r(2)], &c).unwrap(), apply_t_left(2, 1, &r(2), &c, &v).unwrap());
        assert_eq!(dual_bethe_state(&[r(2)], &[], &c).unwrap(), apply_t_left(3, 2, &r(2), &c, &v).unwrap());
    }
}
