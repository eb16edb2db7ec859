//! Slavnov determinants and the extended (ℓ+m)×(ℓ+m) determinants that
//! enter the multiple-integral formulas.

use crate::error::{Error, Result};
use crate::field::{det, det_laplace, Field, Rat};
use crate::kernel::{vandermonde, Orientation, RKind, RTable};
use crate::scalar_sum::SPInput;
use crate::symbolic::{ag, Affine, Algebra};

fn inv_or<K: Field>(x: K, what: impl FnOnce() -> String) -> Result<K> {
    x.inv().ok_or_else(|| Error::ZeroDenominator(what()))
}

/// S⁽¹⁾_j(μ̄,λ̄|z) (kind R1) or S⁽³⁾_j(μ̄,λ̄|z) (kind R3). The r-value at z is
/// only looked up when its coefficient is nonzero.
pub fn entry<K: Field>(kind: RKind, mu: &[K], lam: &[K], z: &K, j: usize, r: &RTable<K>) -> Result<K> {
    let one = K::one();
    let ctx = || format!("S{}_{j} at {z}", kind.index());
    match kind {
        RKind::R1 => {
            let mut p = K::one();
            for m in mu {
                let d = m.clone() - z.clone();
                p = p * d.clone() * inv_or(d + one.clone(), ctx)?;
            }
            let mut q = K::one();
            if !p.is_zero() {
                for (k, l) in lam.iter().enumerate() {
                    if k != j {
                        p = p * (l.clone() - z.clone() + one.clone());
                    }
                }
                p = p * r.get(RKind::R1, z)?;
            }
            for (k, l) in lam.iter().enumerate() {
                if k != j {
                    q = q * (l.clone() - z.clone() - one.clone());
                }
            }
            Ok((p - q) * inv_or(lam[j].clone() - z.clone(), ctx)?)
        }
        RKind::R3 => {
            let mut p = K::one();
            for l in lam {
                let d = z.clone() - l.clone();
                p = p * d.clone() * inv_or(d + one.clone(), ctx)?;
            }
            if !p.is_zero() {
                for (k, m) in mu.iter().enumerate() {
                    if k != j {
                        p = p * (m.clone() - z.clone() - one.clone());
                    }
                }
                p = p * r.get(RKind::R3, z)?;
            }
            let mut q = K::one();
            for (k, m) in mu.iter().enumerate() {
                if k != j {
                    q = q * (m.clone() - z.clone() + one.clone());
                }
            }
            Ok((q - p) * inv_or(mu[j].clone() - z.clone(), ctx)?)
        }
    }
}

/// The matrix entry at `row_point`, column j, of the determinant of the given kind.
pub fn slavnov_entry(kind: RKind, s: &SPInput<Rat>, row_point: &Rat, j: usize) -> Result<Rat> {
    entry(kind, &s.mu_b, &s.lam_b, row_point, j, &s.r)
}

/// det S_j(μ̄,λ̄|rows_i) with its Vandermonde prefactor: columns run over
/// λ̄ (kind R1) or μ̄ (kind R3).
pub fn slavnov_det_sets<K: Field>(kind: RKind, mu: &[K], lam: &[K], rows: &[K], r: &RTable<K>) -> Result<K> {
    let cols = match kind {
        RKind::R1 => lam,
        RKind::R3 => mu,
    };
    if cols.len() != rows.len() {
        return Err(Error::CardinalityMismatch(format!("{} columns, {} rows", cols.len(), rows.len())));
    }
    let mut m = Vec::with_capacity(rows.len());
    for z in rows {
        let row = (0..cols.len()).map(|j| entry(kind, mu, lam, z, j, r)).collect::<Result<Vec<_>>>()?;
        m.push(row);
    }
    let v = match kind {
        RKind::R1 => vandermonde(Orientation::Right, lam) * vandermonde(Orientation::Left, rows),
        RKind::R3 => vandermonde(Orientation::Left, mu) * vandermonde(Orientation::Right, rows),
    };
    let v = v.inv().ok_or_else(|| Error::VandermondeZero("Slavnov prefactor".into()))?;
    Ok(det(&m) * v)
}

/// 𝒮_{ℓ,0} (kind R1, needs m = 0) or 𝒮_{0,m} (kind R3, needs ℓ = 0) as a
/// Slavnov determinant. Equal to the scalar product when the B-side is on-shell.
pub fn slavnov_det(kind: RKind, s: &SPInput<Rat>) -> Result<Rat> {
    match kind {
        RKind::R1 => {
            if s.m() != 0 {
                return Err(Error::CardinalityMismatch(format!("kind 1 determinant needs m = 0, got {}", s.m())));
            }
            slavnov_det_sets(kind, &[], &s.lam_b, &s.lam_c, &s.r)
        }
        RKind::R3 => {
            if s.ell() != 0 {
                return Err(Error::CardinalityMismatch(format!("kind 3 determinant needs l = 0, got {}", s.ell())));
            }
            slavnov_det_sets(kind, &s.mu_b, &[], &s.mu_c, &s.r)
        }
    }
}

fn c(x: &Rat) -> Affine {
    Affine::constant(x.clone())
}

/// The extended determinant 𝕊⁽¹⁾ (|x̄| = |ȳ| = m) or 𝕊⁽³⁾ (|x̄| = |ȳ| = ℓ)
/// with its prefactor, over any algebra containing the affine forms x̄, ȳ.
pub fn extended_slavnov<A: Algebra>(kind: RKind, s: &SPInput<Rat>, xs: &[Affine], ys: &[Affine]) -> Result<A> {
    let n = match kind {
        RKind::R1 => s.m(),
        RKind::R3 => s.ell(),
    };
    if xs.len() != n || ys.len() != n {
        return Err(Error::CardinalityMismatch(format!("expected {n} x and y variables, got {} and {}", xs.len(), ys.len())));
    }
    let (mb, lb, lc, mc) = (&s.mu_b[..], &s.lam_b[..], &s.lam_c[..], &s.mu_c[..]);
    let mut m: Vec<Vec<A>> = Vec::new();
    let pref: A;
    let vdm: Rat;
    match kind {
        RKind::R1 => {
            let rows: Vec<Rat> = lc.iter().chain(mb.iter()).cloned().collect();
            for z in &rows {
                let mut row = Vec::with_capacity(rows.len());
                for j in 0..lb.len() {
                    row.push(A::from_rat(&entry(RKind::R1, mb, lb, z, j, &s.r)?));
                }
                for x in xs {
                    row.push(ag::<A>(x, &c(z))?);
                }
                m.push(row);
            }
            let mut p = A::one();
            for mu in mc {
                for y in ys {
                    p = p * ag::<A>(&c(mu), y)?;
                }
            }
            for x in xs {
                for mu in mb {
                    p = p * A::affine(&x.minus(&c(mu)))?;
                }
            }
            pref = p;
            vdm = vandermonde(Orientation::Right, lb) * vandermonde(Orientation::Left, &rows);
        }
        RKind::R3 => {
            let rows: Vec<Rat> = lb.iter().chain(mc.iter()).cloned().collect();
            for z in &rows {
                let mut row = Vec::with_capacity(rows.len());
                for y in ys {
                    row.push(ag::<A>(y, &c(z))?);
                }
                for j in 0..mb.len() {
                    row.push(A::from_rat(&entry(RKind::R3, mb, lb, z, j, &s.r)?));
                }
                m.push(row);
            }
            let mut p = A::one();
            for x in xs {
                for l in lc {
                    p = p * ag::<A>(x, &c(l))?;
                }
            }
            for l in lb {
                for y in ys {
                    p = p * A::affine(&c(l).minus(y))?;
                }
            }
            pref = p;
            let cl: Vec<Rat> = mc.iter().chain(lb.iter()).cloned().collect();
            vdm = vandermonde(Orientation::Left, mb) * vandermonde(Orientation::Right, &cl);
        }
    }
    let vinv = vdm.checked_inv().ok_or_else(|| Error::VandermondeZero("extended determinant prefactor".into()))?;
    Ok(pref * det_laplace(&m) * A::from_rat(&vinv))
}

/// [`extended_slavnov`] at rational x̄, ȳ.
pub fn extended_slavnov_at(kind: RKind, s: &SPInput<Rat>, xs: &[Rat], ys: &[Rat]) -> Result<Rat> {
    let xa: Vec<Affine> = xs.iter().map(c).collect();
    let ya: Vec<Affine> = ys.iter().map(c).collect();
    extended_slavnov::<Rat>(kind, s, &xa, &ya)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{RatFunc, Ring};
    use crate::kernel::VarSet;

    fn r(n: i64) -> Rat {
        Rat::int(n)
    }

    fn std1() -> SPInput<Rat> {
        let t = RTable::new().with(RKind::R1, r(0), r(5));
        SPInput::onshell(VarSet::empty(), VarSet::ints(&[1]), VarSet::ints(&[0]), VarSet::empty(), &t).unwrap()
    }

    fn std3() -> SPInput<Rat> {
        let t = RTable::new().with(RKind::R3, r(0), r(3));
        SPInput::onshell(VarSet::ints(&[1]), VarSet::empty(), VarSet::empty(), VarSet::ints(&[0]), &t).unwrap()
    }

    #[test]
    fn entry_examples() {
        assert_eq!(slavnov_entry(RKind::R1, &std1(), &r(0), 0).unwrap(), r(4));
        assert_eq!(slavnov_entry(RKind::R3, &std3(), &r(0), 0).unwrap(), r(-2));
        let t = RTable::new().with(RKind::R1, r(0), r(0));
        let v = entry(RKind::R1, &[], &[r(3), r(7)], &r(0), 0, &t).unwrap();
        assert_eq!(v, -(r(7) - r(1)) / r(3));
    }

    #[test]
    fn det_examples() {
        assert_eq!(slavnov_det(RKind::R1, &std1()).unwrap(), r(4));
        assert_eq!(slavnov_det(RKind::R3, &std3()).unwrap(), r(-2));
        let e = SPInput::new(VarSet::empty(), VarSet::empty(), VarSet::empty(), VarSet::empty(), RTable::new()).unwrap();
        assert_eq!(slavnov_det(RKind::R1, &e).unwrap(), r(1));
        assert!(slavnov_det(RKind::R1, &std3()).is_err());
    }

    #[test]
    fn extended_reduces() {
        assert_eq!(extended_slavnov_at(RKind::R1, &std1(), &[], &[]).unwrap(), r(4));
        assert_eq!(extended_slavnov_at(RKind::R3, &std3(), &[], &[]).unwrap(), r(-2));
    }

    #[test]
    fn extended_one_by_one() {
        // g(μᶜ₁, y) as a function of y, with x cancelling
        type T = RatFunc<RatFunc<Rat>>;
        let s = std3();
        let e: T = extended_slavnov(RKind::R1, &s, &[Affine::var(0)], &[Affine::var(1)]).unwrap();
        let y = T::var(0);
        assert_eq!(e, (T::from_int(0) - y).inv().unwrap());
    }
}
