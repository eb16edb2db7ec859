//! Izergin's domain-wall partition function K and the two-level function Z.

use crate::error::{Error, Result};
use crate::field::{det, Field, Rat, RatFunc, Ring};
use crate::kernel::{f_prod, partition_indices, vandermonde, Orientation};

fn pick<K: Clone>(s: &[K], idx: &[usize]) -> Vec<K> {
    idx.iter().map(|&i| s[i].clone()).collect()
}

fn concat<K: Clone>(a: &[K], b: &[K]) -> Vec<K> {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

/// K(x̄|ȳ) by the Izergin determinant.
pub fn izergin_k<K: Field>(x: &[K], y: &[K]) -> Result<K> {
    if x.len() != y.len() {
        return Err(Error::CardinalityMismatch(format!("K: |x| = {}, |y| = {}", x.len(), y.len())));
    }
    if x.is_empty() {
        return Ok(K::one());
    }
    // Row i carries ∏_j (x_i − y_j + 1), which cancels the h-poles of the entries.
    let one = K::one();
    let mut m = Vec::with_capacity(x.len());
    for xi in x {
        let mut row = Vec::with_capacity(y.len());
        for (j, yj) in y.iter().enumerate() {
            let mut e = (xi.clone() - yj.clone())
                .inv()
                .ok_or_else(|| Error::ZeroDenominator(format!("K entry at ({xi}, {yj})")))?;
            for (k, yk) in y.iter().enumerate() {
                if k != j {
                    e = e * (xi.clone() - yk.clone() + one.clone());
                }
            }
            row.push(e);
        }
        m.push(row);
    }
    let vx = vandermonde(Orientation::Right, x);
    let vy = vandermonde(Orientation::Left, y);
    let vinv = (vx * vy).inv().ok_or_else(|| Error::VandermondeZero("K arguments".into()))?;
    Ok(vinv * det(&m))
}

/// Z(λ̄, μ̄ | w̄, v̄) as a partition sum with |λ̄_II| = |μ̄_II|.
pub fn reshetikhin_z<K: Field>(lam: &[K], mu: &[K], w: &[K], v: &[K]) -> Result<K> {
    if lam.len() != w.len() || mu.len() != v.len() {
        return Err(Error::CardinalityMismatch(format!(
            "Z: |lambda| = {}, |w| = {}, |mu| = {}, |v| = {}",
            lam.len(),
            w.len(),
            mu.len(),
            v.len()
        )));
    }
    let mut acc = K::zero();
    for k in 0..=lam.len().min(mu.len()) {
        for (li, lii) in partition_indices(lam.len(), lam.len() - k) {
            let (l1, l2) = (pick(lam, &li), pick(lam, &lii));
            for (mi, mii) in partition_indices(mu.len(), mu.len() - k) {
                let (m1, m2) = (pick(mu, &mi), pick(mu, &mii));
                let term = f_prod(&m1, &m2)?
                    * f_prod(&l2, &l1)?
                    * f_prod(&m1, &l1)?
                    * izergin_k(&l2, &m2)?
                    * izergin_k(&concat(&l1, &m2), w)?
                    * izergin_k(v, &concat(&m1, &l2))?;
                acc = acc + term;
            }
        }
    }
    Ok(acc)
}

type Eps = RatFunc<Rat>;

fn lift(s: &[Rat]) -> Vec<Eps> {
    s.iter().map(Eps::from_rat).collect()
}

fn shifted(x: &Rat) -> Eps {
    Eps::from_rat(x) + Eps::t()
}

/// LHS − RHS of the residue recursion of Z at λ_ℓ = w_ℓ (`which` = 1)
/// or at v_m = μ_m (`which` = 2), via λ_ℓ = w_ℓ + ε resp. v_m = μ_m + ε.
pub fn z_residue_gap(which: u8, lam: &[Rat], mu: &[Rat], w: &[Rat], v: &[Rat]) -> Result<Rat> {
    match which {
        1 => {
            let l = lam.len();
            if l == 0 || w.len() != l {
                return Err(Error::CardinalityMismatch("need l >= 1".into()));
            }
            let x = w[l - 1].clone();
            let mut le = lift(lam);
            le[l - 1] = shifted(&x);
            let z = reshetikhin_z(&le, &lift(mu), &lift(w), &lift(v))?;
            let lhs = z.residue(&Rat::zero())?;
            let rhs = f_prod(&lam[..l - 1], &[x.clone()])?
                * f_prod(mu, &[x.clone()])?
                * f_prod(&[x], &w[..l - 1])?
                * reshetikhin_z(&lam[..l - 1], mu, &w[..l - 1], v)?;
            Ok(lhs - rhs)
        }
        2 => {
            let m = mu.len();
            if m == 0 || v.len() != m {
                return Err(Error::CardinalityMismatch("need m >= 1".into()));
            }
            let x = mu[m - 1].clone();
            let mut ve = lift(v);
            ve[m - 1] = shifted(&x);
            let z = reshetikhin_z(&lift(lam), &lift(mu), &lift(w), &ve)?;
            let lhs = z.residue(&Rat::zero())?;
            let rhs = f_prod(&[x.clone()], lam)?
                * f_prod(&[x.clone()], &mu[..m - 1])?
                * f_prod(&v[..m - 1], &[x])?
                * reshetikhin_z(lam, &mu[..m - 1], w, &v[..m - 1])?;
            Ok(lhs - rhs)
        }
        _ => Err(Error::Unsupported(format!("Z recursion {which}"))),
    }
}

/// Residue of Z when λ_i approaches μ_j (`lam_side` true) or w_i approaches v_j.
pub fn z_collision_residue(lam_side: bool, i: usize, j: usize, lam: &[Rat], mu: &[Rat], w: &[Rat], v: &[Rat]) -> Result<Rat> {
    let (mut le, me, mut we, ve) = (lift(lam), lift(mu), lift(w), lift(v));
    if lam_side {
        le[i] = shifted(&mu[j]);
    } else {
        we[i] = shifted(&v[j]);
    }
    reshetikhin_z(&le, &me, &we, &ve)?.residue(&Rat::zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::int(n)
    }

    #[test]
    fn izergin_examples() {
        assert_eq!(izergin_k::<Rat>(&[], &[]).unwrap(), r(1));
        assert_eq!(izergin_k(&[r(2)], &[r(0)]).unwrap(), Rat::new(1, 2));
        assert_eq!(izergin_k(&[r(2), r(5)], &[r(0), r(1)]).unwrap(), Rat::new(1, 2));
        assert!(matches!(izergin_k(&[r(2)], &[]), Err(Error::CardinalityMismatch(_))));
    }

    #[test]
    fn z_degenerations() {
        let (l, w) = ([r(3), r(8)], [r(-4), r(13)]);
        assert_eq!(reshetikhin_z(&l, &[], &w, &[]).unwrap(), izergin_k(&l, &w).unwrap());
        assert_eq!(reshetikhin_z(&[], &l, &[], &w).unwrap(), izergin_k(&w, &l).unwrap());
    }

    #[test]
    fn z_small_recursion() {
        assert_eq!(z_residue_gap(2, &[r(9)], &[r(0)], &[r(4)], &[r(6)]).unwrap(), r(0));
        assert_eq!(z_residue_gap(1, &[r(9)], &[r(0)], &[r(4)], &[r(6)]).unwrap(), r(0));
    }
}
