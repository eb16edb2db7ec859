use super::{Field, Ring};

/// Determinant of a square matrix given as rows. Elimination over `Rat`,
/// Laplace expansion over towers up to size 6.
pub fn det<K: Field>(m: &[Vec<K>]) -> K {
    if K::DEPTH == 0 || m.len() > 6 {
        det_bareiss(m)
    } else {
        det_laplace(m)
    }
}

/// Fraction-free elimination with row swaps on zero pivots.
pub fn det_bareiss<K: Field>(m: &[Vec<K>]) -> K {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    if n == 0 {
        return K::one();
    }
    let mut a: Vec<Vec<K>> = m.to_vec();
    let mut sign = false;
    let mut prev = K::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = !sign;
                }
                None => return K::zero(),
            }
        }
        let prev_inv = prev.inv().expect("nonzero previous pivot");
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v * prev_inv.clone();
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Division-free expansion by minors, memoized over column subsets.
pub fn det_laplace<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "square matrix required");
    assert!(n < 20, "matrix too large for expansion");
    let mut dp: Vec<Option<R>> = vec![None; 1 << n];
    dp[0] = Some(R::one());
    for mask in 1usize..(1 << n) {
        let row = mask.count_ones() as usize - 1;
        let mut acc = R::zero();
        for c in 0..n {
            if mask & (1 << c) == 0 || m[row][c].is_zero() {
                continue;
            }
            let minor = dp[mask & !(1 << c)].as_ref().expect("filled");
            if minor.is_zero() {
                continue;
            }
            let term = m[row][c].clone() * minor.clone();
            let above = (mask >> (c + 1)).count_ones();
            acc = if above % 2 == 0 { acc + term } else { acc - term };
        }
        dp[mask] = Some(acc);
    }
    dp[(1 << n) - 1].take().expect("filled")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Rat, RatFunc};

    fn r(n: i64) -> Rat {
        Rat::int(n)
    }

    #[test]
    fn small_rational() {
        let m = vec![vec![r(1), r(2)], vec![r(3), r(4)]];
        assert_eq!(det(&m), r(-2));
        assert_eq!(det_laplace(&m), r(-2));
        assert_eq!(det::<Rat>(&[]), r(1));
        let z = vec![vec![r(0), r(1), r(2)], vec![r(0), r(3), r(4)], vec![r(5), r(6), r(7)]];
        assert_eq!(det_bareiss(&z), det_laplace(&z));
        assert_eq!(det_bareiss(&z), r(-10));
    }

    #[test]
    fn tower_example() {
        type F = RatFunc<Rat>;
        let t = F::t();
        let a = (t.clone() - F::one()).inv().unwrap();
        let m = vec![vec![a.clone(), F::one()], vec![F::one(), t]];
        assert_eq!(det(&m), a.clone());
        assert_eq!(det_bareiss(&m), a);
    }
}
