use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Field;

/// Univariate polynomial, coefficients in ascending order with no trailing zeros.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<K> {
    c: Vec<K>,
}

impl<K: Field> Poly<K> {
    pub fn from_coeffs(mut c: Vec<K>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(k: K) -> Self {
        Self::from_coeffs(vec![k])
    }

    /// The monomial t.
    pub fn t() -> Self {
        Poly { c: vec![K::zero(), K::one()] }
    }

    /// t − a
    pub fn linear_root(a: &K) -> Self {
        Poly { c: vec![-a.clone(), K::one()] }
    }

    pub fn coeffs(&self) -> &[K] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&K> {
        self.c.last()
    }

    /// The constant polynomial's value, if this is constant.
    pub fn as_constant(&self) -> Option<K> {
        match self.c.len() {
            0 => Some(K::zero()),
            1 => Some(self.c[0].clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0] == K::one()
    }

    pub fn eval(&self, a: &K) -> K {
        let mut acc = K::zero();
        for x in self.c.iter().rev() {
            acc = acc * a.clone() + x.clone();
        }
        acc
    }

    pub fn scale(&self, k: &K) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Poly { c: self.c.iter().map(|x| x.clone() * k.clone()).collect() }
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| x.clone() * K::from_int(i as i64))
            .collect();
        Self::from_coeffs(c)
    }

    /// Euclidean division. Panics if `d` is zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.c[dd].inv().expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![K::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let coef = r[i + dd].clone() * lead_inv.clone();
            if coef.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[i + j] = r[i + j].clone() - coef.clone() * dj.clone();
            }
            q[i] = coef;
        }
        r.truncate(dd);
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Scales to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) if *l == K::one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
        }
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            if y.degree() == Some(0) {
                return Self::one();
            }
            let (_, r) = x.divrem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    /// Exact quotient; debug-asserts a zero remainder.
    pub fn exact_div(&self, d: &Self) -> Self {
        if d.is_one() {
            return self.clone();
        }
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero());
        q
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![K::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(c)
    }

    fn add_ref(&self, o: &Self, sign: bool) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.c.get(i).cloned().unwrap_or_else(K::zero);
            let b = o.c.get(i).cloned().unwrap_or_else(K::zero);
            c.push(if sign { a + b } else { a - b });
        }
        Self::from_coeffs(c)
    }
}

impl<'a, K: Field> Add<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn add(self, o: &'a Poly<K>) -> Poly<K> {
        self.add_ref(o, true)
    }
}

impl<'a, K: Field> Sub<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn sub(self, o: &'a Poly<K>) -> Poly<K> {
        self.add_ref(o, false)
    }
}

impl<'a, K: Field> Mul<&'a Poly<K>> for &'a Poly<K> {
    type Output = Poly<K>;
    fn mul(self, o: &'a Poly<K>) -> Poly<K> {
        self.mul_ref(o)
    }
}

impl<K: Field> Add for Poly<K> {
    type Output = Poly<K>;
    fn add(self, o: Poly<K>) -> Poly<K> {
        self.add_ref(&o, true)
    }
}

impl<K: Field> Sub for Poly<K> {
    type Output = Poly<K>;
    fn sub(self, o: Poly<K>) -> Poly<K> {
        self.add_ref(&o, false)
    }
}

impl<K: Field> Mul for Poly<K> {
    type Output = Poly<K>;
    fn mul(self, o: Poly<K>) -> Poly<K> {
        self.mul_ref(&o)
    }
}

impl<K: Field> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        Poly { c: self.c.into_iter().map(|x| -x).collect() }
    }
}

impl<K: Field> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        let var = format!("t{}", K::DEPTH);
        let mut first = true;
        for (i, x) in self.c.iter().enumerate().rev() {
            if x.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({x})")?,
                1 => write!(f, "({x})*{var}")?,
                _ => write!(f, "({x})*{var}^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    fn p(c: &[i64]) -> Poly<Rat> {
        Poly::from_coeffs(c.iter().map(|&x| Rat::int(x)).collect())
    }

    #[test]
    fn divrem_roundtrip() {
        let a = p(&[5, 0, 3, 1]);
        let d = p(&[-1, 2]);
        let (q, r) = a.divrem(&d);
        assert_eq!(&(&q * &d) + &r, a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let common = p(&[-2, 1]);
        let a = &common * &p(&[1, 1]);
        let b = &common * &p(&[3, 0, 1]);
        assert_eq!(Poly::gcd(&a, &b), common);
        assert_eq!(Poly::gcd(&p(&[2]), &p(&[0, 1])), p(&[1]));
    }

    #[test]
    fn degree_and_eval() {
        let a = p(&[1, 2]);
        let b = p(&[0, 0, 3]);
        assert_eq!((&a * &b).degree(), Some(3));
        let x = Rat::new(2, 3);
        assert_eq!((&a * &b).eval(&x), a.eval(&x) * b.eval(&x));
        assert_eq!(Poly::<Rat>::zero().degree(), None);
    }
}
