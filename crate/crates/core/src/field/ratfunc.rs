use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Poly, Ring};
use crate::error::{Error, Result};

/// Reduced rational function num/den over `K`, den monic and coprime to num.
#[derive(Clone, PartialEq, Debug)]
pub struct RatFunc<K> {
    num: Poly<K>,
    den: Poly<K>,
}

impl<K: Field> RatFunc<K> {
    /// Returns `None` when `den` is zero.
    pub fn new(num: Poly<K>, den: Poly<K>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero_rf());
        }
        let g = Poly::gcd(&num, &den);
        let (n, d) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        Some(Self::normalize(n, d))
    }

    fn normalize(num: Poly<K>, den: Poly<K>) -> Self {
        let l = den.lead().expect("nonzero den").clone();
        if l == K::one() {
            RatFunc { num, den }
        } else {
            let li = l.inv().expect("nonzero lead");
            RatFunc { num: num.scale(&li), den: den.scale(&li) }
        }
    }

    fn zero_rf() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn from_poly(p: Poly<K>) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    pub fn constant(k: K) -> Self {
        Self::from_poly(Poly::constant(k))
    }

    /// The variable of this level.
    pub fn t() -> Self {
        Self::from_poly(Poly::t())
    }

    pub fn num(&self) -> &Poly<K> {
        &self.num
    }

    pub fn den(&self) -> &Poly<K> {
        &self.den
    }

    /// The value if this function does not depend on the variable.
    pub fn as_constant(&self) -> Option<K> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn eval_at(&self, a: &K) -> Result<K> {
        let d = self.den.eval(a);
        let i = d.inv().ok_or_else(|| Error::ZeroDenominator(format!("evaluation at {a}")))?;
        Ok(self.num.eval(a) * i)
    }

    /// Residue at t = a for at most a simple pole.
    pub fn residue(&self, a: &K) -> Result<K> {
        if !self.den.eval(a).is_zero() {
            return Ok(K::zero());
        }
        let (rest, _) = self.den.divrem(&Poly::linear_root(a));
        let rest_at = rest.eval(a);
        if rest_at.is_zero() {
            let mut order = 2;
            let mut q = rest;
            loop {
                let (q2, _) = q.divrem(&Poly::linear_root(a));
                if !q2.eval(a).is_zero() {
                    break;
                }
                q = q2;
                order += 1;
            }
            return Err(Error::PoleOrder { point: a.to_string(), order });
        }
        Ok(self.num.eval(a) * rest_at.inv().expect("nonzero"))
    }

    /// lim_{t→∞} t^k F(t).
    pub fn limit_scaled_infinity(&self, k: i64) -> Result<K> {
        let Some(nd) = self.num.degree() else {
            return Ok(K::zero());
        };
        let dd = self.den.degree().expect("nonzero den");
        let lhs = nd as i64 + k;
        if lhs > dd as i64 {
            return Err(Error::DivergentLimit { num_deg: nd, den_deg: dd, k });
        }
        if lhs < dd as i64 {
            return Ok(K::zero());
        }
        Ok(self.num.lead().expect("nonzero").clone())
    }

    fn add_impl(&self, o: &Self, sign: bool) -> Self {
        let combine = |a: &Poly<K>, b: &Poly<K>| if sign { a + b } else { a - b };
        if self.den == o.den {
            let n = combine(&self.num, &o.num);
            if self.den.is_one() {
                return RatFunc { num: n, den: Poly::one() };
            }
            return Self::new(n, self.den.clone()).expect("nonzero den");
        }
        if o.den.is_one() {
            let n = combine(&self.num, &(&o.num * &self.den));
            return RatFunc { num: n, den: self.den.clone() };
        }
        if self.den.is_one() {
            let n = combine(&(&self.num * &o.den), &o.num);
            return RatFunc { num: n, den: o.den.clone() };
        }
        let g = Poly::gcd(&self.den, &o.den);
        let sd = self.den.exact_div(&g);
        let od = o.den.exact_div(&g);
        let n = combine(&(&self.num * &od), &(&o.num * &sd));
        let d = &sd * &o.den;
        Self::new(n, d).expect("nonzero den")
    }

    fn mul_impl(&self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero_rf();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: &self.num * &o.num, den: Poly::one() };
        }
        let g1 = Poly::gcd(&self.num, &o.den);
        let g2 = Poly::gcd(&o.num, &self.den);
        let n = &self.num.exact_div(&g1) * &o.num.exact_div(&g2);
        let d = &self.den.exact_div(&g2) * &o.den.exact_div(&g1);
        Self::normalize(n, d)
    }
}

/// Residue of `f` at `a`; see [`RatFunc::residue`].
pub fn rf_residue<K: Field>(f: &RatFunc<K>, a: &K) -> Result<K> {
    f.residue(a)
}

/// lim_{t→∞} t^k f(t); see [`RatFunc::limit_scaled_infinity`].
pub fn rf_limit_scaled_infinity<K: Field>(f: &RatFunc<K>, k: i64) -> Result<K> {
    f.limit_scaled_infinity(k)
}

impl<K: Field> Add for RatFunc<K> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_impl(&o, true)
    }
}

impl<K: Field> Sub for RatFunc<K> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.add_impl(&o, false)
    }
}

impl<K: Field> Mul for RatFunc<K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_impl(&o)
    }
}

impl<K: Field> Neg for RatFunc<K> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl<K: Field> Ring for RatFunc<K> {
    fn zero() -> Self {
        Self::zero_rf()
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_rat(r: &crate::field::Rat) -> Self {
        Self::constant(K::from_rat(r))
    }
}

impl<K: Field> Field for RatFunc<K> {
    const DEPTH: usize = K::DEPTH + 1;

    fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::normalize(self.den.clone(), self.num.clone()))
    }

    fn var(level: usize) -> Self {
        if level == K::DEPTH {
            Self::t()
        } else {
            assert!(level < K::DEPTH, "tower level {level} out of range");
            Self::constant(K::var(level))
        }
    }
}

impl<K: Field> fmt::Display for RatFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "[{}]/[{}]", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rat;

    type F = RatFunc<Rat>;

    fn t() -> F {
        F::t()
    }

    fn c(n: i64) -> F {
        F::from_int(n)
    }

    #[test]
    fn residues() {
        let f = (t() - c(2)).inv().unwrap();
        assert_eq!(rf_residue(&f, &Rat::int(2)).unwrap(), Rat::int(1));
        let g = (t() + c(1)) * ((t() - c(1)) * (t() - c(3))).inv().unwrap();
        assert_eq!(rf_residue(&g, &Rat::int(1)).unwrap(), Rat::int(-1));
        assert_eq!(rf_residue(&g, &Rat::int(0)).unwrap(), Rat::zero());
        let h = ((t() - c(1)) * (t() - c(1))).inv().unwrap();
        assert!(matches!(rf_residue(&h, &Rat::int(1)), Err(Error::PoleOrder { order: 2, .. })));
    }

    #[test]
    fn limits() {
        let f = (t() - c(1)).inv().unwrap();
        assert_eq!(rf_limit_scaled_infinity(&f, 1).unwrap(), Rat::int(1));
        let g = (c(3) * t() + c(5)) * (t() * t() + c(1)).inv().unwrap();
        assert_eq!(rf_limit_scaled_infinity(&g, 1).unwrap(), Rat::int(3));
        let h = t() * (t() - c(1)).inv().unwrap();
        assert!(matches!(rf_limit_scaled_infinity(&h, 1), Err(Error::DivergentLimit { .. })));
    }

    #[test]
    fn canonical_equality() {
        let a = (t() * t() - c(1)) * (t() - c(1)).inv().unwrap();
        assert_eq!(a, t() + c(1));
        let b = (c(2) * t() + c(4)) * (c(2) * t()).inv().unwrap();
        assert!(b.den().lead().unwrap().is_one());
        assert_eq!(b, (t() + c(2)) * t().inv().unwrap());
    }
}
