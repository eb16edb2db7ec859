//! Exact arithmetic: rationals, univariate polynomials, reduced rational
//! functions over any field, and determinants.
//!
//! `RatFunc<RatFunc<Rat>>` and deeper nestings form towers of function
//! fields; level 0 is the innermost variable.

mod matrix;
mod poly;
mod rat;
mod ratfunc;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use matrix::{det, det_bareiss, det_laplace};
pub use poly::Poly;
pub use rat::{ParseRatError, Rat};
pub use ratfunc::{rf_limit_scaled_infinity, rf_residue, RatFunc};

/// Commutative ring with rational constants.
pub trait Ring:
    Clone
    + fmt::Debug
    + Send
    + Sync
    + Sized
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rat(r: &Rat) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_rat(&Rat::int(n))
    }

    fn pow_u(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

/// A field with canonical equality. `DEPTH` counts the symbolic variables of a tower.
pub trait Field: Ring + PartialEq + fmt::Display {
    const DEPTH: usize;

    fn inv(&self) -> Option<Self>;

    /// The tower variable at `level` (0 = innermost). Panics if `level >= DEPTH`.
    fn var(level: usize) -> Self;

    fn try_div(&self, d: &Self) -> Option<Self> {
        d.inv().map(|i| self.clone() * i)
    }

    /// Integer power, negative exponents allowed for nonzero elements.
    fn powi(&self, e: i32) -> Option<Self> {
        let b = if e < 0 { self.inv()? } else { self.clone() };
        Some(b.pow_u(e.unsigned_abs()))
    }
}

impl Ring for Rat {
    fn zero() -> Self {
        Rat::zero()
    }
    fn one() -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl Field for Rat {
    const DEPTH: usize = 0;

    fn inv(&self) -> Option<Self> {
        self.checked_inv()
    }

    fn var(level: usize) -> Self {
        panic!("Rat has no variables (requested level {level})")
    }
}
