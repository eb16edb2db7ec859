//! Exact scalar products of SU(3) Bethe vectors.
//!
//! Four independent routes compute the normalized scalar product
//! 𝒮_{ℓ,m}(μ̄ᴮ, λ̄ᴮ | λ̄ᶜ, μ̄ᶜ): the double-partition sum
//! ([`scalar_sum`]), the finite recursion and the two multiple-integral
//! formulas ([`integral`]), and direct contraction on a fundamental spin
//! chain ([`lattice`]). All arithmetic is exact.

pub mod error;
pub mod field;
pub mod integral;
pub mod kernel;
pub mod lattice;
pub mod partition_functions;
pub mod scalar_sum;
pub mod slavnov;
pub mod symbolic;

pub use error::{Error, Result};
pub use field::{Field, Rat, RatFunc, Ring};
pub use kernel::{RKind, RTable, VarSet};
pub use scalar_sum::SPInput;
