//! Exact numerics for sheaves on the projective plane.
//!
//! The crate covers the exceptional-bundle tree (the `ε` map, the `×` law and
//! interval half-widths), the existence curves `δ` and `δ′`, the decision
//! procedure for generic prioritary sheaves, and Kronecker-module numerology
//! with exhaustive stability checks over prime fields.
//!
//! Everything is computed in exact arithmetic. Quadratic irrationals
//! `a + b√d` are handled by [`arith::Quad`], generic over the integer type;
//! the geometric layers use the big-integer instantiation exposed here as
//! [`Rational`] and [`QuadValue`].

pub mod arith;
pub mod boundary;
pub mod chern;
pub mod classifier;
mod error;
pub mod exceptional;
pub mod kronecker;
pub mod triads;

pub use error::{Error, Result};

pub use num_bigint::BigInt;

/// Exact rational number, always in lowest terms with a positive denominator.
pub type Rational = num_rational::Ratio<BigInt>;

/// `a + b√d` over [`Rational`].
pub type QuadValue = arith::Quad<BigInt>;

pub use boundary::{delta, delta_prime, exists_prioritary, in_region_s, semistable_status};
pub use chern::{ChernData, SlopeDisc};
pub use classifier::{classify, reassemble, Classification};
pub use exceptional::{ExceptionalBundle, ExceptionalTree};
pub use triads::Triad;
