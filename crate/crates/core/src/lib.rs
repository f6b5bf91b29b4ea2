//! Exact statistics of RSK shapes for random words, Hankel-determinant tau
//! functions of one-matrix integrals, and residual checks for the
//! Painleve-type equations they satisfy.
//!
//! Everything that can be exact is exact ([`BigRational`], [`BigInt`]);
//! everything continuous runs in MPFR precision through [`rug::Float`].

pub mod asymptotics;
pub mod combinatorics;
pub mod diff;
pub mod error;
pub mod hp;
pub mod linalg;
pub mod measures;
pub mod painleve;
pub mod quadrature;
pub mod tau;

pub use error::{Error, Result};
pub use rug::{Float, Integer as BigInt, Rational as BigRational};
