//! Exact integer and rational arithmetic, plus the closed forms for the
//! element-order sum of cyclic groups.
//!
//! Nothing in this module touches floating point. Every ratio is a
//! [`Rational`] in lowest terms, so equalities and strict inequalities are
//! decided exactly.

mod factor;
mod psi;
mod rational;

pub use factor::{euler_phi, factorize, is_prime, multiplicative_order, Factorization, PrimeSieve};
pub use psi::{cyclic_lower_bound, f_ratio, f_value, psi_cyclic, psi_cyclic_oracle, psi_cyclic_prime_power};
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("argument must be positive, got 0")]
    Zero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} has no prime divisors")]
    NoPrimeDivisor(u64),
    #[error("{0} is not a unit modulo {1}")]
    NotUnit(u64, u64),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("malformed rational literal {0:?}")]
    Parse(String),
}
