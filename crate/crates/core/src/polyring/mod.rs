//! Exact sparse multivariate polynomials over the variable families
//! `x_1..x_n`, `y_1..y_n`, `z_1..z_n` with arbitrary-precision rational
//! coefficients.

mod formal;
mod monomial;
mod newton;
mod polynomial;
pub mod rational;
mod symmetric;

pub use formal::{FormalMonomial, FormalPoly};
pub use monomial::{Family, Monomial, MonomialOrder, Var};
pub use newton::{expand_elementary, expand_power_sums, newton_convert, power_sum_in_elementary};
pub use polynomial::{Polynomial, Substitution};
pub use rational::Rational;
pub use symmetric::{elementary_symmetric, elementary_symmetric_in_powers, power_sum, two_var_power_sum};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("no replacement given for variable {0}")]
    MissingReplacement(Var),
    #[error("power sum of exponent zero is a constant and is excluded")]
    ZeroPowerSum,
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("rank must be positive")]
    ZeroRank,
    #[error("malformed coefficient {0:?}")]
    BadCoefficient(String),
}
