//! Exact arithmetic: rationals, the π/radical scalar field, sparse
//! polynomials and truncated series.

pub mod poly;
pub mod rational;
pub mod scalar;
pub mod series;

pub use poly::{expand_product, LinearForm, Monomial, SparsePoly};
pub use rational::{
    factorial, factorial_rat, format_rational, frac, parse_rational, rat, Rational,
};
pub use scalar::{omega, ExactScalar};
pub use series::truncated_series;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("cannot add scalars with different powers of pi ({left} vs {right})")]
    PiPowerMismatch { left: i32, right: i32 },
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
    #[error("square root of negative rational {0}")]
    NegativeRadicand(String),
}
