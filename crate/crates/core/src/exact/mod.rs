//! Exact arithmetic: rationals, cyclotomic fields Q(ζ_N), and dense linear
//! algebra over them. Floating point only enters through `to_complex`.

mod cyclotomic;
mod matrix;
pub mod poly;
mod rational;

pub use cyclotomic::{Cyclotomic, RootOfUnity};
pub use matrix::{ExactMatrix, Solution};
pub use poly::cyclotomic_polynomial;
pub use rational::Rational;

/// Largest conductor any intermediate result may reach.
pub const MAX_CONDUCTOR: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor {conductor} exceeds the cap of {cap}")]
    ConductorOverflow { conductor: u64, cap: u64 },
    #[error("conductor {conductor} needs {expected} coefficients, got {got}")]
    CoefficientLength { conductor: u64, expected: usize, got: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
