//! Exact scalars: rationals, cyclotomic fields, and integer lattices.

mod cyclotomic;
pub mod lattice;
mod rational;

use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic};
pub use rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithmeticError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u32, u32),
    #[error("invalid conductor {0}")]
    BadConductor(u32),
    #[error("conductor {conductor} needs {expected} coefficients, got {found}")]
    CoefficientLength {
        conductor: u32,
        expected: usize,
        found: usize,
    },
    #[error("cannot parse rational literal {0:?}")]
    Parse(String),
}
