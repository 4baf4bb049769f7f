//! Exact rational arithmetic, symmetric matrices and polynomial sign tests.

mod matrix;
mod poly;
mod rational;

pub use matrix::{psd2_radical_cross, psd_check, SymMatrix, MAX_ORDER};
pub use poly::{poly_nonneg_on_interval, Polynomial, SturmChain};
pub use rational::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse rational: {0}")]
    Parse(String),
    #[error("matrix order {0} outside 1..=8")]
    MatrixOrder(usize),
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("negative radicand")]
    NegativeRadicand,
}
