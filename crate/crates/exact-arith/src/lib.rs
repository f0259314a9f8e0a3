//! Exact rational arithmetic, intervals, and piecewise-constant step functions.
//!
//! Everything downstream (instances, solvers, reductions, verifiers) computes
//! over these types. There is no floating point anywhere: measures carry
//! inverse-exponential tolerances, so all arithmetic is exact `BigRational`.

mod interval;
mod rational;
mod step;

pub use interval::Interval;
pub use rational::{abs, parse_rational, pow2, rat, render, rint, Rational};
pub use step::{union_breakpoints, StepFunction};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("argument error: {0}")]
    Argument(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, ArithError>;
