//! Consensus-halving and consensus-1/k-division over exact rationals.
//!
//! Instances hold step-function measures that each integrate to exactly 1
//! over a shared domain `[0, x]`. Solutions are cut lists: alternating
//! A+/A- labels for halving, an explicit part assignment for division.
//! Verifiers compute every agent's view of every part with no rounding at
//! any point, so `valid` means the tolerance holds bit-exactly.

use thiserror::Error;

mod division;
mod format;
mod halving;

pub use division::{verify_division, DivisionInstance, DivisionReport, DivisionSolution};
pub use format::{
    parse_ch_instance, parse_cut_labelling, parse_division_instance, parse_division_solution,
    render_ch_instance, render_cut_labelling, render_division_instance, render_division_solution,
};
pub use halving::{
    normalize_labelling, renormalize, signed_balances, verify_halving, CHInstance, CutLabelling,
    HalvingReport, Label,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeasureError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("structure error: {0}")]
    Structure(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<exact_arith::ArithError> for MeasureError {
    fn from(e: exact_arith::ArithError) -> Self {
        match e {
            exact_arith::ArithError::Domain(m) => MeasureError::Domain(m),
            exact_arith::ArithError::Parse(m) => MeasureError::Parse(m),
            exact_arith::ArithError::Argument(m) | exact_arith::ArithError::Structure(m) => {
                MeasureError::Structure(m)
            }
        }
    }
}

pub type Result<T> = std::result::Result<T, MeasureError>;
