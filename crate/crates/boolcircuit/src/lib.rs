//! Boolean circuits over the basis {NOT, AND, OR, CONST0, CONST1}.
//!
//! A circuit is a flat gate list in topological order: wires `0..input_count`
//! are the inputs, and the gate at position `p` defines wire
//! `input_count + p`.  Operands always point at earlier wires, so evaluation
//! is a single left-to-right pass.  [`CircuitBuilder`] layers word-level
//! utilities (adders, comparators, multiplexers) on top of the raw gate
//! list; everything is little-endian, bit 0 being the least significant.
//!
//! The crate also hosts the four-bit label words used by the grid labelling
//! circuits: exactly four bit patterns are legal, and bitwise complement
//! corresponds to label negation.

mod builder;
mod circuit;
mod format;
mod label;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CircuitError {
    /// A structurally invalid circuit or an evaluation with mismatched arity.
    #[error("structure error: {0}")]
    Structure(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, CircuitError>;

pub use builder::CircuitBuilder;
pub use circuit::{eliminate_consts, BoolCircuit, Gate};
pub use format::{parse_circuit, render_circuit};
pub use label::{label_word_of, LabelWord, TuckerLabel};
