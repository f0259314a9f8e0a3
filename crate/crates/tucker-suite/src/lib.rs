//! Labelled-grid instances and the reductions between them.
//!
//! Three instance families share a common shape: a square grid whose cells
//! ("squarelets") carry labels from {+1, -1, +2, -2}, computed by a boolean
//! circuit over the binary encoding of the coordinates.  Plain instances
//! impose antipodal boundary conditions; the monochromatic variant
//! additionally pins the bottom row to +1 and the top row to -1; the
//! continuous variant labels dyadic points of the unit square through a
//! tile decomposition, with a four-bit output word per point.
//!
//! The crate provides constraint checkers, exhaustive solution search at
//! small grid sizes, and the two reductions: boundary-propagation embedding
//! of a plain instance into a monochromatic one three times the width, and
//! the tile-based continuous labelling built from a monochromatic instance,
//! each with a `map_back` sending solutions of the target instance to
//! solutions of the source.

mod format;
mod grid;
mod ms;
mod tiles;
mod tucker;
mod vt;
mod vtcircuit;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TuckerError {
    /// Coordinates outside the instance's grid or domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// Structurally invalid instances, circuits, or solutions.
    #[error("structure error: {0}")]
    Structure(String),
    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<boolcircuit::CircuitError> for TuckerError {
    fn from(e: boolcircuit::CircuitError) -> Self {
        match e {
            boolcircuit::CircuitError::Structure(m) => TuckerError::Structure(m),
            boolcircuit::CircuitError::Parse(m) => TuckerError::Parse(m),
        }
    }
}

pub type Result<T> = std::result::Result<T, TuckerError>;

pub use boolcircuit::{label_word_of, LabelWord, TuckerLabel};
pub use format::{
    parse_grid_solution, parse_ms_instance, parse_tucker_instance, parse_vt_instance,
    parse_vt_solution, render_grid_solution, render_ms_instance, render_tucker_instance,
    render_vt_instance, render_vt_solution,
};
pub use grid::{labeller_from_table, GridSolution, SearchReport};
pub use ms::{
    all_ms_solutions, check_ms_constraints, find_ms_solution, reduce_tucker_to_ms,
    MSTuckerInstance, TuckerMsReduction,
};
pub use tiles::{
    squarelet_tile, tile_indices, tile_of, tile_of_cell, tiles_edge_adjacent, tiles_touch,
    Subregion, Tile, TILE_TEMPLATE,
};
pub use tucker::{
    all_tucker_solutions, check_tucker_constraints, find_tucker_solution, TuckerInstance,
};
pub use vt::{
    check_vt_constraints, find_vt_solution, reduce_ms_to_variant, verify_vt_solution,
    MsVtReduction, VTSolution, VariantTuckerInstance, VtReport, VtSearchReport, VtSemantic,
};

pub(crate) fn ceil_log2(x: u64) -> u32 {
    assert!(x >= 1);
    if x == 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}
