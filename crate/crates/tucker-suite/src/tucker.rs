use crate::grid::{self, SearchReport};
use crate::{Result, TuckerError};
use boolcircuit::{BoolCircuit, TuckerLabel};

/// A labelled grid of side 2^n.  Squarelets are addressed 1-based; the
/// labelling circuit takes both zero-based coordinates little-endian at
/// n bits each (x first) and produces the two label bits.
#[derive(Debug, Clone)]
pub struct TuckerInstance {
    n: u32,
    labeller: BoolCircuit,
}

impl TuckerInstance {
    pub fn new(n: u32, labeller: BoolCircuit) -> Result<Self> {
        if n < 1 {
            return Err(TuckerError::Structure(
                "grid parameter must be at least 1".into(),
            ));
        }
        if n > 62 {
            return Err(TuckerError::Structure(format!(
                "grid parameter {n} is out of range"
            )));
        }
        if labeller.input_count() != 2 * n as usize {
            return Err(TuckerError::Structure(format!(
                "labeller must take {} inputs for grid parameter {n}, has {}",
                2 * n,
                labeller.input_count()
            )));
        }
        if labeller.outputs().len() != 2 {
            return Err(TuckerError::Structure(format!(
                "labeller must produce 2 outputs, has {}",
                labeller.outputs().len()
            )));
        }
        Ok(TuckerInstance { n, labeller })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn side(&self) -> u64 {
        1u64 << self.n
    }

    pub fn labeller(&self) -> &BoolCircuit {
        &self.labeller
    }

    /// The label of squarelet (i, j), both coordinates 1-based.
    pub fn label_at(&self, i: u64, j: u64) -> Result<TuckerLabel> {
        let side = self.side();
        if i < 1 || j < 1 || i > side || j > side {
            return Err(TuckerError::Domain(format!(
                "squarelet ({i}, {j}) is outside the {side} by {side} grid"
            )));
        }
        let bits = coordinate_bits(self.n as usize, i - 1, j - 1);
        let out = self.labeller.evaluate(&bits)?;
        Ok(TuckerLabel::from_bits(out[0], out[1]))
    }
}

/// Packs two zero-based coordinates as the circuit input vector: x
/// little-endian, then y little-endian, `n` bits each.
pub(crate) fn coordinate_bits(n: usize, x0: u64, y0: u64) -> Vec<bool> {
    let mut bits = Vec::with_capacity(2 * n);
    for k in 0..n {
        bits.push(x0 >> k & 1 == 1);
    }
    for k in 0..n {
        bits.push(y0 >> k & 1 == 1);
    }
    bits
}

/// Checks boundary antipodality.  Returns one violation per failing pair.
pub fn check_tucker_constraints(instance: &TuckerInstance) -> Result<Vec<String>> {
    grid::antipodality_violations(instance.side(), &mut |i, j| instance.label_at(i, j))
}

/// Exhaustively scans for the first touching pair of squarelets with
/// opposite labels.  When none exists (possible only for instances that
/// break boundary antipodality) the report carries the violations instead.
pub fn find_tucker_solution(instance: &TuckerInstance) -> Result<SearchReport> {
    grid::scan_side_limit(instance.side())?;
    let solution = grid::first_solution(instance.side(), &mut |i, j| instance.label_at(i, j))?;
    let violations = if solution.is_none() {
        check_tucker_constraints(instance)?
    } else {
        Vec::new()
    };
    Ok(SearchReport {
        solution,
        violations,
    })
}

/// All solutions, for the small grids where the exhaustive scan is
/// feasible.  Used by the round-trip audits.
pub fn all_tucker_solutions(instance: &TuckerInstance) -> Result<Vec<grid::GridSolution>> {
    grid::scan_side_limit(instance.side())?;
    grid::all_solutions(instance.side(), &mut |i, j| instance.label_at(i, j))
}
