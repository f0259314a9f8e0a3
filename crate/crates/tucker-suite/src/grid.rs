use crate::{Result, TuckerError};
use boolcircuit::{BoolCircuit, CircuitBuilder, TuckerLabel};

/// A solution of a grid instance: two squarelets that touch (coordinates
/// differing by at most 1 in each direction) and whose labels sum to zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSolution {
    pub first: (u64, u64),
    pub second: (u64, u64),
    pub first_label: TuckerLabel,
    pub second_label: TuckerLabel,
}

impl GridSolution {
    pub fn touching(&self) -> bool {
        let (x1, y1) = self.first;
        let (x2, y2) = self.second;
        x1.abs_diff(x2) <= 1 && y1.abs_diff(y2) <= 1 && self.first != self.second
    }

    pub fn complementary(&self) -> bool {
        self.first_label == self.second_label.negate()
    }
}

/// Outcome of an exhaustive solution scan: either the lexicographically
/// first solution, or (when none exists) the constraint violations that
/// explain why.
#[derive(Debug, Clone)]
pub struct SearchReport {
    pub solution: Option<GridSolution>,
    pub violations: Vec<String>,
}

/// Neighbour offsets in the scan order used by all grid searches.
pub(crate) const NEIGHBOUR_ORDER: [(i64, i64); 8] = [
    (-1, -1),
    (-1, 0),
    (-1, 1),
    (0, -1),
    (0, 1),
    (1, -1),
    (1, 0),
    (1, 1),
];

/// Scans squarelets in lexicographic (x, y) order and returns the first
/// touching complementary pair.
pub(crate) fn first_solution(
    side: u64,
    label: &mut dyn FnMut(u64, u64) -> Result<TuckerLabel>,
) -> Result<Option<GridSolution>> {
    for x in 1..=side {
        for y in 1..=side {
            let l = label(x, y)?;
            for (dx, dy) in NEIGHBOUR_ORDER {
                let nx = x as i64 + dx;
                let ny = y as i64 + dy;
                if nx < 1 || ny < 1 || nx > side as i64 || ny > side as i64 {
                    continue;
                }
                let (nx, ny) = (nx as u64, ny as u64);
                let nl = label(nx, ny)?;
                if nl == l.negate() {
                    return Ok(Some(GridSolution {
                        first: (x, y),
                        second: (nx, ny),
                        first_label: l,
                        second_label: nl,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// All touching complementary pairs, each reported once with the
/// lexicographically smaller squarelet first.
pub(crate) fn all_solutions(
    side: u64,
    label: &mut dyn FnMut(u64, u64) -> Result<TuckerLabel>,
) -> Result<Vec<GridSolution>> {
    let mut out = Vec::new();
    for x in 1..=side {
        for y in 1..=side {
            let l = label(x, y)?;
            for (dx, dy) in NEIGHBOUR_ORDER {
                let nx = x as i64 + dx;
                let ny = y as i64 + dy;
                if nx < 1 || ny < 1 || nx > side as i64 || ny > side as i64 {
                    continue;
                }
                let (nx, ny) = (nx as u64, ny as u64);
                if (nx, ny) < (x, y) {
                    continue;
                }
                let nl = label(nx, ny)?;
                if nl == l.negate() {
                    out.push(GridSolution {
                        first: (x, y),
                        second: (nx, ny),
                        first_label: l,
                        second_label: nl,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Boundary antipodality violations shared by the plain and monochromatic
/// checkers: the bottom row must be the negated reversed top row, and the
/// left column the negated reversed right column.  Corner pairs are
/// reported once (by the row pass).
pub(crate) fn antipodality_violations(
    side: u64,
    label: &mut dyn FnMut(u64, u64) -> Result<TuckerLabel>,
) -> Result<Vec<String>> {
    let m = side;
    let mut violations = Vec::new();
    for i in 1..=m {
        let a = label(i, 1)?;
        let b = label(m - i + 1, m)?;
        if a != b.negate() {
            violations.push(format!(
                "squarelets ({i}, 1) and ({}, {m}) carry labels {a} and {b}; \
                 boundary antipodality requires opposite labels",
                m - i + 1
            ));
        }
    }
    for j in 2..m {
        let a = label(1, j)?;
        let b = label(m, m - j + 1)?;
        if a != b.negate() {
            violations.push(format!(
                "squarelets (1, {j}) and ({m}, {}) carry labels {a} and {b}; \
                 boundary antipodality requires opposite labels",
                m - j + 1
            ));
        }
    }
    Ok(violations)
}

pub(crate) fn scan_side_limit(side: u64) -> Result<()> {
    if side > 256 {
        return Err(TuckerError::Domain(format!(
            "exhaustive scan supports sides up to 256, got {side}"
        )));
    }
    Ok(())
}

/// Builds a labelling circuit from an explicit label table.
///
/// `labels` is row-major with the second coordinate outermost:
/// `labels[(j-1) * side + (i-1)]` is the label of squarelet `(i, j)`.
/// The circuit takes both zero-based coordinates little-endian at
/// `ceil(log2 side)` bits each; out-of-range encodings fall back to +1.
pub fn labeller_from_table(side: u64, labels: &[TuckerLabel]) -> Result<BoolCircuit> {
    if side < 2 {
        return Err(TuckerError::Structure(format!(
            "table labeller needs side at least 2, got {side}"
        )));
    }
    if labels.len() != (side * side) as usize {
        return Err(TuckerError::Structure(format!(
            "expected {} labels for side {side}, got {}",
            side * side,
            labels.len()
        )));
    }
    let bits = crate::ceil_log2(side) as usize;
    let full = 1u64 << bits;
    let mut b = CircuitBuilder::new(2 * bits);
    // Leaf constants for the padded 2^bits × 2^bits table.
    let zero = b.const0();
    let one = b.const1();
    let mut leaves0 = Vec::with_capacity((full * full) as usize);
    let mut leaves1 = Vec::with_capacity((full * full) as usize);
    for j0 in 0..full {
        for i0 in 0..full {
            let label = if i0 < side && j0 < side {
                labels[(j0 * side + i0) as usize]
            } else {
                TuckerLabel::Plus1
            };
            let (b0, b1) = label.to_bits();
            leaves0.push(if b0 { one } else { zero });
            leaves1.push(if b1 { one } else { zero });
        }
    }
    // Address bits: i0 little-endian, then j0 little-endian; the leaf at
    // address a corresponds to i0 = a mod 2^bits, j0 = a >> bits.
    let addr: Vec<usize> = (0..2 * bits).collect();
    let out0 = mux_tree(&mut b, &addr, &leaves0);
    let out1 = mux_tree(&mut b, &addr, &leaves1);
    Ok(b.finish(vec![out0, out1])?)
}

fn mux_tree(b: &mut CircuitBuilder, addr: &[usize], leaves: &[usize]) -> usize {
    if addr.is_empty() {
        return leaves[0];
    }
    // Select on the lowest address bit first: even leaves vs odd leaves.
    let half: Vec<usize> = leaves
        .chunks(2)
        .map(|pair| b.mux(addr[0], pair[0], pair[1]))
        .collect();
    mux_tree(b, &addr[1..], &half)
}
