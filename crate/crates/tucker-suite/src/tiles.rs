use crate::{Result, TuckerError};
use exact_arith::{pow2, rint, Interval, Rational};

/// The octomino template: member cells of a tile relative to its center,
/// in subregion units.  Cell (dx, dy) covers the unit square whose
/// lower-left corner sits at the center offset by (dx, dy).  The template
/// is symmetric under 180-degree rotation about the center, which makes
/// the tessellation invariant under point reflection of the grid.
pub const TILE_TEMPLATE: [(i64, i64); 8] = [
    (-2, 0),
    (-1, 0),
    (0, 0),
    (0, 1),
    (-1, -1),
    (0, -1),
    (1, -1),
    (-1, -2),
];

/// A subregion: the set of points of the positive quadrant agreeing on the
/// first n+4 bits of both coordinates, i.e. an axis-aligned square of side
/// (1/16)·2^{-n}.  Indices are in units of that side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subregion {
    pub u: u64,
    pub v: u64,
}

impl Subregion {
    /// The closed square covered by this subregion at grid parameter n.
    pub fn square(&self, n: u32) -> (Interval, Interval) {
        let side = pow2(-(n as i32) - 4);
        let x = Interval::make(rint(self.u as i64) * &side, rint(self.u as i64 + 1) * &side);
        let y = Interval::make(rint(self.v as i64) * &side, rint(self.v as i64 + 1) * &side);
        (x, y)
    }
}

/// A tile of the decomposition: eight subregions (fewer when truncated at
/// the coordinate axes) arranged by [`TILE_TEMPLATE`] around a center on
/// the lattice of pairs (a, b) with a, b even and a ≡ b (mod 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tile {
    a: u64,
    b: u64,
}

impl Tile {
    pub fn new(a: u64, b: u64) -> Result<Tile> {
        if a % 2 != 0 || b % 2 != 0 || a % 4 != b % 4 {
            return Err(TuckerError::Structure(format!(
                "({a}, {b}) is not a tile center: both entries must be even and congruent mod 4"
            )));
        }
        Ok(Tile { a, b })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// The center point ((1/16)·a·2^{-n}, (1/16)·b·2^{-n}).
    pub fn center_point(&self, n: u32) -> (Rational, Rational) {
        let side = pow2(-(n as i32) - 4);
        (rint(self.a as i64) * &side, rint(self.b as i64) * &side)
    }

    /// Member cells relative to the quadrant, including cells the template
    /// places at negative coordinates (which exist only for tiles away from
    /// the axes).
    fn signed_cells(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        TILE_TEMPLATE
            .iter()
            .map(move |&(dx, dy)| (self.a as i64 + dx, self.b as i64 + dy))
    }

    /// The member subregions, truncated at the coordinate axes.
    pub fn subregions(&self) -> Vec<Subregion> {
        self.signed_cells()
            .filter(|&(u, v)| u >= 0 && v >= 0)
            .map(|(u, v)| Subregion { u: u as u64, v: v as u64 })
            .collect()
    }

    pub fn contains_cell(&self, u: u64, v: u64) -> bool {
        self.signed_cells().any(|(cu, cv)| cu == u as i64 && cv == v as i64)
    }
}

/// The unique tile containing the subregion with indices (u, v).
///
/// Exactly one of the eight candidate centers u - dx, v - dy over the
/// template lands on the center lattice; candidates that would be negative
/// always fail the parity test, so no separate sign check is needed.
pub fn tile_of_cell(u: u64, v: u64) -> Tile {
    let mut found = None;
    for (dx, dy) in TILE_TEMPLATE {
        let a = u as i64 - dx;
        let b = v as i64 - dy;
        if a % 2 == 0 && b % 2 == 0 && (a - b) % 4 == 0 {
            debug_assert!(a >= 0 && b >= 0);
            debug_assert!(found.is_none(), "cell ({u}, {v}) matched two centers");
            found = Some(Tile { a: a as u64, b: b as u64 });
            if !cfg!(debug_assertions) {
                break;
            }
        }
    }
    found.expect("the template tessellates the quadrant")
}

/// The tile containing an arbitrary point of the positive quadrant.
pub fn tile_of(n: u32, x: &Rational, y: &Rational) -> Result<Tile> {
    let zero = rint(0);
    if x < &zero || y < &zero {
        return Err(TuckerError::Domain(format!(
            "point ({x}, {y}) is outside the positive quadrant"
        )));
    }
    let scale = pow2(n as i32 + 4);
    let u = (x * &scale).floor().to_integer();
    let v = (y * &scale).floor().to_integer();
    let u = u64::try_from(u).map_err(|_| TuckerError::Domain("point too large".into()))?;
    let v = u64::try_from(v).map_err(|_| TuckerError::Domain("point too large".into()))?;
    Ok(tile_of_cell(u, v))
}

/// Whether two distinct tiles share an edge of positive length.
pub fn tiles_edge_adjacent(s: &Tile, t: &Tile) -> bool {
    if s == t {
        return false;
    }
    for (u1, v1) in s.signed_cells() {
        for (u2, v2) in t.signed_cells() {
            if (u1 - u2).abs() + (v1 - v2).abs() == 1 {
                return true;
            }
        }
    }
    false
}

/// Whether two distinct tiles share at least one boundary point (an edge or
/// just a corner).
pub fn tiles_touch(s: &Tile, t: &Tile) -> bool {
    if s == t {
        return false;
    }
    for (u1, v1) in s.signed_cells() {
        for (u2, v2) in t.signed_cells() {
            if (u1 - u2).abs() <= 1 && (v1 - v2).abs() <= 1 {
                return true;
            }
        }
    }
    false
}

/// The tile assigned to squarelet (i, j) of a monochromatic instance of
/// side `s`: center (2s + 2i + 2j, 4s - 2i + 2j).
pub fn squarelet_tile(s: u64, i: u64, j: u64) -> Tile {
    let a = 2 * s + 2 * i + 2 * j;
    let b = 4 * s - 2 * i + 2 * j;
    debug_assert!(a % 2 == 0 && b % 2 == 0 && (a % 4) == (b % 4));
    Tile { a, b }
}

/// Reads the tile center back to squarelet indices and the row offset used
/// by the zone classification: returns (i_idx, j_idx) with
/// i_idx = (a - b + 2s)/4 and j_idx = (a + b - 6s)/4.
pub fn tile_indices(s: u64, tile: &Tile) -> (i64, i64) {
    let a = tile.a as i64;
    let b = tile.b as i64;
    let s = s as i64;
    debug_assert_eq!((a - b + 2 * s).rem_euclid(4), 0);
    debug_assert_eq!((a + b - 6 * s).rem_euclid(4), 0);
    ((a - b + 2 * s).div_euclid(4), (a + b - 6 * s).div_euclid(4))
}
