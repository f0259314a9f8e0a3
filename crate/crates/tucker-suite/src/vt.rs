use crate::grid::GridSolution;
use crate::ms::MSTuckerInstance;
use crate::tiles::{tile_indices, tile_of_cell};
use crate::tucker::coordinate_bits;
use crate::vtcircuit::build_vt_labeller;
use crate::{ceil_log2, Result, TuckerError};
use boolcircuit::{label_word_of, BoolCircuit, LabelWord, TuckerLabel};
use std::collections::BTreeMap;

/// Closed-form description of the labelling of a variant instance built
/// from a monochromatic grid: the padded label table plus the padding
/// margin.  Tools use it to reason about the labelling without walking
/// the circuit; the circuit stays authoritative for verification.
#[derive(Debug, Clone)]
pub struct VtSemantic {
    q: u32,
    k: u64,
    s: u64,
    table: Vec<TuckerLabel>,
}

impl VtSemantic {
    /// `table` is the padded side-2^q grid, row-major with the second
    /// coordinate outermost: `table[(j-1) * 2^q + (i-1)]`.
    pub fn new(q: u32, k: u64, s: u64, table: Vec<TuckerLabel>) -> Result<Self> {
        if q < 1 || q > 32 {
            return Err(TuckerError::Structure(format!(
                "padded side exponent {q} is out of range"
            )));
        }
        let big_s = 1u64 << q;
        if s < 2 || s > big_s || 2 * k != big_s - s {
            return Err(TuckerError::Structure(format!(
                "side {s} with margin {k} does not pad to side {big_s}"
            )));
        }
        if table.len() != (big_s * big_s) as usize {
            return Err(TuckerError::Structure(format!(
                "expected {} table entries for padded side {big_s}, got {}",
                big_s * big_s,
                table.len()
            )));
        }
        Ok(VtSemantic { q, k, s, table })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn padded_side(&self) -> u64 {
        1u64 << self.q
    }

    pub fn original_side(&self) -> u64 {
        self.s
    }

    pub fn margin(&self) -> u64 {
        self.k
    }

    pub fn table(&self) -> &[TuckerLabel] {
        &self.table
    }

    fn padded_label(&self, i: u64, j: u64) -> TuckerLabel {
        let big_s = self.padded_side();
        debug_assert!(i >= 1 && i <= big_s && j >= 1 && j <= big_s);
        self.table[((j - 1) * big_s + (i - 1)) as usize]
    }

    /// The label of the subregion (u, v), valid for subregions of the
    /// lower representative half.
    pub fn label_of_cell(&self, u: u64, v: u64) -> TuckerLabel {
        let big_s = self.padded_side();
        let tile = tile_of_cell(u, v);
        let (i_idx, j_idx) = tile_indices(big_s, &tile);
        if j_idx <= 0 {
            TuckerLabel::Plus1
        } else if j_idx >= big_s as i64 + 1 {
            TuckerLabel::Minus1
        } else {
            let i = i_idx.clamp(1, big_s as i64) as u64;
            self.padded_label(i, j_idx as u64)
        }
    }

    /// The label word at a grid point, including the antipodal complement
    /// for points of the upper half.
    pub fn word_at(&self, x: u64, y: u64) -> LabelWord {
        let nb = self.q + 11;
        let size = 1u64 << nb;
        debug_assert!(x < size && y < size);
        let sum = x + y;
        let in_l = sum < size || (sum == size && y <= x);
        let (xs, ys) = if in_l {
            (x, y)
        } else {
            ((size - x) % size, (size - y) % size)
        };
        let word = label_word_of(self.label_of_cell(xs >> 7, ys >> 7));
        if in_l {
            word
        } else {
            word.complement()
        }
    }
}

/// A variant grid instance: points of the 2^{n+11} by 2^{n+11} grid carry
/// four-bit label words produced by a circuit over both coordinates,
/// little-endian x first.
#[derive(Debug, Clone)]
pub struct VariantTuckerInstance {
    n: u32,
    labeller: BoolCircuit,
    semantic: Option<VtSemantic>,
}

impl VariantTuckerInstance {
    pub fn new(n: u32, labeller: BoolCircuit) -> Result<Self> {
        if n < 1 || n > 32 {
            return Err(TuckerError::Structure(format!(
                "grid parameter {n} is out of range"
            )));
        }
        let want = 2 * (n as usize + 11);
        if labeller.input_count() != want {
            return Err(TuckerError::Structure(format!(
                "labeller must take {want} inputs for grid parameter {n}, has {}",
                labeller.input_count()
            )));
        }
        if labeller.outputs().len() != 4 {
            return Err(TuckerError::Structure(format!(
                "labeller must produce 4 outputs, has {}",
                labeller.outputs().len()
            )));
        }
        Ok(VariantTuckerInstance {
            n,
            labeller,
            semantic: None,
        })
    }

    pub fn with_semantic(mut self, semantic: VtSemantic) -> Result<Self> {
        if semantic.q() != self.n {
            return Err(TuckerError::Structure(format!(
                "semantic description is for grid parameter {}, instance has {}",
                semantic.q(),
                self.n
            )));
        }
        self.semantic = Some(semantic);
        Ok(self)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn grid_bits(&self) -> u32 {
        self.n + 11
    }

    pub fn size(&self) -> u64 {
        1u64 << self.grid_bits()
    }

    pub fn labeller(&self) -> &BoolCircuit {
        &self.labeller
    }

    pub fn semantic(&self) -> Option<&VtSemantic> {
        self.semantic.as_ref()
    }

    /// The raw four output bits at a grid point, legal word or not.
    pub fn word_bits_at(&self, x: u64, y: u64) -> Result<[bool; 4]> {
        let size = self.size();
        if x >= size || y >= size {
            return Err(TuckerError::Domain(format!(
                "point ({x}, {y}) is outside the {size} by {size} grid"
            )));
        }
        let bits = coordinate_bits(self.grid_bits() as usize, x, y);
        let out = self.labeller.evaluate(&bits)?;
        Ok([out[0], out[1], out[2], out[3]])
    }

    /// The label word at a grid point; illegal output patterns are a
    /// structure error.
    pub fn vt_label_at(&self, x: u64, y: u64) -> Result<LabelWord> {
        let bits = self.word_bits_at(x, y)?;
        Ok(LabelWord::from_bits(bits)?)
    }
}

/// A solution candidate of a variant instance: consecutive grid points of
/// a line of slope -1, starting in the lower half, wrapping around the
/// grid at most via the antipodal identification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VTSolution {
    n: u32,
    points: Vec<(u64, u64)>,
    wrapped: bool,
}

impl VTSolution {
    pub const STANDARD_LENGTH: usize = 100;

    pub fn new(n: u32, points: Vec<(u64, u64)>, wrapped: bool) -> Result<Self> {
        let size = 1u64 << (n + 11);
        if points.len() < 2 {
            return Err(TuckerError::Structure(
                "a line needs at least two points".into(),
            ));
        }
        for &(x, y) in &points {
            if x >= size || y >= size {
                return Err(TuckerError::Domain(format!(
                    "point ({x}, {y}) is outside the {size} by {size} grid"
                )));
            }
        }
        let (x1, y1) = points[0];
        if x1 + y1 > size {
            return Err(TuckerError::Structure(format!(
                "the line must start in the lower half: {x1} + {y1} > {size}"
            )));
        }
        let mut wraps = 0usize;
        for i in 1..points.len() {
            let (px, py) = points[i - 1];
            let expected = ((px + 1) % size, (py + size - 1) % size);
            if points[i] != expected {
                return Err(TuckerError::Structure(format!(
                    "point {} must continue the line as ({}, {}), got ({}, {})",
                    i + 1,
                    expected.0,
                    expected.1,
                    points[i].0,
                    points[i].1
                )));
            }
            if px == size - 1 {
                wraps += 1;
            }
            if py == 0 {
                wraps += 1;
            }
        }
        if wrapped != (wraps > 0) {
            return Err(TuckerError::Structure(format!(
                "the line {} around the grid but is declared {}",
                if wraps > 0 { "wraps" } else { "does not wrap" },
                if wrapped { "wrapped" } else { "unwrapped" }
            )));
        }
        Ok(VTSolution { n, points, wrapped })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn points(&self) -> &[(u64, u64)] {
        &self.points
    }

    pub fn wrapped(&self) -> bool {
        self.wrapped
    }
}

/// Outcome of checking a line against an instance.
#[derive(Debug, Clone)]
pub struct VtReport {
    pub point_count: usize,
    pub required_each: usize,
    pub allowed_bad: usize,
    pub majority: Option<LabelWord>,
    pub same_count: usize,
    pub opposite_count: usize,
    pub bad_count: usize,
    pub valid: bool,
}

/// The words the line's points effectively carry: each wrap over a grid
/// edge lands on the antipodal continuation, so the raw word is
/// complemented once per wrap event crossed so far.
fn effective_words(
    instance: &VariantTuckerInstance,
    solution: &VTSolution,
) -> Result<Vec<[bool; 4]>> {
    let size = instance.size();
    let mut flip = false;
    let mut out = Vec::with_capacity(solution.points().len());
    for (i, &(x, y)) in solution.points().iter().enumerate() {
        if i > 0 {
            let (px, py) = solution.points()[i - 1];
            if px == size - 1 {
                flip = !flip;
            }
            if py == 0 {
                flip = !flip;
            }
        }
        let mut bits = instance.word_bits_at(x, y)?;
        if flip {
            for b in &mut bits {
                *b = !*b;
            }
        }
        out.push(bits);
    }
    Ok(out)
}

/// Checks a line against an instance: at least a tenth of the points must
/// carry some legal word, at least a tenth its complement, and at most a
/// twenty-fifth anything else.  The candidate word is the most frequent
/// legal word (ties broken towards the smallest bit pattern).
pub fn verify_vt_solution(
    instance: &VariantTuckerInstance,
    solution: &VTSolution,
) -> Result<VtReport> {
    if solution.n() != instance.n() {
        return Err(TuckerError::Structure(format!(
            "line is for grid parameter {}, instance has {}",
            solution.n(),
            instance.n()
        )));
    }
    let words = effective_words(instance, solution)?;
    let len = words.len();
    let required_each = (10 * len).div_ceil(100);
    let allowed_bad = (4 * len).div_ceil(100);
    let mut counts: BTreeMap<[bool; 4], usize> = BTreeMap::new();
    for bits in &words {
        if LabelWord::from_bits(*bits).is_ok() {
            *counts.entry(*bits).or_insert(0) += 1;
        }
    }
    let majority_bits = counts
        .iter()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))
        .map(|(bits, _)| *bits);
    let (majority, same_count, opposite_count) = match majority_bits {
        None => (None, 0, 0),
        Some(bits) => {
            let word = LabelWord::from_bits(bits).expect("counted words are legal");
            let opp = word.complement().bits();
            (
                Some(word),
                counts[&bits],
                counts.get(&opp).copied().unwrap_or(0),
            )
        }
    };
    let bad_count = len - same_count - opposite_count;
    let valid =
        same_count >= required_each && opposite_count >= required_each && bad_count <= allowed_bad;
    Ok(VtReport {
        point_count: len,
        required_each,
        allowed_bad,
        majority,
        same_count,
        opposite_count,
        bad_count,
        valid,
    })
}

/// Outcome of the exhaustive line search.
#[derive(Debug, Clone)]
pub struct VtSearchReport {
    pub solution: Option<VTSolution>,
    pub violations: Vec<String>,
}

fn vt_scan_limit(n: u32) -> Result<()> {
    if n > 6 {
        return Err(TuckerError::Domain(format!(
            "exhaustive variant scan supports grid parameters up to 6, got {n}"
        )));
    }
    Ok(())
}

fn cell_center_word(instance: &VariantTuckerInstance, u: u64, v: u64) -> Result<Option<LabelWord>> {
    if let Some(sem) = instance.semantic() {
        return Ok(Some(sem.word_at(u * 128 + 64, v * 128 + 64)));
    }
    let bits = instance.word_bits_at(u * 128 + 64, v * 128 + 64)?;
    Ok(LabelWord::from_bits(bits).ok())
}

/// Scans subregion boundaries for a pair of oppositely labelled adjacent
/// subregions and drops a standard 100-point line across the shared edge
/// or corner.  Each candidate is verified against the circuit before it is
/// reported; when none verifies, the constraint checker's findings are
/// returned instead.
pub fn find_vt_solution(instance: &VariantTuckerInstance) -> Result<VtSearchReport> {
    vt_scan_limit(instance.n())?;
    let cells = 1u64 << (instance.n() + 4);
    let size = instance.size();
    let len = VTSolution::STANDARD_LENGTH as u64;

    let mut col_this: Vec<Option<LabelWord>> = Vec::new();
    let mut col_next: Vec<Option<LabelWord>> = Vec::new();
    for v in 0..cells {
        col_this.push(cell_center_word(instance, 0, v)?);
    }
    for u in 0..cells {
        if u + 1 < cells {
            col_next.clear();
            for v in 0..cells {
                col_next.push(cell_center_word(instance, u + 1, v)?);
            }
        } else {
            col_next.clear();
        }
        for v in 0..cells {
            let here = col_this[v as usize];
            let mut candidates: Vec<(u64, u64)> = Vec::new();
            // A vertical shared edge: half the line left of it, half right.
            if u + 1 < cells {
                if let (Some(a), Some(b)) = (here, col_next[v as usize]) {
                    if b == a.complement() {
                        candidates.push(((u + 1) * 128 - len / 2, v * 128 + 113));
                    }
                }
            }
            // A horizontal shared edge.
            if v + 1 < cells {
                if let (Some(a), Some(b)) = (here, col_this[v as usize + 1]) {
                    if b == a.complement() {
                        candidates.push((u * 128 + 14, (v + 1) * 128 + 49));
                    }
                }
            }
            // A shared corner between diagonal neighbours: the line passes
            // one step below the corner, splitting between the two cells.
            if u + 1 < cells && v + 1 < cells {
                if let (Some(a), Some(b)) = (col_this[v as usize + 1], col_next[v as usize]) {
                    if b == a.complement() {
                        candidates.push(((u + 1) * 128 - len / 2, (v + 1) * 128 + 49));
                    }
                }
            }
            for (x1, y1) in candidates {
                if x1 + y1 > size {
                    continue;
                }
                let points: Vec<(u64, u64)> = (0..len).map(|i| (x1 + i, y1 - i)).collect();
                let line = VTSolution::new(instance.n(), points, false)?;
                if verify_vt_solution(instance, &line)?.valid {
                    return Ok(VtSearchReport {
                        solution: Some(line),
                        violations: Vec::new(),
                    });
                }
            }
        }
        std::mem::swap(&mut col_this, &mut col_next);
    }
    Ok(VtSearchReport {
        solution: None,
        violations: check_vt_constraints(instance)?,
    })
}

fn complement_bits(bits: [bool; 4]) -> [bool; 4] {
    [!bits[0], !bits[1], !bits[2], !bits[3]]
}

fn bits_string(bits: [bool; 4]) -> String {
    bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Checks the labelling constraints of a variant instance by sampling:
/// subregion centers exhaustively, plus probe points inside a deterministic
/// subset of subregions.  A clean report is strong evidence, not a proof;
/// the checks mirror what the verifier and the reductions rely on.
pub fn check_vt_constraints(instance: &VariantTuckerInstance) -> Result<Vec<String>> {
    vt_scan_limit(instance.n())?;
    let cells = 1u64 << (instance.n() + 4);
    let size = instance.size();
    let mut violations = Vec::new();

    let idx = |u: u64, v: u64| (u * cells + v) as usize;
    let mut table: Vec<[bool; 4]> = Vec::with_capacity((cells * cells) as usize);
    for u in 0..cells {
        for v in 0..cells {
            table.push(instance.word_bits_at(u * 128 + 64, v * 128 + 64)?);
        }
    }

    let plus_word = label_word_of(TuckerLabel::Plus1).bits();
    let minus_word = label_word_of(TuckerLabel::Minus1).bits();
    for u in 0..cells {
        for v in 0..cells {
            let bits = table[idx(u, v)];
            let x = u * 128 + 64;
            let y = v * 128 + 64;
            if LabelWord::from_bits(bits).is_err() {
                violations.push(format!(
                    "point ({x}, {y}) carries {} which is not a legal label word",
                    bits_string(bits)
                ));
                continue;
            }
            let sum = x + y;
            let in_l = sum < size || (sum == size && y <= x);
            if 8 * sum < 3 * size && bits != plus_word {
                violations.push(format!(
                    "point ({x}, {y}) lies below the lower threshold line yet carries {}",
                    bits_string(bits)
                ));
            }
            if in_l && 8 * sum > 5 * size && bits != minus_word {
                violations.push(format!(
                    "point ({x}, {y}) lies above the upper threshold line yet carries {}",
                    bits_string(bits)
                ));
            }
            let (mu, mv) = (cells - 1 - u, cells - 1 - v);
            if (u, v) < (mu, mv) {
                let other = table[idx(mu, mv)];
                if other != complement_bits(bits) {
                    violations.push(format!(
                        "antipodal points ({x}, {y}) and ({}, {}) carry non-complementary \
                         words {} and {}",
                        mu * 128 + 64,
                        mv * 128 + 64,
                        bits_string(bits),
                        bits_string(other)
                    ));
                }
            }
        }
    }

    // Word constancy per tile, separately on each side of the diagonal.
    let mut groups: BTreeMap<((u64, u64), bool), ((u64, u64), [bool; 4])> = BTreeMap::new();
    for u in 0..cells {
        for v in 0..cells {
            let bits = table[idx(u, v)];
            let x = u * 128 + 64;
            let y = v * 128 + 64;
            let sum = x + y;
            let in_l = sum < size || (sum == size && y <= x);
            let tile = tile_of_cell(u, v);
            let key = ((tile.a(), tile.b()), in_l);
            match groups.get(&key) {
                None => {
                    groups.insert(key, ((u, v), bits));
                }
                Some(&((u0, v0), bits0)) => {
                    if bits != bits0 {
                        violations.push(format!(
                            "subregions ({u0}, {v0}) and ({u}, {v}) belong to the tile centered \
                             at ({}, {}) yet carry different words {} and {}",
                            tile.a(),
                            tile.b(),
                            bits_string(bits0),
                            bits_string(bits)
                        ));
                    }
                }
            }
        }
    }

    // Inside a sample of subregions the word must not depend on the last
    // seven bits of either coordinate.  Points within one grid step of a
    // subregion boundary are exempt, so the probes stay at least two steps
    // away; subregions straddling the diagonal are skipped.
    let probes: [(u64, u64); 8] = [
        (2, 2),
        (2, 64),
        (64, 2),
        (37, 99),
        (99, 37),
        (125, 64),
        (64, 125),
        (125, 125),
    ];
    for u in 0..cells {
        for v in 0..cells {
            if (u * 31 + v * 17) % 101 != 0 {
                continue;
            }
            let corner_sum = 128 * (u + v) + 128;
            if corner_sum + 512 >= size && corner_sum <= size + 512 {
                continue;
            }
            let bits = table[idx(u, v)];
            for (rx, ry) in probes {
                let x = u * 128 + rx;
                let y = v * 128 + ry;
                let got = instance.word_bits_at(x, y)?;
                if got != bits {
                    violations.push(format!(
                        "points ({x}, {y}) and ({}, {}) lie in the same subregion away from \
                         its boundary yet carry different words {} and {}",
                        u * 128 + 64,
                        v * 128 + 64,
                        bits_string(got),
                        bits_string(bits)
                    ));
                }
            }
        }
    }
    Ok(violations)
}

/// Data needed to translate lines of the variant instance back to
/// squarelet pairs of the monochromatic grid it was built from.
#[derive(Debug, Clone)]
pub struct MsVtReduction {
    original: MSTuckerInstance,
    instance: VariantTuckerInstance,
    k: u64,
}

/// Reduces a monochromatic grid of even side s to a variant instance with
/// grid parameter q = ceil(log2 s): the grid is padded symmetrically to
/// side 2^q by repeating its boundary rows and columns (which keeps left
/// and right sides antipodal), each padded squarelet becomes a tile of
/// subregions, rows beyond the padded grid freeze to +1 below and -1
/// above, and the upper triangle takes complementary words from the lower
/// one.
pub fn reduce_ms_to_variant(
    ms: &MSTuckerInstance,
) -> Result<(VariantTuckerInstance, MsVtReduction)> {
    let s = ms.side();
    if s % 2 != 0 {
        return Err(TuckerError::Structure(format!(
            "the reduction needs an even side, got {s}"
        )));
    }
    let q = ceil_log2(s);
    let big_s = 1u64 << q;
    let k = (big_s - s) / 2;
    let labeller = build_vt_labeller(ms, q, k)?;
    let mut table = Vec::with_capacity((big_s * big_s) as usize);
    for j in 1..=big_s {
        for i in 1..=big_s {
            let oi = (i as i64 - k as i64).clamp(1, s as i64) as u64;
            let oj = (j as i64 - k as i64).clamp(1, s as i64) as u64;
            table.push(ms.label_at(oi, oj)?);
        }
    }
    let semantic = VtSemantic::new(q, k, s, table)?;
    let vt = VariantTuckerInstance::new(q, labeller)?.with_semantic(semantic)?;
    let reduction = MsVtReduction {
        original: ms.clone(),
        instance: vt.clone(),
        k,
    };
    Ok((vt, reduction))
}

impl MsVtReduction {
    pub fn original(&self) -> &MSTuckerInstance {
        &self.original
    }

    pub fn instance(&self) -> &VariantTuckerInstance {
        &self.instance
    }

    /// The squarelet of the original grid that a grid point's tile shows,
    /// or None for points in the frozen rows beyond the padded grid.
    fn localize(&self, x: u64, y: u64) -> Option<(u64, u64)> {
        let size = self.instance.size();
        let big_s = 1u64 << self.instance.n();
        let s = self.original.side();
        let sum = x + y;
        let in_l = sum < size || (sum == size && y <= x);
        let (xs, ys) = if in_l {
            (x, y)
        } else {
            ((size - x) % size, (size - y) % size)
        };
        let tile = tile_of_cell(xs >> 7, ys >> 7);
        let (i_idx, j_idx) = tile_indices(big_s, &tile);
        if j_idx < 1 || j_idx > big_s as i64 {
            return None;
        }
        let i_pad = i_idx.clamp(1, big_s as i64);
        let oi = (i_pad - self.k as i64).clamp(1, s as i64) as u64;
        let oj = (j_idx - self.k as i64).clamp(1, s as i64) as u64;
        Some((oi, oj))
    }

    /// Translates a verified line to a touching complementary squarelet
    /// pair of the original grid.  Points carrying the line's candidate
    /// word and its complement are localized to squarelets; the first pair
    /// (in line order) that touches with opposite labels under the original
    /// circuit is returned.
    pub fn map_back(&self, solution: &VTSolution) -> Result<GridSolution> {
        let report = verify_vt_solution(&self.instance, solution)?;
        let majority = report.majority.ok_or_else(|| {
            TuckerError::Structure("the line carries no legal label word".into())
        })?;
        let words = effective_words(&self.instance, solution)?;
        let opp = majority.complement().bits();
        let maj = majority.bits();
        let first_group: Vec<usize> = (0..words.len()).filter(|&i| words[i] == maj).collect();
        let second_group: Vec<usize> = (0..words.len()).filter(|&i| words[i] == opp).collect();
        for &i in &first_group {
            let (xi, yi) = solution.points()[i];
            let Some(p) = self.localize(xi, yi) else {
                continue;
            };
            for &j in &second_group {
                let (xj, yj) = solution.points()[j];
                let Some(r) = self.localize(xj, yj) else {
                    continue;
                };
                let candidate = GridSolution {
                    first: p,
                    second: r,
                    first_label: self.original.label_at(p.0, p.1)?,
                    second_label: self.original.label_at(r.0, r.1)?,
                };
                if candidate.touching() && candidate.complementary() {
                    return Ok(candidate);
                }
            }
        }
        Err(TuckerError::Structure(
            "the line does not localize to a touching complementary squarelet pair".into(),
        ))
    }
}
