use crate::grid::{self, GridSolution, SearchReport};
use crate::tucker::{coordinate_bits, TuckerInstance};
use crate::{ceil_log2, Result, TuckerError};
use boolcircuit::{BoolCircuit, CircuitBuilder, TuckerLabel};

/// A monochromatic-side grid: like the plain labelled grid, but the bottom
/// row must be uniformly +1 and the top row uniformly -1, and the side is
/// an explicit parameter that need not be a power of two.  The labelling
/// circuit takes both zero-based coordinates little-endian at
/// ceil(log2 side) bits each.
#[derive(Debug, Clone)]
pub struct MSTuckerInstance {
    side: u64,
    labeller: BoolCircuit,
}

impl MSTuckerInstance {
    pub fn new(side: u64, labeller: BoolCircuit) -> Result<Self> {
        if side < 2 {
            return Err(TuckerError::Structure(format!(
                "side must be at least 2, got {side}"
            )));
        }
        let bits = ceil_log2(side) as usize;
        if labeller.input_count() != 2 * bits {
            return Err(TuckerError::Structure(format!(
                "labeller must take {} inputs for side {side}, has {}",
                2 * bits,
                labeller.input_count()
            )));
        }
        if labeller.outputs().len() != 2 {
            return Err(TuckerError::Structure(format!(
                "labeller must produce 2 outputs, has {}",
                labeller.outputs().len()
            )));
        }
        Ok(MSTuckerInstance { side, labeller })
    }

    pub fn side(&self) -> u64 {
        self.side
    }

    pub fn coord_bits(&self) -> usize {
        ceil_log2(self.side) as usize
    }

    pub fn labeller(&self) -> &BoolCircuit {
        &self.labeller
    }

    /// The label of squarelet (i, j), both coordinates 1-based.
    pub fn label_at(&self, i: u64, j: u64) -> Result<TuckerLabel> {
        let side = self.side;
        if i < 1 || j < 1 || i > side || j > side {
            return Err(TuckerError::Domain(format!(
                "squarelet ({i}, {j}) is outside the {side} by {side} grid"
            )));
        }
        let bits = coordinate_bits(self.coord_bits(), i - 1, j - 1);
        let out = self.labeller.evaluate(&bits)?;
        Ok(TuckerLabel::from_bits(out[0], out[1]))
    }
}

/// Checks boundary antipodality plus the monochromatic side rows: the
/// bottom row must be uniformly +1 and the top row uniformly -1.
pub fn check_ms_constraints(instance: &MSTuckerInstance) -> Result<Vec<String>> {
    let side = instance.side();
    let mut violations =
        grid::antipodality_violations(side, &mut |i, j| instance.label_at(i, j))?;
    for i in 1..=side {
        let bottom = instance.label_at(i, 1)?;
        if bottom != TuckerLabel::Plus1 {
            violations.push(format!(
                "squarelet ({i}, 1) carries label {bottom}; the bottom row must be +1 throughout"
            ));
        }
        let top = instance.label_at(i, side)?;
        if top != TuckerLabel::Minus1 {
            violations.push(format!(
                "squarelet ({i}, {side}) carries label {top}; the top row must be -1 throughout"
            ));
        }
    }
    Ok(violations)
}

/// Exhaustively scans for the first touching pair of squarelets with
/// opposite labels, falling back to the constraint violations when no
/// solution exists.
pub fn find_ms_solution(instance: &MSTuckerInstance) -> Result<SearchReport> {
    grid::scan_side_limit(instance.side())?;
    let solution = grid::first_solution(instance.side(), &mut |i, j| instance.label_at(i, j))?;
    let violations = if solution.is_none() {
        check_ms_constraints(instance)?
    } else {
        Vec::new()
    };
    Ok(SearchReport {
        solution,
        violations,
    })
}

/// All solutions of a small monochromatic instance.
pub fn all_ms_solutions(instance: &MSTuckerInstance) -> Result<Vec<GridSolution>> {
    grid::scan_side_limit(instance.side())?;
    grid::all_solutions(instance.side(), &mut |i, j| instance.label_at(i, j))
}

/// Data needed to translate solutions of the monochromatic instance back
/// to the original grid.
#[derive(Debug, Clone)]
pub struct TuckerMsReduction {
    m: u64,
    original: TuckerInstance,
}

/// Reduces a labelled grid of side m to a monochromatic one of side 3m.
///
/// The original grid is kept in the middle horizontal band of the new one.
/// The bottom band replays the original bottom row, pushed down to a
/// uniform +1 row by walking the row prefix; the top band symmetrically
/// replays the top row up to a uniform -1 row; the left and right thirds
/// of the middle band extend the original's left and right columns.  The
/// whole arrangement is a single circuit: it relabels so that the corner
/// label becomes +1 (a relabelling that commutes with negation, so
/// boundary antipodality survives) and evaluates the original circuit at
/// one clamped position.
pub fn reduce_tucker_to_ms(
    instance: &TuckerInstance,
) -> Result<(MSTuckerInstance, TuckerMsReduction)> {
    let labeller = build_ms_labeller(instance)?;
    let ms = MSTuckerInstance::new(3 * instance.side(), labeller)?;
    let reduction = TuckerMsReduction {
        m: instance.side(),
        original: instance.clone(),
    };
    Ok((ms, reduction))
}

fn build_ms_labeller(tucker: &TuckerInstance) -> Result<BoolCircuit> {
    let n = tucker.n() as usize;
    let m = tucker.side();
    // 3m < 4m = 2^{n+2}, so the monochromatic grid needs n+2 bits per
    // coordinate.
    let w = n + 2;
    let mut b = CircuitBuilder::new(2 * w);
    let i0: Vec<usize> = (0..w).collect();
    let j0: Vec<usize> = (w..2 * w).collect();

    // a = clamp(i - m, 1, m) in zero-based form: clamp(i0 - m, 0, m-1).
    let lt_m_i = b.lt_const(&i0, m);
    let lt_2m_i = b.lt_const(&i0, 2 * m);
    let ge_2m_i = b.not(lt_2m_i);
    let a_raw = b.sub_const(&i0, m);
    let zero_w = b.const_word(0, w);
    let a1 = b.mux_word(lt_m_i, &a_raw, &zero_w);
    let m_minus_1 = b.const_word(m - 1, w);
    let a = b.mux_word(ge_2m_i, &a1, &m_minus_1);

    let bottom = b.lt_const(&j0, m);
    let lt_2m_j = b.lt_const(&j0, 2 * m);
    let top = b.not(lt_2m_j);
    let jm = b.sub_const(&j0, m);
    let jt = b.sub_const(&j0, 2 * m);

    // Bottom band samples the original bottom row at min(a, j0); the top
    // band samples the top row at max(a, j0 - 2m); the middle band samples
    // (a, j0 - m) directly, the clamp in a covering the side thirds.
    let a_lt_j = b.lt_unsigned(&a, &j0);
    let min_b = b.mux_word(a_lt_j, &j0, &a);
    let a_lt_jt = b.lt_unsigned(&a, &jt);
    let max_t = b.mux_word(a_lt_jt, &a, &jt);
    let x_mt = b.mux_word(top, &a, &max_t);
    let x0 = b.mux_word(bottom, &x_mt, &min_b);
    let y_mt = b.mux_word(top, &jm, &m_minus_1);
    let y0 = b.mux_word(bottom, &y_mt, &zero_w);

    // The sampled position is always within the original grid, so the low
    // n bits suffice.
    let mut emb_in = Vec::with_capacity(2 * n);
    emb_in.extend_from_slice(&x0[..n]);
    emb_in.extend_from_slice(&y0[..n]);
    let out = b.embed(tucker.labeller(), &emb_in);

    // Relabel so the bottom-left corner becomes +1.  Toggling each output
    // bit by a constant permutes the four labels in a way that commutes
    // with negation.
    let (s0, s1) = tucker.label_at(1, 1)?.to_bits();
    let o0 = if s0 { b.not(out[0]) } else { out[0] };
    let o1 = if s1 { b.not(out[1]) } else { out[1] };
    Ok(b.finish(vec![o0, o1])?)
}

impl TuckerMsReduction {
    pub fn original(&self) -> &TuckerInstance {
        &self.original
    }

    pub fn ms_side(&self) -> u64 {
        3 * self.m
    }

    /// The original squarelet a monochromatic squarelet samples.
    fn preimage(&self, i: u64, j: u64) -> Result<(u64, u64)> {
        let m = self.m;
        if i < 1 || j < 1 || i > 3 * m || j > 3 * m {
            return Err(TuckerError::Domain(format!(
                "squarelet ({i}, {j}) is outside the reduced {} by {} grid",
                3 * m,
                3 * m
            )));
        }
        let c = (i as i64 - m as i64).clamp(1, m as i64) as u64;
        Ok(if j <= m {
            (c.min(j), 1)
        } else if j > 2 * m {
            (c.max(j - 2 * m), m)
        } else {
            (c, j - m)
        })
    }

    /// Translates a solution of the monochromatic instance to a solution
    /// of the original instance, re-evaluating the original circuit on the
    /// mapped squarelets and checking the result is genuinely a solution.
    pub fn map_back(&self, solution: &GridSolution) -> Result<GridSolution> {
        let (p1, q1) = self.preimage(solution.first.0, solution.first.1)?;
        let (p2, q2) = self.preimage(solution.second.0, solution.second.1)?;
        let mapped = GridSolution {
            first: (p1, q1),
            second: (p2, q2),
            first_label: self.original.label_at(p1, q1)?,
            second_label: self.original.label_at(p2, q2)?,
        };
        if !mapped.touching() || !mapped.complementary() {
            return Err(TuckerError::Structure(format!(
                "mapped pair ({p1}, {q1}) / ({p2}, {q2}) is not a solution of the original grid"
            )));
        }
        Ok(mapped)
    }
}
