use crate::linear::{
    fourier_motzkin, reconstruct, solve_equalities, substitute, zero_expr, Expr,
};
use exact_arith::{rat, rint, union_breakpoints, Rational, StepFunction};
use measures::{
    verify_division, verify_halving, CHInstance, CutLabelling, DivisionInstance, DivisionSolution,
    Label,
};

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Search result. `NoSolution` means the whole space was enumerated;
/// `BudgetExhausted` means the assignment cap fired first, so nothing is
/// known about the rest of the space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome<T> {
    Found(T),
    NoSolution,
    BudgetExhausted,
}

impl<T> SolveOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SolveOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SolveOutcome::Found(_))
    }
}

/// Cell decomposition: the union of all agents' breakpoints, plus each
/// agent's cumulative mass at every point and height over every cell.
struct Cells {
    points: Vec<Rational>,
    prefix: Vec<Vec<Rational>>,
    heights: Vec<Vec<Rational>>,
}

impl Cells {
    fn build(fs: &[&StepFunction]) -> Cells {
        let points = union_breakpoints(fs).expect("instance agents share a domain");
        let mut prefix = Vec::with_capacity(fs.len());
        let mut heights = Vec::with_capacity(fs.len());
        for f in fs {
            prefix.push(points.iter().map(|p| f.cum(p).unwrap()).collect());
            heights.push(
                points[..points.len() - 1]
                    .iter()
                    .map(|p| f.value_at(p).unwrap())
                    .collect(),
            );
        }
        Cells {
            points,
            prefix,
            heights,
        }
    }

    fn ncells(&self) -> usize {
        self.points.len() - 1
    }

    /// `C_a(v_j)` as an affine term added into `e` with weight `w`, for a
    /// cut variable `j` living in cell `c`.
    fn add_cum(&self, e: &mut Expr, a: usize, j: usize, c: usize, w: &Rational) {
        let nv = e.len() - 1;
        let h = &self.heights[a][c];
        e[j] += w * h;
        e[nv] += w * &(&self.prefix[a][c] - h * &self.points[c]);
    }

    fn midpoint(&self, c: usize) -> Rational {
        (&self.points[c] + &self.points[c + 1]) / rint(2)
    }
}

/// Box constraints tying each cut variable to its cell, plus the ordering
/// chain over consecutive cuts.
fn cut_ineqs(cells: &Cells, cellv: &[usize]) -> Vec<Expr> {
    let m = cellv.len();
    let mut out = Vec::new();
    for (j, &c) in cellv.iter().enumerate() {
        let mut lo = zero_expr(m);
        lo[j] = rint(1);
        lo[m] = -cells.points[c].clone();
        out.push(lo);
        let mut hi = zero_expr(m);
        hi[j] = rint(-1);
        hi[m] = cells.points[c + 1].clone();
        out.push(hi);
    }
    for j in 0..m.saturating_sub(1) {
        let mut ord = zero_expr(m);
        ord[j] = rint(-1);
        ord[j + 1] = rint(1);
        out.push(ord);
    }
    out
}

/// Per agent, the signed balance `mu(A+) - mu(A-)` as an affine expression
/// in the cut positions.
fn balance_exprs(cells: &Cells, cellv: &[usize], first: Label) -> Vec<Expr> {
    let m = cellv.len();
    let s = match first {
        Label::Plus => rint(1),
        Label::Minus => rint(-1),
    };
    let n_agents = cells.prefix.len();
    let mut out = Vec::with_capacity(n_agents);
    for a in 0..n_agents {
        let mut e = zero_expr(m);
        let sign_last = if m % 2 == 0 { s.clone() } else { -s.clone() };
        e[m] += sign_last;
        for (j, &c) in cellv.iter().enumerate() {
            let sign_piece = if j % 2 == 0 { s.clone() } else { -s.clone() };
            cells.add_cum(&mut e, a, j, c, &(rint(2) * sign_piece));
        }
        out.push(e);
    }
    out
}

/// Per agent and part, `mu_a(O_t) - 1/k` as an affine expression.
fn division_exprs(cells: &Cells, cellv: &[usize], parts: &[u32], k: u32) -> Vec<Expr> {
    let m = cellv.len();
    let n_agents = cells.prefix.len();
    let share = rat(1, k as i64);
    let one = rint(1);
    let neg_one = rint(-1);
    let mut out = Vec::new();
    for a in 0..n_agents {
        for t in 1..=k {
            let mut e = zero_expr(m);
            e[m] -= &share;
            for (p, &part) in parts.iter().enumerate() {
                if part != t {
                    continue;
                }
                if p == m {
                    e[m] += rint(1);
                } else {
                    cells.add_cum(&mut e, a, p, cellv[p], &one);
                }
                if p > 0 {
                    cells.add_cum(&mut e, a, p - 1, cellv[p - 1], &neg_one);
                }
            }
            out.push(e);
        }
    }
    out
}

/// Next non-decreasing tuple over `0..=max`, lexicographically. Returns
/// false when the enumeration wraps.
fn advance_nondecreasing(tuple: &mut [usize], max: usize) -> bool {
    for i in (0..tuple.len()).rev() {
        if tuple[i] < max {
            let v = tuple[i] + 1;
            for x in tuple[i..].iter_mut() {
                *x = v;
            }
            return true;
        }
    }
    false
}

/// Next sequence over `1..=k`, rightmost position fastest.
fn advance_parts(parts: &mut [u32], k: u32) -> bool {
    for i in (0..parts.len()).rev() {
        if parts[i] < k {
            parts[i] += 1;
            for x in parts[i + 1..].iter_mut() {
                *x = 1;
            }
            return true;
        }
    }
    false
}

/// Solves equalities, substitutes into the inequalities, eliminates the
/// free variables, and extracts a witness at cell midpoints. Returns the
/// cut positions on feasibility.
fn feasible_point(
    m: usize,
    eqs: Vec<Expr>,
    raw_ineqs: Vec<Expr>,
    targets: &[Rational],
) -> Option<Vec<Rational>> {
    let defs = solve_equalities(m, eqs)?;
    let ineqs: Vec<Expr> = raw_ineqs
        .iter()
        .map(|e| substitute(m, e, &defs))
        .collect();
    let free: Vec<usize> = (0..m).rev().filter(|&j| defs[j].is_none()).collect();
    let fm = fourier_motzkin(m, &free, ineqs)?;
    let partial = reconstruct(m, &fm, targets);
    let mut vals = vec![rint(0); m];
    for j in 0..m {
        if let Some(v) = &partial[j] {
            vals[j] = v.clone();
        }
    }
    for j in 0..m {
        if let Some(def) = &defs[j] {
            let mut v = def[m].clone();
            for (t, val) in vals.iter().enumerate().take(m) {
                if !def[t].is_zero() {
                    v += &def[t] * val;
                }
            }
            vals[j] = v;
        }
    }
    Some(vals)
}

use num::traits::Zero;

fn solve_halving_core(
    inst: &CHInstance,
    max_cuts: usize,
    eps: Option<&Rational>,
    budget: u64,
) -> SolveOutcome<CutLabelling> {
    let fs: Vec<&StepFunction> = inst.agents().iter().map(|(_, f)| f).collect();
    let cells = Cells::build(&fs);
    let mut used = 0u64;
    for m in 0..=max_cuts.min(inst.n()) {
        let mut cellv = vec![0usize; m];
        loop {
            for first in [Label::Plus, Label::Minus] {
                used += 1;
                if used > budget {
                    return SolveOutcome::BudgetExhausted;
                }
                let balances = balance_exprs(&cells, &cellv, first);
                let raw_ineqs = cut_ineqs(&cells, &cellv);
                let targets: Vec<Rational> = cellv.iter().map(|&c| cells.midpoint(c)).collect();
                let vals = match eps {
                    None => feasible_point(m, balances, raw_ineqs, &targets),
                    Some(eps) => {
                        let mut ineqs = raw_ineqs;
                        for b in &balances {
                            let mut under = zero_expr(m);
                            let mut over = zero_expr(m);
                            for j in 0..=m {
                                under[j] = -b[j].clone();
                                over[j] = b[j].clone();
                            }
                            under[m] += eps;
                            over[m] += eps;
                            ineqs.push(under);
                            ineqs.push(over);
                        }
                        feasible_point(m, Vec::new(), ineqs, &targets)
                    }
                };
                if let Some(cuts) = vals {
                    let sol = CutLabelling::new(cuts, first);
                    let rep = verify_halving(inst, &sol).expect("solver emitted a checkable solution");
                    match eps {
                        None => assert!(
                            rep.max_discrepancy.is_zero(),
                            "exact witness fails independent verification"
                        ),
                        Some(_) => assert!(rep.valid, "approx witness fails independent verification"),
                    }
                    return SolveOutcome::Found(sol);
                }
            }
            if cellv.is_empty() || !advance_nondecreasing(&mut cellv, cells.ncells() - 1) {
                break;
            }
        }
    }
    SolveOutcome::NoSolution
}

pub fn solve_halving_exact(inst: &CHInstance, max_cuts: usize) -> SolveOutcome<CutLabelling> {
    solve_halving_core(inst, max_cuts, None, DEFAULT_BUDGET)
}

pub fn solve_halving_exact_with_budget(
    inst: &CHInstance,
    max_cuts: usize,
    budget: u64,
) -> SolveOutcome<CutLabelling> {
    solve_halving_core(inst, max_cuts, None, budget)
}

pub fn solve_halving_approx(inst: &CHInstance, max_cuts: usize) -> SolveOutcome<CutLabelling> {
    solve_halving_core(inst, max_cuts, Some(inst.epsilon()), DEFAULT_BUDGET)
}

pub fn solve_halving_approx_with_budget(
    inst: &CHInstance,
    max_cuts: usize,
    budget: u64,
) -> SolveOutcome<CutLabelling> {
    solve_halving_core(inst, max_cuts, Some(inst.epsilon()), budget)
}

pub fn solve_division_exact(inst: &DivisionInstance) -> SolveOutcome<DivisionSolution> {
    solve_division_exact_with_budget(inst, DEFAULT_BUDGET)
}

pub fn solve_division_exact_with_budget(
    inst: &DivisionInstance,
    budget: u64,
) -> SolveOutcome<DivisionSolution> {
    let fs: Vec<&StepFunction> = inst.agents().iter().collect();
    let cells = Cells::build(&fs);
    let k = inst.k();
    let mut used = 0u64;
    for m in 0..=inst.max_cuts() {
        let mut cellv = vec![0usize; m];
        loop {
            let mut parts = vec![1u32; m + 1];
            loop {
                used += 1;
                if used > budget {
                    return SolveOutcome::BudgetExhausted;
                }
                let eqs = division_exprs(&cells, &cellv, &parts, k);
                let raw_ineqs = cut_ineqs(&cells, &cellv);
                let targets: Vec<Rational> = cellv.iter().map(|&c| cells.midpoint(c)).collect();
                if let Some(cuts) = feasible_point(m, eqs, raw_ineqs, &targets) {
                    let sol = DivisionSolution::new(cuts, parts.clone())
                        .expect("piece count matches cut count");
                    let rep =
                        verify_division(inst, &sol).expect("solver emitted a checkable solution");
                    assert!(
                        rep.max_pairwise_gap.is_zero(),
                        "exact witness fails independent verification"
                    );
                    return SolveOutcome::Found(sol);
                }
                if !advance_parts(&mut parts, k) {
                    break;
                }
            }
            if cellv.is_empty() || !advance_nondecreasing(&mut cellv, cells.ncells() - 1) {
                break;
            }
        }
    }
    SolveOutcome::NoSolution
}
