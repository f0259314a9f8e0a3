//! Rational linear algebra for the cell-wise feasibility systems: Gaussian
//! elimination for the equality part, Fourier-Motzkin for the inequalities,
//! and a deterministic witness extraction that pins free variables to given
//! targets clamped into their feasible range.

use exact_arith::{rint, Rational};
use num::traits::Zero;

/// Affine expression over `nv` variables: coefficients, then the constant.
pub type Expr = Vec<Rational>;

pub fn zero_expr(nv: usize) -> Expr {
    vec![rint(0); nv + 1]
}

/// Solves the system `expr = 0` for each row. Returns, per variable, either
/// its defining expression over the remaining free variables, or `None` for
/// a free variable. `None` overall means the system is inconsistent.
pub fn solve_equalities(nv: usize, mut rows: Vec<Expr>) -> Option<Vec<Option<Expr>>> {
    let mut pivot_row: Vec<Option<usize>> = vec![None; nv];
    let mut rank = 0usize;
    for col in 0..nv {
        let hit = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(r) = hit else { continue };
        rows.swap(rank, r);
        let lead = rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            *x /= &lead;
        }
        for rr in 0..rows.len() {
            if rr != rank && !rows[rr][col].is_zero() {
                let f = rows[rr][col].clone();
                for j in 0..=nv {
                    let d = &f * &rows[rank][j];
                    rows[rr][j] -= d;
                }
            }
        }
        pivot_row[col] = Some(rank);
        rank += 1;
    }
    for r in rank..rows.len() {
        if !rows[r][nv].is_zero() {
            return None;
        }
    }
    let mut defs = vec![None; nv];
    for col in 0..nv {
        if let Some(r) = pivot_row[col] {
            let mut e = zero_expr(nv);
            for j in 0..=nv {
                if j != col {
                    e[j] = -rows[r][j].clone();
                }
            }
            defs[col] = Some(e);
        }
    }
    Some(defs)
}

/// Replaces every pinned variable in `expr` by its definition.
pub fn substitute(nv: usize, expr: &Expr, defs: &[Option<Expr>]) -> Expr {
    let mut out = zero_expr(nv);
    out[nv] = expr[nv].clone();
    for j in 0..nv {
        if expr[j].is_zero() {
            continue;
        }
        match &defs[j] {
            Some(d) => {
                for t in 0..=nv {
                    let add = &expr[j] * &d[t];
                    out[t] += add;
                }
            }
            None => out[j] += &expr[j],
        }
    }
    out
}

fn canonicalize(e: &mut Expr) {
    let mut scale = rint(0);
    for x in e.iter() {
        let a = exact_arith::abs(x);
        if a > scale {
            scale = a;
        }
    }
    if !scale.is_zero() {
        for x in e.iter_mut() {
            *x /= &scale;
        }
    }
}

fn is_constant(nv: usize, e: &Expr) -> bool {
    e[..nv].iter().all(|c| c.is_zero())
}

/// One elimination stage: the variable and the inequalities that mention it.
pub struct FmStages {
    pub stages: Vec<(usize, Vec<Expr>)>,
}

/// Eliminates the variables of `order`, in order, from the system
/// `expr >= 0`. Returns `None` when infeasible. Every variable with a
/// nonzero coefficient anywhere must appear in `order`.
pub fn fourier_motzkin(nv: usize, order: &[usize], ineqs: Vec<Expr>) -> Option<FmStages> {
    let zero = rint(0);
    let mut current: Vec<Expr> = Vec::new();
    for e in ineqs {
        if is_constant(nv, &e) {
            if e[nv] < zero {
                return None;
            }
        } else {
            current.push(e);
        }
    }
    let mut stages = Vec::new();
    for &v in order {
        let mut with_v = Vec::new();
        let mut rest = Vec::new();
        for e in current {
            if e[v].is_zero() {
                rest.push(e);
            } else {
                with_v.push(e);
            }
        }
        for l in with_v.iter().filter(|e| e[v] > zero) {
            for u in with_v.iter().filter(|e| e[v] < zero) {
                let a = -u[v].clone();
                let b = l[v].clone();
                let mut c = zero_expr(nv);
                for j in 0..=nv {
                    c[j] = &a * &l[j] + &b * &u[j];
                }
                canonicalize(&mut c);
                if is_constant(nv, &c) {
                    if c[nv] < zero {
                        return None;
                    }
                } else {
                    rest.push(c);
                }
            }
        }
        rest.sort();
        rest.dedup();
        stages.push((v, with_v));
        current = rest;
    }
    debug_assert!(current.iter().all(|e| is_constant(nv, e)));
    for e in &current {
        if e[nv] < zero {
            return None;
        }
    }
    Some(FmStages { stages })
}

/// Assigns the eliminated variables, last stage first, taking each target
/// value clamped into the interval its stage inequalities leave open.
pub fn reconstruct(nv: usize, fm: &FmStages, targets: &[Rational]) -> Vec<Option<Rational>> {
    let zero = rint(0);
    let mut val: Vec<Option<Rational>> = vec![None; nv];
    for (v, ineqs) in fm.stages.iter().rev() {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for e in ineqs {
            let mut rest = e[nv].clone();
            for j in 0..nv {
                if j == *v || e[j].is_zero() {
                    continue;
                }
                rest += &e[j] * val[j].as_ref().expect("later-stage variable already assigned");
            }
            let bound = -rest / &e[*v];
            if e[*v] > zero {
                lo = Some(match lo {
                    Some(x) if x >= bound => x,
                    _ => bound,
                });
            } else {
                hi = Some(match hi {
                    Some(x) if x <= bound => x,
                    _ => bound,
                });
            }
        }
        let mut x = targets[*v].clone();
        if let Some(l) = &lo {
            if &x < l {
                x = l.clone();
            }
        }
        if let Some(h) = &hi {
            if &x > h {
                x = h.clone();
            }
        }
        val[*v] = Some(x);
    }
    val
}
