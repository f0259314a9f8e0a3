//! Brute-force exact solvers for small consensus-halving and
//! consensus-division instances.
//!
//! The cut space is decomposed into cells by the union of all agents'
//! breakpoints. Within a fixed cell assignment every agent's balance is an
//! affine function of the cut positions, so feasibility is an exact linear
//! problem: equalities go through rational Gaussian elimination, the
//! remaining inequalities through Fourier-Motzkin. Enumeration order is
//! fixed (cut count ascending, cell tuples lexicographic, Plus before
//! Minus, part sequences lexicographic), so the returned solution is the
//! first feasible one and identical across runs.
//!
//! This is an oracle for desk-scale instances, not an algorithm: the search
//! is exponential by design and a hard budget on enumerated assignments
//! makes that explicit.

mod linear;
mod solver;

pub use solver::{
    solve_division_exact, solve_division_exact_with_budget, solve_halving_approx,
    solve_halving_approx_with_budget, solve_halving_exact, solve_halving_exact_with_budget,
    SolveOutcome, DEFAULT_BUDGET,
};
