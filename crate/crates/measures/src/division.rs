use crate::{MeasureError, Result};
use exact_arith::{abs, render, rint, Interval, Rational, StepFunction};

/// A consensus-1/k-division instance: measures of mass 1 on a shared domain
/// `[0, x]`, a number of parts `k`, a per-boundary cut allowance `ell`, and
/// a tolerance. A solution uses at most `(k-1) * ell` cuts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionInstance {
    agents: Vec<StepFunction>,
    k: u32,
    ell: u32,
    epsilon: Rational,
}

impl DivisionInstance {
    pub fn new(agents: Vec<StepFunction>, k: u32, ell: u32, epsilon: Rational) -> Result<Self> {
        if agents.is_empty() {
            return Err(MeasureError::Structure("instance needs at least one agent".into()));
        }
        if k < 2 {
            return Err(MeasureError::Structure(format!("k must be at least 2, got {k}")));
        }
        if ell < 1 {
            return Err(MeasureError::Structure("ell must be at least 1".into()));
        }
        if epsilon < rint(0) {
            return Err(MeasureError::Structure(format!(
                "epsilon must be non-negative, got {}",
                render(&epsilon)
            )));
        }
        let domain = agents[0].domain();
        if domain.lo() != &rint(0) {
            return Err(MeasureError::Structure(format!(
                "domain must start at 0, got {domain}"
            )));
        }
        for (i, f) in agents.iter().enumerate() {
            if f.domain() != domain {
                return Err(MeasureError::Structure(format!(
                    "agent {} has domain {}, expected {domain}",
                    i + 1,
                    f.domain()
                )));
            }
            if f.mass() != rint(1) {
                return Err(MeasureError::Structure(format!(
                    "agent {} has mass {}, expected 1",
                    i + 1,
                    render(&f.mass())
                )));
            }
        }
        Ok(DivisionInstance {
            agents,
            k,
            ell,
            epsilon,
        })
    }

    pub fn agents(&self) -> &[StepFunction] {
        &self.agents
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    pub fn domain(&self) -> Interval {
        self.agents[0].domain()
    }

    pub fn max_cuts(&self) -> usize {
        (self.k as usize - 1) * self.ell as usize
    }
}

/// Cuts plus a 1-based part index per piece.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionSolution {
    cuts: Vec<Rational>,
    part_of_piece: Vec<u32>,
}

impl DivisionSolution {
    pub fn new(mut cuts: Vec<Rational>, part_of_piece: Vec<u32>) -> Result<Self> {
        if part_of_piece.len() != cuts.len() + 1 {
            return Err(MeasureError::Structure(format!(
                "{} part indices for {} cuts",
                part_of_piece.len(),
                cuts.len()
            )));
        }
        cuts.sort();
        Ok(DivisionSolution {
            cuts,
            part_of_piece,
        })
    }

    pub fn cuts(&self) -> &[Rational] {
        &self.cuts
    }

    pub fn part_of_piece(&self) -> &[u32] {
        &self.part_of_piece
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisionReport {
    /// per agent, per part: the agent's mass of that part
    pub part_masses: Vec<Vec<Rational>>,
    pub max_pairwise_gap: Rational,
    pub valid: bool,
}

pub fn verify_division(inst: &DivisionInstance, sol: &DivisionSolution) -> Result<DivisionReport> {
    if sol.cuts().len() > inst.max_cuts() {
        return Err(MeasureError::Structure(format!(
            "{} cuts exceed the allowance (k-1)*ell = {}",
            sol.cuts().len(),
            inst.max_cuts()
        )));
    }
    for &p in sol.part_of_piece() {
        if p < 1 || p > inst.k() {
            return Err(MeasureError::Structure(format!(
                "part index {p} out of range 1..={}",
                inst.k()
            )));
        }
    }
    let domain = inst.domain();
    for c in sol.cuts() {
        if !domain.contains(c) {
            return Err(MeasureError::Domain(format!(
                "cut {} outside domain {domain}",
                render(c)
            )));
        }
    }
    let mut edges = vec![domain.lo().clone()];
    edges.extend(sol.cuts().iter().cloned());
    edges.push(domain.hi().clone());

    let k = inst.k() as usize;
    let mut part_masses = Vec::with_capacity(inst.agents().len());
    let mut max_gap = rint(0);
    for f in inst.agents() {
        let mut masses = vec![rint(0); k];
        for (i, &p) in sol.part_of_piece().iter().enumerate() {
            let piece = Interval::make(edges[i].clone(), edges[i + 1].clone());
            masses[p as usize - 1] += f.integrate(&piece)?;
        }
        for t in 0..k {
            for j in t + 1..k {
                let gap = abs(&(&masses[t] - &masses[j]));
                if gap > max_gap {
                    max_gap = gap;
                }
            }
        }
        part_masses.push(masses);
    }
    let valid = max_gap <= *inst.epsilon();
    Ok(DivisionReport {
        part_masses,
        max_pairwise_gap: max_gap,
        valid,
    })
}
