use crate::{MeasureError, Result};
use exact_arith::{abs, render, rint, Interval, Rational, StepFunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    Plus,
    Minus,
}

impl Label {
    pub fn flip(self) -> Label {
        match self {
            Label::Plus => Label::Minus,
            Label::Minus => Label::Plus,
        }
    }
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Label::Plus => write!(f, "plus"),
            Label::Minus => write!(f, "minus"),
        }
    }
}

/// A consensus-halving instance: named agent measures on a common domain
/// `[0, x]`, each of mass exactly 1, and a tolerance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CHInstance {
    agents: Vec<(String, StepFunction)>,
    epsilon: Rational,
}

impl CHInstance {
    pub fn new(agents: Vec<(String, StepFunction)>, epsilon: Rational) -> Result<Self> {
        if agents.is_empty() {
            return Err(MeasureError::Structure("instance needs at least one agent".into()));
        }
        if epsilon < rint(0) {
            return Err(MeasureError::Structure(format!(
                "epsilon must be non-negative, got {}",
                render(&epsilon)
            )));
        }
        let domain = agents[0].1.domain();
        if domain.lo() != &rint(0) {
            return Err(MeasureError::Structure(format!(
                "domain must start at 0, got {domain}"
            )));
        }
        for (name, f) in &agents {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(MeasureError::Structure(format!(
                    "agent name {name:?} must be a single non-empty token"
                )));
            }
            if f.domain() != domain {
                return Err(MeasureError::Structure(format!(
                    "agent {name} has domain {}, expected {domain}",
                    f.domain()
                )));
            }
            if f.mass() != rint(1) {
                return Err(MeasureError::Structure(format!(
                    "agent {name} has mass {}, expected 1",
                    render(&f.mass())
                )));
            }
        }
        Ok(CHInstance { agents, epsilon })
    }

    pub fn agents(&self) -> &[(String, StepFunction)] {
        &self.agents
    }

    pub fn n(&self) -> usize {
        self.agents.len()
    }

    pub fn domain(&self) -> Interval {
        self.agents[0].1.domain()
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }
}

/// Scales a measure to mass exactly 1. The constructors refuse to do this
/// silently.
pub fn renormalize(f: &StepFunction) -> Result<StepFunction> {
    let m = f.mass();
    if m == rint(0) {
        return Err(MeasureError::Structure("cannot renormalize a zero measure".into()));
    }
    Ok(f.scale(&(rint(1) / m))?)
}

/// Cuts plus the label of the leftmost piece; the rest alternate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutLabelling {
    cuts: Vec<Rational>,
    first_label: Label,
}

impl CutLabelling {
    pub fn new(mut cuts: Vec<Rational>, first_label: Label) -> Self {
        cuts.sort();
        CutLabelling { cuts, first_label }
    }

    pub fn cuts(&self) -> &[Rational] {
        &self.cuts
    }

    pub fn first_label(&self) -> Label {
        self.first_label
    }

    pub fn label_of_piece(&self, i: usize) -> Label {
        if i % 2 == 0 {
            self.first_label
        } else {
            self.first_label.flip()
        }
    }

    /// The labelled pieces the cuts induce on `domain`. Cuts may repeat;
    /// repeated cuts induce zero-width pieces, which carry no mass.
    pub fn pieces(&self, domain: &Interval) -> Result<Vec<(Interval, Label)>> {
        for c in &self.cuts {
            if !domain.contains(c) {
                return Err(MeasureError::Domain(format!(
                    "cut {} outside domain {domain}",
                    render(c)
                )));
            }
        }
        let mut edges = vec![domain.lo().clone()];
        edges.extend(self.cuts.iter().cloned());
        edges.push(domain.hi().clone());
        let mut out = Vec::with_capacity(edges.len() - 1);
        for i in 0..edges.len() - 1 {
            out.push((
                Interval::make(edges[i].clone(), edges[i + 1].clone()),
                self.label_of_piece(i),
            ));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalvingReport {
    pub per_agent_discrepancy: Vec<Rational>,
    pub max_discrepancy: Rational,
    pub valid: bool,
}

/// Each agent's signed view `mu(A+) - mu(A-)` of a labelling.
pub fn signed_balances(inst: &CHInstance, sol: &CutLabelling) -> Result<Vec<Rational>> {
    if sol.cuts().len() > inst.n() {
        return Err(MeasureError::Structure(format!(
            "{} cuts for {} agents",
            sol.cuts().len(),
            inst.n()
        )));
    }
    let pieces = sol.pieces(&inst.domain())?;
    let mut out = Vec::with_capacity(inst.n());
    for (_, f) in inst.agents() {
        let mut balance = rint(0);
        for (piece, label) in &pieces {
            let m = f.integrate(piece)?;
            match label {
                Label::Plus => balance += m,
                Label::Minus => balance -= m,
            }
        }
        out.push(balance);
    }
    Ok(out)
}

pub fn verify_halving(inst: &CHInstance, sol: &CutLabelling) -> Result<HalvingReport> {
    let per_agent_discrepancy: Vec<Rational> =
        signed_balances(inst, sol)?.iter().map(abs).collect();
    let max_discrepancy = per_agent_discrepancy.iter().max().unwrap().clone();
    let valid = max_discrepancy <= *inst.epsilon();
    Ok(HalvingReport {
        per_agent_discrepancy,
        max_discrepancy,
        valid,
    })
}

/// Turns cuts with arbitrary per-piece labels into the alternating form:
/// merges consecutive same-labelled pieces and parks each freed cut at the
/// right endpoint of the domain, where it bounds a zero-width piece.
pub fn normalize_labelling(
    inst: &CHInstance,
    cuts: &[Rational],
    labels: &[Label],
) -> Result<CutLabelling> {
    if labels.len() != cuts.len() + 1 {
        return Err(MeasureError::Structure(format!(
            "{} labels for {} cuts",
            labels.len(),
            cuts.len()
        )));
    }
    for w in cuts.windows(2) {
        if w[0] > w[1] {
            return Err(MeasureError::Structure("cuts not sorted".into()));
        }
    }
    let domain = inst.domain();
    for c in cuts {
        if !domain.contains(c) {
            return Err(MeasureError::Domain(format!(
                "cut {} outside domain {domain}",
                render(c)
            )));
        }
    }
    let mut kept = Vec::new();
    let mut freed = 0usize;
    for i in 0..cuts.len() {
        if labels[i + 1] == labels[i] {
            freed += 1;
        } else {
            kept.push(cuts[i].clone());
        }
    }
    kept.extend(std::iter::repeat(domain.hi().clone()).take(freed));
    Ok(CutLabelling::new(kept, labels[0]))
}
