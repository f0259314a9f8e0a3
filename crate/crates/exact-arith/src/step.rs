use crate::{ArithError, Interval, Rational, Result};
use num::traits::Zero;

/// Piecewise-constant function on a closed rational interval.
///
/// Stored as strictly increasing breakpoints spanning the domain and one
/// non-negative height per consecutive pair. Pieces are half-open `[b, b')`
/// with the final piece closed, which makes point queries deterministic;
/// integrals cannot see the difference. The constructor canonicalizes by
/// merging adjacent pieces of equal height, so equality is semantic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StepFunction {
    breakpoints: Vec<Rational>,
    heights: Vec<Rational>,
    /// prefix[i] = integral over [breakpoints[0], breakpoints[i]]
    prefix: Vec<Rational>,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<Rational>, heights: Vec<Rational>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(ArithError::Structure(
                "step function needs at least two breakpoints".into(),
            ));
        }
        if heights.len() + 1 != breakpoints.len() {
            return Err(ArithError::Structure(format!(
                "height count {} does not match breakpoint count {}",
                heights.len(),
                breakpoints.len()
            )));
        }
        for w in breakpoints.windows(2) {
            if w[0] >= w[1] {
                return Err(ArithError::Structure(format!(
                    "breakpoints not strictly increasing at {}",
                    crate::render(&w[0])
                )));
            }
        }
        for h in &heights {
            if h < &Rational::zero() {
                return Err(ArithError::Structure(format!(
                    "negative height {}",
                    crate::render(h)
                )));
            }
        }

        // Canonicalize: merge runs of equal height.
        let mut bps = Vec::with_capacity(breakpoints.len());
        let mut hts: Vec<Rational> = Vec::with_capacity(heights.len());
        bps.push(breakpoints[0].clone());
        for (i, h) in heights.iter().enumerate() {
            if hts.last() == Some(h) {
                *bps.last_mut().unwrap() = breakpoints[i + 1].clone();
            } else {
                hts.push(h.clone());
                bps.push(breakpoints[i + 1].clone());
            }
        }

        let mut prefix = Vec::with_capacity(bps.len());
        let mut acc = Rational::zero();
        prefix.push(acc.clone());
        for i in 0..hts.len() {
            acc += &hts[i] * (&bps[i + 1] - &bps[i]);
            prefix.push(acc.clone());
        }

        Ok(StepFunction {
            breakpoints: bps,
            heights: hts,
            prefix,
        })
    }

    /// Constant function over a domain.
    pub fn uniform(domain: &Interval, height: Rational) -> Result<Self> {
        if domain.is_degenerate() {
            return Err(ArithError::Structure(
                "degenerate domain for step function".into(),
            ));
        }
        Self::new(vec![domain.lo().clone(), domain.hi().clone()], vec![height])
    }

    /// Builds from disjoint `(from, to, height)` blocks inside `domain`,
    /// filling everything uncovered with height 0. Blocks must be sorted,
    /// non-overlapping (touching is fine), and non-degenerate.
    pub fn from_pieces(domain: &Interval, pieces: &[(Rational, Rational, Rational)]) -> Result<Self> {
        if domain.is_degenerate() {
            return Err(ArithError::Structure(
                "degenerate domain for step function".into(),
            ));
        }
        let mut bps = vec![domain.lo().clone()];
        let mut hts = Vec::new();
        for (from, to, height) in pieces {
            if from >= to {
                return Err(ArithError::Structure(format!(
                    "empty or inverted piece [{}, {}]",
                    crate::render(from),
                    crate::render(to)
                )));
            }
            if from < domain.lo() || to > domain.hi() {
                return Err(ArithError::Domain(format!(
                    "piece [{}, {}] outside domain {}",
                    crate::render(from),
                    crate::render(to),
                    domain
                )));
            }
            let cursor = bps.last().unwrap();
            if from < cursor {
                return Err(ArithError::Structure(format!(
                    "pieces overlap or are unsorted at {}",
                    crate::render(from)
                )));
            }
            if from > cursor {
                bps.push(from.clone());
                hts.push(Rational::zero());
            }
            bps.push(to.clone());
            hts.push(height.clone());
        }
        if bps.last().unwrap() < domain.hi() {
            bps.push(domain.hi().clone());
            hts.push(Rational::zero());
        }
        Self::new(bps, hts)
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn heights(&self) -> &[Rational] {
        &self.heights
    }

    pub fn domain(&self) -> Interval {
        Interval::make(
            self.breakpoints.first().unwrap().clone(),
            self.breakpoints.last().unwrap().clone(),
        )
    }

    /// Non-zero pieces as `(from, to, height)` triples; the file-format view.
    pub fn blocks(&self) -> Vec<(Rational, Rational, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.heights.len() {
            if !self.heights[i].is_zero() {
                out.push((
                    self.breakpoints[i].clone(),
                    self.breakpoints[i + 1].clone(),
                    self.heights[i].clone(),
                ));
            }
        }
        out
    }

    /// Index of the piece containing `t`: the piece `[b_i, b_{i+1})`, with the
    /// final piece closed on the right.
    fn piece_index(&self, t: &Rational) -> usize {
        match self.breakpoints.binary_search(t) {
            Ok(i) => i.min(self.heights.len() - 1),
            Err(i) => i - 1, // t strictly between breakpoints i-1 and i
        }
    }

    /// The height at `t` under the half-open piece convention.
    pub fn value_at(&self, t: &Rational) -> Result<Rational> {
        if !self.domain().contains(t) {
            return Err(ArithError::Domain(format!(
                "point {} outside domain {}",
                crate::render(t),
                self.domain()
            )));
        }
        Ok(self.heights[self.piece_index(t)].clone())
    }

    /// Integral over `[domain.lo, t]`.
    pub fn cum(&self, t: &Rational) -> Result<Rational> {
        if !self.domain().contains(t) {
            return Err(ArithError::Domain(format!(
                "point {} outside domain {}",
                crate::render(t),
                self.domain()
            )));
        }
        let i = self.piece_index(t);
        Ok(&self.prefix[i] + &self.heights[i] * (t - &self.breakpoints[i]))
    }

    /// Exact integral over a subinterval of the domain.
    pub fn integrate(&self, over: &Interval) -> Result<Rational> {
        if !self.domain().contains_interval(over) {
            return Err(ArithError::Domain(format!(
                "integration interval {} outside domain {}",
                over,
                self.domain()
            )));
        }
        Ok(self.cum(over.hi())? - self.cum(over.lo())?)
    }

    /// Total mass.
    pub fn mass(&self) -> Rational {
        self.prefix.last().unwrap().clone()
    }

    /// All heights multiplied by a positive factor.
    pub fn scale(&self, factor: &Rational) -> Result<StepFunction> {
        if factor <= &Rational::zero() {
            return Err(ArithError::Argument(format!(
                "scale factor must be positive, got {}",
                crate::render(factor)
            )));
        }
        StepFunction::new(
            self.breakpoints.clone(),
            self.heights.iter().map(|h| h * factor).collect(),
        )
    }

    /// The same function on a shifted domain.
    pub fn translate(&self, offset: &Rational) -> StepFunction {
        StepFunction::new(
            self.breakpoints.iter().map(|b| b + offset).collect(),
            self.heights.clone(),
        )
        .expect("translation preserves validity")
    }
}

/// Sorted, deduplicated union of the breakpoints of step functions sharing a
/// common domain. Every input function is constant strictly between
/// consecutive output values.
pub fn union_breakpoints(fs: &[&StepFunction]) -> Result<Vec<Rational>> {
    if fs.is_empty() {
        return Err(ArithError::Argument("no step functions given".into()));
    }
    let domain = fs[0].domain();
    for f in fs {
        if f.domain() != domain {
            return Err(ArithError::Domain(format!(
                "mismatched domains: {} vs {}",
                f.domain(),
                domain
            )));
        }
    }
    let mut all: Vec<Rational> = fs
        .iter()
        .flat_map(|f| f.breakpoints().iter().cloned())
        .collect();
    all.sort();
    all.dedup();
    Ok(all)
}
