//! Line-oriented textual formats for instances and solutions.
//!
//! Every number is a rational in `p/q` form (plain integer when the
//! denominator is 1). Blank lines and lines starting with `#` are ignored.
//! The exact grammar is documented in FORMATS.md at the repository root.

use crate::{
    CHInstance, CutLabelling, DivisionInstance, DivisionSolution, Label, MeasureError, Result,
};
use exact_arith::{parse_rational, render, rint, Interval, Rational, StepFunction};

pub fn render_ch_instance(inst: &CHInstance) -> String {
    let mut s = String::new();
    s.push_str("kind consensus-halving\n");
    s.push_str(&format!("domain {}\n", render(inst.domain().hi())));
    s.push_str(&format!("epsilon {}\n", render(inst.epsilon())));
    for (name, f) in inst.agents() {
        s.push_str(&format!("agent {name}\n"));
        render_blocks(&mut s, f);
    }
    s
}

pub fn render_division_instance(inst: &DivisionInstance) -> String {
    let mut s = String::new();
    s.push_str("kind consensus-division\n");
    s.push_str(&format!("domain {}\n", render(inst.domain().hi())));
    s.push_str(&format!("epsilon {}\n", render(inst.epsilon())));
    s.push_str(&format!("k {}\n", inst.k()));
    s.push_str(&format!("ell {}\n", inst.ell()));
    for (i, f) in inst.agents().iter().enumerate() {
        s.push_str(&format!("agent a{}\n", i + 1));
        render_blocks(&mut s, f);
    }
    s
}

fn render_blocks(s: &mut String, f: &StepFunction) {
    for (from, to, h) in f.blocks() {
        s.push_str(&format!(
            "piece {} {} {}\n",
            render(&from),
            render(&to),
            render(&h)
        ));
    }
}

pub fn render_cut_labelling(sol: &CutLabelling) -> String {
    let mut s = String::new();
    s.push_str("kind halving-solution\n");
    s.push_str(&format!("first-label {}\n", sol.first_label()));
    for c in sol.cuts() {
        s.push_str(&format!("cut {}\n", render(c)));
    }
    s
}

pub fn render_division_solution(sol: &DivisionSolution) -> String {
    let mut s = String::new();
    s.push_str("kind division-solution\n");
    for c in sol.cuts() {
        s.push_str(&format!("cut {}\n", render(c)));
    }
    s.push_str("parts");
    for p in sol.part_of_piece() {
        s.push_str(&format!(" {p}"));
    }
    s.push('\n');
    s
}

/// Meaningful lines of a file: `(line number, tokens)`.
fn tokenize(s: &str) -> Vec<(usize, Vec<&str>)> {
    s.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, t)| !t.is_empty() && !t[0].starts_with('#'))
        .collect()
}

fn perr(line: usize, msg: impl Into<String>) -> MeasureError {
    MeasureError::Parse(format!("line {line}: {}", msg.into()))
}

fn expect_kind(lines: &[(usize, Vec<&str>)], want: &str) -> Result<()> {
    match lines.first() {
        Some((_, t)) if t.as_slice() == ["kind", want] => Ok(()),
        Some((ln, t)) => Err(perr(*ln, format!("expected `kind {want}`, got {:?}", t.join(" ")))),
        None => Err(MeasureError::Parse("empty file".into())),
    }
}

fn parse_num(line: usize, s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| perr(line, e.to_string()))
}

/// Header `key value` lines in order, then agent sections. Returns the
/// header values and the parsed agents.
fn parse_measure_file(
    lines: &[(usize, Vec<&str>)],
    header_keys: &[&str],
) -> Result<(Vec<Rational>, Vec<(String, StepFunction)>)> {
    let mut header = Vec::new();
    let mut idx = 1;
    for key in header_keys {
        match lines.get(idx) {
            Some((ln, t)) if t.len() == 2 && t[0] == *key => {
                header.push(parse_num(*ln, t[1])?);
                idx += 1;
            }
            Some((ln, t)) => {
                return Err(perr(*ln, format!("expected `{key} <value>`, got {:?}", t.join(" "))))
            }
            None => return Err(MeasureError::Parse(format!("missing `{key}` line"))),
        }
    }
    let domain = Interval::new(rint(0), header[0].clone())
        .map_err(|e| MeasureError::Parse(e.to_string()))?;

    let mut agents: Vec<(String, Vec<(Rational, Rational, Rational)>)> = Vec::new();
    for (ln, t) in &lines[idx..] {
        match t[0] {
            "agent" => {
                if t.len() != 2 {
                    return Err(perr(*ln, "expected `agent <name>`"));
                }
                agents.push((t[1].to_string(), Vec::new()));
            }
            "piece" => {
                if t.len() != 4 {
                    return Err(perr(*ln, "expected `piece <from> <to> <height>`"));
                }
                let triple = (
                    parse_num(*ln, t[1])?,
                    parse_num(*ln, t[2])?,
                    parse_num(*ln, t[3])?,
                );
                match agents.last_mut() {
                    Some((_, pieces)) => pieces.push(triple),
                    None => return Err(perr(*ln, "piece before any agent")),
                }
            }
            other => return Err(perr(*ln, format!("unexpected directive {other:?}"))),
        }
    }
    let mut out = Vec::with_capacity(agents.len());
    for (name, pieces) in agents {
        let f = StepFunction::from_pieces(&domain, &pieces)
            .map_err(|e| MeasureError::Parse(format!("agent {name}: {e}")))?;
        out.push((name, f));
    }
    Ok((header, out))
}

pub fn parse_ch_instance(s: &str) -> Result<CHInstance> {
    let lines = tokenize(s);
    expect_kind(&lines, "consensus-halving")?;
    let (header, agents) = parse_measure_file(&lines, &["domain", "epsilon"])?;
    CHInstance::new(agents, header[1].clone())
}

pub fn parse_division_instance(s: &str) -> Result<DivisionInstance> {
    let lines = tokenize(s);
    expect_kind(&lines, "consensus-division")?;
    let (header, agents) = parse_measure_file(&lines, &["domain", "epsilon", "k", "ell"])?;
    let k = small_int(&header[2], "k")?;
    let ell = small_int(&header[3], "ell")?;
    DivisionInstance::new(
        agents.into_iter().map(|(_, f)| f).collect(),
        k,
        ell,
        header[1].clone(),
    )
}

fn small_int(q: &Rational, what: &str) -> Result<u32> {
    if !q.is_integer() {
        return Err(MeasureError::Parse(format!("{what} must be an integer, got {}", render(q))));
    }
    u32::try_from(q.to_integer())
        .map_err(|_| MeasureError::Parse(format!("{what} out of range: {}", render(q))))
}

pub fn parse_cut_labelling(s: &str) -> Result<CutLabelling> {
    let lines = tokenize(s);
    expect_kind(&lines, "halving-solution")?;
    let first = match lines.get(1) {
        Some((_, t)) if t.as_slice() == ["first-label", "plus"] => Label::Plus,
        Some((_, t)) if t.as_slice() == ["first-label", "minus"] => Label::Minus,
        Some((ln, _)) => return Err(perr(*ln, "expected `first-label plus|minus`")),
        None => return Err(MeasureError::Parse("missing `first-label` line".into())),
    };
    let mut cuts = Vec::new();
    for (ln, t) in &lines[2..] {
        if t.len() == 2 && t[0] == "cut" {
            cuts.push(parse_num(*ln, t[1])?);
        } else {
            return Err(perr(*ln, format!("expected `cut <value>`, got {:?}", t.join(" "))));
        }
    }
    Ok(CutLabelling::new(cuts, first))
}

pub fn parse_division_solution(s: &str) -> Result<DivisionSolution> {
    let lines = tokenize(s);
    expect_kind(&lines, "division-solution")?;
    let mut cuts = Vec::new();
    let mut parts: Option<Vec<u32>> = None;
    for (ln, t) in &lines[1..] {
        match t[0] {
            "cut" if t.len() == 2 => cuts.push(parse_num(*ln, t[1])?),
            "parts" => {
                let ps: std::result::Result<Vec<u32>, _> =
                    t[1..].iter().map(|w| w.parse::<u32>()).collect();
                parts = Some(ps.map_err(|_| perr(*ln, "bad part index"))?);
            }
            _ => return Err(perr(*ln, format!("unexpected directive {:?}", t.join(" ")))),
        }
    }
    match parts {
        Some(p) => DivisionSolution::new(cuts, p),
        None => Err(MeasureError::Parse("missing `parts` line".into())),
    }
}
