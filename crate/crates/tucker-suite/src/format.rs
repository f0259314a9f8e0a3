use crate::grid::GridSolution;
use crate::ms::MSTuckerInstance;
use crate::tucker::TuckerInstance;
use crate::vt::{VTSolution, VariantTuckerInstance, VtSemantic};
use crate::{Result, TuckerError};
use boolcircuit::{parse_circuit, render_circuit, BoolCircuit, CircuitError, TuckerLabel};

// Line-oriented instance and solution formats.  Every file starts with a
// `kind` line; blank lines and `#` comments are skipped everywhere except
// inside the circuit section, which runs to the end of the file in the
// circuit format.

struct Cursor<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            lines: text.lines().collect(),
            pos: 0,
        }
    }

    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        while self.pos < self.lines.len() {
            let i = self.pos;
            self.pos += 1;
            let t = self.lines[i].trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            return Some((i + 1, t));
        }
        None
    }

    fn rest(&self) -> String {
        self.lines[self.pos..].join("\n")
    }
}

fn perr(line: usize, msg: impl Into<String>) -> TuckerError {
    TuckerError::Parse(format!("line {line}: {}", msg.into()))
}

fn eof(expected: &str) -> TuckerError {
    TuckerError::Parse(format!("unexpected end of input, expected {expected}"))
}

fn expect_kind(cur: &mut Cursor, want: &str) -> Result<()> {
    let (ln, l) = cur.next_content().ok_or_else(|| eof("a kind line"))?;
    let toks: Vec<&str> = l.split_whitespace().collect();
    if toks.len() != 2 || toks[0] != "kind" || toks[1] != want {
        return Err(perr(ln, format!("expected \"kind {want}\", got \"{l}\"")));
    }
    Ok(())
}

fn keyed_u64(cur: &mut Cursor, key: &str) -> Result<u64> {
    let (ln, l) = cur
        .next_content()
        .ok_or_else(|| eof(&format!("a \"{key}\" line")))?;
    let toks: Vec<&str> = l.split_whitespace().collect();
    if toks.len() != 2 || toks[0] != key {
        return Err(perr(ln, format!("expected \"{key} <value>\", got \"{l}\"")));
    }
    toks[1]
        .parse::<u64>()
        .map_err(|_| perr(ln, format!("{key} must be a non-negative integer, got \"{}\"", toks[1])))
}

fn parse_label_token(ln: usize, tok: &str) -> Result<TuckerLabel> {
    match tok {
        "+1" | "1" => Ok(TuckerLabel::Plus1),
        "-1" => Ok(TuckerLabel::Minus1),
        "+2" | "2" => Ok(TuckerLabel::Plus2),
        "-2" => Ok(TuckerLabel::Minus2),
        _ => Err(perr(ln, format!("unknown label \"{tok}\""))),
    }
}

fn circuit_section(cur: &Cursor, at_line: usize) -> Result<BoolCircuit> {
    parse_circuit(&cur.rest()).map_err(|e| match e {
        CircuitError::Parse(m) => {
            TuckerError::Parse(format!("circuit section after line {at_line}: {m}"))
        }
        CircuitError::Structure(m) => TuckerError::Structure(m),
    })
}

pub fn render_tucker_instance(instance: &TuckerInstance) -> String {
    format!(
        "kind tucker\nn {}\ncircuit\n{}",
        instance.n(),
        render_circuit(instance.labeller())
    )
}

pub fn parse_tucker_instance(text: &str) -> Result<TuckerInstance> {
    let mut cur = Cursor::new(text);
    expect_kind(&mut cur, "tucker")?;
    let n = keyed_u64(&mut cur, "n")?;
    if n > 62 {
        return Err(TuckerError::Parse(format!("grid parameter {n} is out of range")));
    }
    let (ln, l) = cur.next_content().ok_or_else(|| eof("a circuit section"))?;
    if l != "circuit" {
        return Err(perr(ln, format!("expected \"circuit\", got \"{l}\"")));
    }
    TuckerInstance::new(n as u32, circuit_section(&cur, ln)?)
}

pub fn render_ms_instance(instance: &MSTuckerInstance) -> String {
    format!(
        "kind ms-tucker\nside {}\ncircuit\n{}",
        instance.side(),
        render_circuit(instance.labeller())
    )
}

pub fn parse_ms_instance(text: &str) -> Result<MSTuckerInstance> {
    let mut cur = Cursor::new(text);
    expect_kind(&mut cur, "ms-tucker")?;
    let side = keyed_u64(&mut cur, "side")?;
    let (ln, l) = cur.next_content().ok_or_else(|| eof("a circuit section"))?;
    if l != "circuit" {
        return Err(perr(ln, format!("expected \"circuit\", got \"{l}\"")));
    }
    MSTuckerInstance::new(side, circuit_section(&cur, ln)?)
}

pub fn render_vt_instance(instance: &VariantTuckerInstance) -> String {
    let mut out = format!("kind variant-tucker\nn {}\n", instance.n());
    if let Some(sem) = instance.semantic() {
        out.push_str(&format!("semantic {} {}\n", sem.original_side(), sem.margin()));
        let big_s = sem.padded_side();
        for j in 1..=big_s {
            out.push_str("row");
            for i in 1..=big_s {
                let label = sem.table()[((j - 1) * big_s + (i - 1)) as usize];
                out.push_str(&format!(" {label}"));
            }
            out.push('\n');
        }
    }
    out.push_str("circuit\n");
    out.push_str(&render_circuit(instance.labeller()));
    out
}

pub fn parse_vt_instance(text: &str) -> Result<VariantTuckerInstance> {
    let mut cur = Cursor::new(text);
    expect_kind(&mut cur, "variant-tucker")?;
    let n = keyed_u64(&mut cur, "n")?;
    if n > 32 {
        return Err(TuckerError::Parse(format!("grid parameter {n} is out of range")));
    }
    let n = n as u32;
    let (ln, l) = cur.next_content().ok_or_else(|| eof("a circuit section"))?;
    let toks: Vec<&str> = l.split_whitespace().collect();
    let (semantic, circuit_ln) = if toks[0] == "semantic" {
        if toks.len() != 3 {
            return Err(perr(ln, "expected \"semantic <side> <margin>\""));
        }
        let s: u64 = toks[1]
            .parse()
            .map_err(|_| perr(ln, format!("bad side \"{}\"", toks[1])))?;
        let k: u64 = toks[2]
            .parse()
            .map_err(|_| perr(ln, format!("bad margin \"{}\"", toks[2])))?;
        let big_s = 1u64 << n;
        let mut table = Vec::with_capacity((big_s * big_s) as usize);
        for _ in 0..big_s {
            let (rln, rl) = cur.next_content().ok_or_else(|| eof("a table row"))?;
            let rtoks: Vec<&str> = rl.split_whitespace().collect();
            if rtoks.first() != Some(&"row") || rtoks.len() != big_s as usize + 1 {
                return Err(perr(
                    rln,
                    format!("expected \"row\" with {big_s} labels, got \"{rl}\""),
                ));
            }
            for tok in &rtoks[1..] {
                table.push(parse_label_token(rln, tok)?);
            }
        }
        let (cln, cl) = cur.next_content().ok_or_else(|| eof("a circuit section"))?;
        if cl != "circuit" {
            return Err(perr(cln, format!("expected \"circuit\", got \"{cl}\"")));
        }
        (Some(VtSemantic::new(n, k, s, table)?), cln)
    } else if l == "circuit" {
        (None, ln)
    } else {
        return Err(perr(ln, format!("expected \"semantic\" or \"circuit\", got \"{l}\"")));
    };
    let instance = VariantTuckerInstance::new(n, circuit_section(&cur, circuit_ln)?)?;
    match semantic {
        Some(sem) => instance.with_semantic(sem),
        None => Ok(instance),
    }
}

pub fn render_grid_solution(solution: &GridSolution) -> String {
    format!(
        "kind grid-solution\nfirst {} {} {}\nsecond {} {} {}\n",
        solution.first.0,
        solution.first.1,
        solution.first_label,
        solution.second.0,
        solution.second.1,
        solution.second_label
    )
}

fn solution_line(cur: &mut Cursor, key: &str) -> Result<((u64, u64), TuckerLabel)> {
    let (ln, l) = cur
        .next_content()
        .ok_or_else(|| eof(&format!("a \"{key}\" line")))?;
    let toks: Vec<&str> = l.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != key {
        return Err(perr(ln, format!("expected \"{key} <x> <y> <label>\", got \"{l}\"")));
    }
    let x: u64 = toks[1]
        .parse()
        .map_err(|_| perr(ln, format!("bad coordinate \"{}\"", toks[1])))?;
    let y: u64 = toks[2]
        .parse()
        .map_err(|_| perr(ln, format!("bad coordinate \"{}\"", toks[2])))?;
    Ok(((x, y), parse_label_token(ln, toks[3])?))
}

pub fn parse_grid_solution(text: &str) -> Result<GridSolution> {
    let mut cur = Cursor::new(text);
    expect_kind(&mut cur, "grid-solution")?;
    let (first, first_label) = solution_line(&mut cur, "first")?;
    let (second, second_label) = solution_line(&mut cur, "second")?;
    if let Some((ln, l)) = cur.next_content() {
        return Err(perr(ln, format!("unexpected content after the solution: \"{l}\"")));
    }
    Ok(GridSolution {
        first,
        second,
        first_label,
        second_label,
    })
}

pub fn render_vt_solution(solution: &VTSolution) -> String {
    let mut out = format!(
        "kind vt-solution\nn {}\nwrapped {}\n",
        solution.n(),
        if solution.wrapped() { 1 } else { 0 }
    );
    for &(x, y) in solution.points() {
        out.push_str(&format!("point {x} {y}\n"));
    }
    out
}

pub fn parse_vt_solution(text: &str) -> Result<VTSolution> {
    let mut cur = Cursor::new(text);
    expect_kind(&mut cur, "vt-solution")?;
    let n = keyed_u64(&mut cur, "n")?;
    if n > 32 {
        return Err(TuckerError::Parse(format!("grid parameter {n} is out of range")));
    }
    let wrapped = match keyed_u64(&mut cur, "wrapped")? {
        0 => false,
        1 => true,
        other => {
            return Err(TuckerError::Parse(format!(
                "wrapped must be 0 or 1, got {other}"
            )))
        }
    };
    let mut points = Vec::new();
    while let Some((ln, l)) = cur.next_content() {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 3 || toks[0] != "point" {
            return Err(perr(ln, format!("expected \"point <x> <y>\", got \"{l}\"")));
        }
        let x: u64 = toks[1]
            .parse()
            .map_err(|_| perr(ln, format!("bad coordinate \"{}\"", toks[1])))?;
        let y: u64 = toks[2]
            .parse()
            .map_err(|_| perr(ln, format!("bad coordinate \"{}\"", toks[2])))?;
        points.push((x, y));
    }
    VTSolution::new(n as u32, points, wrapped)
}
