use crate::{BoolCircuit, CircuitError, Gate, Result};

/// Renders a circuit in the line-oriented format:
///
/// ```text
/// inputs 2
/// 2: NOT 0
/// 3: AND 2 1
/// outputs 3
/// ```
///
/// Each gate line starts with the wire it defines (inputs occupy wires
/// `0..n`), followed by the operation and its operand wires.
pub fn render_circuit(c: &BoolCircuit) -> String {
    let mut out = String::new();
    out.push_str(&format!("inputs {}\n", c.input_count()));
    for (p, g) in c.gates().iter().enumerate() {
        let w = c.input_count() + p;
        let line = match *g {
            Gate::Not(a) => format!("{w}: NOT {a}"),
            Gate::And(a, b) => format!("{w}: AND {a} {b}"),
            Gate::Or(a, b) => format!("{w}: OR {a} {b}"),
            Gate::Const0 => format!("{w}: CONST0"),
            Gate::Const1 => format!("{w}: CONST1"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out.push_str("outputs");
    for &o in c.outputs() {
        out.push_str(&format!(" {o}"));
    }
    out.push('\n');
    out
}

fn parse_wire(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| CircuitError::Parse(format!("line {line}: expected a wire index, got {tok:?}")))
}

/// Parses the format produced by [`render_circuit`].  Blank lines and lines
/// starting with `#` are ignored.
pub fn parse_circuit(text: &str) -> Result<BoolCircuit> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (ln, header) = lines
        .next()
        .ok_or_else(|| CircuitError::Parse("empty circuit text".into()))?;
    let header_toks: Vec<&str> = header.split_whitespace().collect();
    let input_count = match header_toks.as_slice() {
        ["inputs", n] => parse_wire(n, ln)?,
        _ => {
            return Err(CircuitError::Parse(format!(
                "line {ln}: expected `inputs <n>`, got {header:?}"
            )))
        }
    };

    let mut gates = Vec::new();
    let mut outputs = None;
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if outputs.is_some() {
            return Err(CircuitError::Parse(format!(
                "line {ln}: content after the outputs line"
            )));
        }
        if toks[0] == "outputs" {
            let mut os = Vec::new();
            for t in &toks[1..] {
                os.push(parse_wire(t, ln)?);
            }
            outputs = Some(os);
            continue;
        }
        let Some(idx) = toks[0].strip_suffix(':') else {
            return Err(CircuitError::Parse(format!(
                "line {ln}: expected `<wire>: <OP> ...`, got {line:?}"
            )));
        };
        let w = parse_wire(idx, ln)?;
        if w != input_count + gates.len() {
            return Err(CircuitError::Parse(format!(
                "line {ln}: wire {w} out of order, expected {}",
                input_count + gates.len()
            )));
        }
        let gate = match &toks[1..] {
            ["NOT", a] => Gate::Not(parse_wire(a, ln)?),
            ["AND", a, b] => Gate::And(parse_wire(a, ln)?, parse_wire(b, ln)?),
            ["OR", a, b] => Gate::Or(parse_wire(a, ln)?, parse_wire(b, ln)?),
            ["CONST0"] => Gate::Const0,
            ["CONST1"] => Gate::Const1,
            _ => {
                return Err(CircuitError::Parse(format!(
                    "line {ln}: unrecognized gate line {line:?}"
                )))
            }
        };
        gates.push(gate);
    }
    let outputs = outputs
        .ok_or_else(|| CircuitError::Parse("missing outputs line".into()))?;
    BoolCircuit::new(input_count, gates, outputs)
}
