use crate::{CircuitError, Result};

/// A single gate.  Operands are wire indices and must refer to wires defined
/// strictly before the gate's own wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Const0,
    Const1,
}

impl Gate {
    fn operands(&self) -> [Option<usize>; 2] {
        match *self {
            Gate::Not(a) => [Some(a), None],
            Gate::And(a, b) | Gate::Or(a, b) => [Some(a), Some(b)],
            Gate::Const0 | Gate::Const1 => [None, None],
        }
    }
}

/// A combinational circuit: `input_count` input wires, a topologically
/// ordered gate list, and a list of output wires.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoolCircuit {
    input_count: usize,
    gates: Vec<Gate>,
    outputs: Vec<usize>,
}

impl BoolCircuit {
    /// Validates wire references: every operand must point at an
    /// already-defined wire and every output at some wire.
    pub fn new(input_count: usize, gates: Vec<Gate>, outputs: Vec<usize>) -> Result<Self> {
        for (p, g) in gates.iter().enumerate() {
            let w = input_count + p;
            for op in g.operands().into_iter().flatten() {
                if op >= w {
                    return Err(CircuitError::Structure(format!(
                        "gate for wire {w} reads wire {op}, which is not defined yet"
                    )));
                }
            }
        }
        let total = input_count + gates.len();
        for &o in &outputs {
            if o >= total {
                return Err(CircuitError::Structure(format!(
                    "output wire {o} out of range (circuit has {total} wires)"
                )));
            }
        }
        Ok(BoolCircuit { input_count, gates, outputs })
    }

    pub fn input_count(&self) -> usize {
        self.input_count
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn wire_count(&self) -> usize {
        self.input_count + self.gates.len()
    }

    /// Evaluates the circuit on one input vector.
    pub fn evaluate(&self, inputs: &[bool]) -> Result<Vec<bool>> {
        let mut wires = Vec::new();
        self.evaluate_wires(inputs, &mut wires)?;
        Ok(self.outputs.iter().map(|&o| wires[o]).collect())
    }

    /// Like [`evaluate`](Self::evaluate) but reuses `wires` as scratch space,
    /// leaving the value of every wire in it.
    pub fn evaluate_wires(&self, inputs: &[bool], wires: &mut Vec<bool>) -> Result<()> {
        if inputs.len() != self.input_count {
            return Err(CircuitError::Structure(format!(
                "expected {} inputs, got {}",
                self.input_count,
                inputs.len()
            )));
        }
        wires.clear();
        wires.extend_from_slice(inputs);
        for g in &self.gates {
            let v = match *g {
                Gate::Not(a) => !wires[a],
                Gate::And(a, b) => wires[a] && wires[b],
                Gate::Or(a, b) => wires[a] || wires[b],
                Gate::Const0 => false,
                Gate::Const1 => true,
            };
            wires.push(v);
        }
        Ok(())
    }

    /// Recursive demand-driven evaluation, memoized per wire.  Functionally
    /// identical to [`evaluate`](Self::evaluate); kept as an independent
    /// reference implementation for differential tests.
    pub fn evaluate_reference(&self, inputs: &[bool]) -> Result<Vec<bool>> {
        if inputs.len() != self.input_count {
            return Err(CircuitError::Structure(format!(
                "expected {} inputs, got {}",
                self.input_count,
                inputs.len()
            )));
        }
        let mut memo: Vec<Option<bool>> = vec![None; self.wire_count()];
        fn demand(c: &BoolCircuit, inputs: &[bool], memo: &mut Vec<Option<bool>>, w: usize) -> bool {
            if let Some(v) = memo[w] {
                return v;
            }
            let v = if w < c.input_count {
                inputs[w]
            } else {
                match c.gates[w - c.input_count] {
                    Gate::Not(a) => !demand(c, inputs, memo, a),
                    Gate::And(a, b) => {
                        demand(c, inputs, memo, a) & demand(c, inputs, memo, b)
                    }
                    Gate::Or(a, b) => demand(c, inputs, memo, a) | demand(c, inputs, memo, b),
                    Gate::Const0 => false,
                    Gate::Const1 => true,
                }
            };
            memo[w] = Some(v);
            v
        }
        Ok(self
            .outputs
            .iter()
            .map(|&o| demand(self, inputs, &mut memo, o))
            .collect())
    }

    /// Feeds every output of `first` into the corresponding input of
    /// `second`, producing one circuit computing the composition.
    pub fn compose(first: &BoolCircuit, second: &BoolCircuit) -> Result<BoolCircuit> {
        if first.outputs.len() != second.input_count {
            return Err(CircuitError::Structure(format!(
                "cannot compose: first circuit has {} outputs, second expects {} inputs",
                first.outputs.len(),
                second.input_count
            )));
        }
        let mut gates = first.gates.clone();
        // Wire w of `second` maps to: outputs[w] of `first` for inputs,
        // shifted gate wires otherwise.
        let shift = first.wire_count() - second.input_count;
        let map = |w: usize| -> usize {
            if w < second.input_count {
                first.outputs[w]
            } else {
                w + shift
            }
        };
        for g in &second.gates {
            gates.push(match *g {
                Gate::Not(a) => Gate::Not(map(a)),
                Gate::And(a, b) => Gate::And(map(a), map(b)),
                Gate::Or(a, b) => Gate::Or(map(a), map(b)),
                Gate::Const0 => Gate::Const0,
                Gate::Const1 => Gate::Const1,
            });
        }
        let outputs = second.outputs.iter().map(|&o| map(o)).collect();
        BoolCircuit::new(first.input_count, gates, outputs)
    }
}

/// Rewrites CONST0 as `x0 AND NOT x0` and CONST1 as `x0 OR NOT x0`, leaving
/// a circuit over the pure NOT/AND/OR basis.  Requires at least one input.
pub fn eliminate_consts(c: &BoolCircuit) -> Result<BoolCircuit> {
    if c.input_count() == 0 {
        return Err(CircuitError::Structure(
            "cannot eliminate constants from a circuit with no inputs".into(),
        ));
    }
    let mut gates = Vec::new();
    let mut map = vec![0usize; c.wire_count()];
    for w in 0..c.input_count() {
        map[w] = w;
    }
    let n = c.input_count();
    let mut next = n;
    for (p, g) in c.gates().iter().enumerate() {
        let w = n + p;
        match *g {
            Gate::Const0 => {
                gates.push(Gate::Not(0));
                gates.push(Gate::And(0, next));
                next += 2;
                map[w] = next - 1;
            }
            Gate::Const1 => {
                gates.push(Gate::Not(0));
                gates.push(Gate::Or(0, next));
                next += 2;
                map[w] = next - 1;
            }
            Gate::Not(a) => {
                gates.push(Gate::Not(map[a]));
                next += 1;
                map[w] = next - 1;
            }
            Gate::And(a, b) => {
                gates.push(Gate::And(map[a], map[b]));
                next += 1;
                map[w] = next - 1;
            }
            Gate::Or(a, b) => {
                gates.push(Gate::Or(map[a], map[b]));
                next += 1;
                map[w] = next - 1;
            }
        }
    }
    let outputs = c.outputs().iter().map(|&o| map[o]).collect();
    BoolCircuit::new(n, gates, outputs)
}
