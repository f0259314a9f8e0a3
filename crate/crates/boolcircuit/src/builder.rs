use crate::{BoolCircuit, Gate, Result};

/// Incrementally builds a [`BoolCircuit`].  Methods return wire indices;
/// multi-bit words are `Vec<usize>` in little-endian order (index 0 least
/// significant).
#[derive(Debug, Clone)]
pub struct CircuitBuilder {
    input_count: usize,
    gates: Vec<Gate>,
}

impl CircuitBuilder {
    pub fn new(input_count: usize) -> Self {
        CircuitBuilder { input_count, gates: Vec::new() }
    }

    pub fn input(&self, i: usize) -> usize {
        assert!(i < self.input_count, "input {i} out of range");
        i
    }

    /// All input wires, little-endian word per caller's convention.
    pub fn inputs(&self) -> Vec<usize> {
        (0..self.input_count).collect()
    }

    fn push(&mut self, g: Gate) -> usize {
        self.gates.push(g);
        self.input_count + self.gates.len() - 1
    }

    pub fn not(&mut self, a: usize) -> usize {
        self.push(Gate::Not(a))
    }

    pub fn and(&mut self, a: usize, b: usize) -> usize {
        self.push(Gate::And(a, b))
    }

    pub fn or(&mut self, a: usize, b: usize) -> usize {
        self.push(Gate::Or(a, b))
    }

    pub fn const0(&mut self) -> usize {
        self.push(Gate::Const0)
    }

    pub fn const1(&mut self) -> usize {
        self.push(Gate::Const1)
    }

    pub fn xor(&mut self, a: usize, b: usize) -> usize {
        let na = self.not(a);
        let nb = self.not(b);
        let l = self.and(a, nb);
        let r = self.and(na, b);
        self.or(l, r)
    }

    pub fn xnor(&mut self, a: usize, b: usize) -> usize {
        let x = self.xor(a, b);
        self.not(x)
    }

    /// Two-way select: the result equals `if0` when `sel` is 0 and `if1`
    /// when `sel` is 1.
    pub fn mux(&mut self, sel: usize, if0: usize, if1: usize) -> usize {
        let ns = self.not(sel);
        let l = self.and(ns, if0);
        let r = self.and(sel, if1);
        self.or(l, r)
    }

    pub fn mux_word(&mut self, sel: usize, if0: &[usize], if1: &[usize]) -> Vec<usize> {
        assert_eq!(if0.len(), if1.len(), "mux_word arms differ in width");
        if0.iter()
            .zip(if1)
            .map(|(&a, &b)| self.mux(sel, a, b))
            .collect()
    }

    pub fn and_tree(&mut self, ws: &[usize]) -> usize {
        assert!(!ws.is_empty());
        let mut acc = ws[0];
        for &w in &ws[1..] {
            acc = self.and(acc, w);
        }
        acc
    }

    pub fn or_tree(&mut self, ws: &[usize]) -> usize {
        assert!(!ws.is_empty());
        let mut acc = ws[0];
        for &w in &ws[1..] {
            acc = self.or(acc, w);
        }
        acc
    }

    /// An unsigned constant as a little-endian word of the given width.
    pub fn const_word(&mut self, value: u64, width: usize) -> Vec<usize> {
        assert!(width == 64 || value >> width == 0, "constant does not fit");
        let zero = self.const0();
        let one = self.const1();
        (0..width)
            .map(|i| if value >> i & 1 == 1 { one } else { zero })
            .collect()
    }

    fn full_add(&mut self, a: usize, b: usize, c: usize) -> (usize, usize) {
        let ab = self.xor(a, b);
        let s = self.xor(ab, c);
        let t1 = self.and(a, b);
        let t2 = self.and(ab, c);
        let carry = self.or(t1, t2);
        (s, carry)
    }

    /// Ripple-carry addition of equal-width words with an explicit carry-in
    /// wire; returns the sum and the carry-out.
    pub fn add_with_carry(
        &mut self,
        a: &[usize],
        b: &[usize],
        carry_in: usize,
    ) -> (Vec<usize>, usize) {
        assert_eq!(a.len(), b.len(), "adder operands differ in width");
        let mut carry = carry_in;
        let mut sum = Vec::with_capacity(a.len());
        for (&x, &y) in a.iter().zip(b) {
            let (s, c) = self.full_add(x, y, carry);
            sum.push(s);
            carry = c;
        }
        (sum, carry)
    }

    pub fn add(&mut self, a: &[usize], b: &[usize]) -> (Vec<usize>, usize) {
        let c0 = self.const0();
        self.add_with_carry(a, b, c0)
    }

    pub fn not_word(&mut self, a: &[usize]) -> Vec<usize> {
        a.iter().map(|&w| self.not(w)).collect()
    }

    /// `a - b` modulo `2^width` (two's complement); the returned flag is 1
    /// exactly when no borrow occurred, i.e. when `a >= b` as unsigned.
    pub fn sub(&mut self, a: &[usize], b: &[usize]) -> (Vec<usize>, usize) {
        let nb = self.not_word(b);
        let one = self.const1();
        self.add_with_carry(a, &nb, one)
    }

    /// Two's-complement negation modulo `2^width`.
    pub fn neg(&mut self, a: &[usize]) -> Vec<usize> {
        let zero = self.const_word(0, a.len());
        self.sub(&zero, a).0
    }

    pub fn eq_word(&mut self, a: &[usize], b: &[usize]) -> usize {
        assert_eq!(a.len(), b.len());
        let bits: Vec<usize> = a.iter().zip(b).map(|(&x, &y)| self.xnor(x, y)).collect();
        self.and_tree(&bits)
    }

    /// Unsigned `a < b`.
    pub fn lt_unsigned(&mut self, a: &[usize], b: &[usize]) -> usize {
        let (_, no_borrow) = self.sub(a, b);
        self.not(no_borrow)
    }

    /// Unsigned `a <= b`.
    pub fn le_unsigned(&mut self, a: &[usize], b: &[usize]) -> usize {
        let gt = self.lt_unsigned(b, a);
        self.not(gt)
    }

    pub fn lt_const(&mut self, a: &[usize], c: u64) -> usize {
        let w = self.const_word(c, a.len());
        self.lt_unsigned(a, &w)
    }

    pub fn add_const(&mut self, a: &[usize], c: u64) -> Vec<usize> {
        let w = self.const_word(c, a.len());
        self.add(a, &w).0
    }

    pub fn sub_const(&mut self, a: &[usize], c: u64) -> Vec<usize> {
        let w = self.const_word(c, a.len());
        self.sub(a, &w).0
    }

    /// Clamps an unsigned word into `[lo, hi]`, both constant.
    pub fn clamp_const(&mut self, a: &[usize], lo: u64, hi: u64) -> Vec<usize> {
        assert!(lo <= hi);
        let low = self.const_word(lo, a.len());
        let high = self.const_word(hi, a.len());
        let below = self.lt_unsigned(a, &low);
        let clamped_low = self.mux_word(below, a, &low);
        let above = self.lt_unsigned(&high, &clamped_low);
        self.mux_word(above, &clamped_low, &high)
    }

    /// Widens a word by zero-extension.
    pub fn zero_extend(&mut self, a: &[usize], width: usize) -> Vec<usize> {
        assert!(width >= a.len());
        let zero = self.const0();
        let mut out = a.to_vec();
        out.resize(width, zero);
        out
    }

    /// Inlines another circuit, feeding `inputs` into its input wires, and
    /// returns the wires carrying its outputs.
    pub fn embed(&mut self, c: &BoolCircuit, inputs: &[usize]) -> Vec<usize> {
        assert_eq!(
            inputs.len(),
            c.input_count(),
            "embed: circuit expects {} inputs, got {}",
            c.input_count(),
            inputs.len()
        );
        let mut map = inputs.to_vec();
        for g in c.gates() {
            let w = match *g {
                Gate::Not(a) => self.not(map[a]),
                Gate::And(a, b) => self.and(map[a], map[b]),
                Gate::Or(a, b) => self.or(map[a], map[b]),
                Gate::Const0 => self.const0(),
                Gate::Const1 => self.const1(),
            };
            map.push(w);
        }
        c.outputs().iter().map(|&o| map[o]).collect()
    }

    pub fn gate_count(&self) -> usize {
        self.gates.len()
    }

    pub fn finish(self, outputs: Vec<usize>) -> Result<BoolCircuit> {
        BoolCircuit::new(self.input_count, self.gates, outputs)
    }
}
