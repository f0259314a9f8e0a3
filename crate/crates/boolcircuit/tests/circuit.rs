use boolcircuit::{
    eliminate_consts, label_word_of, parse_circuit, render_circuit, BoolCircuit, CircuitBuilder,
    Gate, LabelWord, TuckerLabel,
};
use proptest::prelude::*;

fn bits(s: &str) -> Vec<bool> {
    s.chars().map(|c| c == '1').collect()
}

#[test]
fn single_not_gate() {
    let c = BoolCircuit::new(1, vec![Gate::Not(0)], vec![1]).unwrap();
    assert_eq!(c.evaluate(&[false]).unwrap(), vec![true]);
    assert_eq!(c.evaluate(&[true]).unwrap(), vec![false]);
}

#[test]
fn single_and_gate() {
    let c = BoolCircuit::new(2, vec![Gate::And(0, 1)], vec![2]).unwrap();
    assert_eq!(c.evaluate(&[true, false]).unwrap(), vec![false]);
    assert_eq!(c.evaluate(&[true, true]).unwrap(), vec![true]);
}

#[test]
fn forward_reference_rejected() {
    assert!(BoolCircuit::new(1, vec![Gate::And(0, 1)], vec![1]).is_err());
    assert!(BoolCircuit::new(1, vec![Gate::Not(0)], vec![2]).is_err());
}

#[test]
fn arity_mismatch_is_an_error() {
    let c = BoolCircuit::new(2, vec![Gate::Or(0, 1)], vec![2]).unwrap();
    assert!(c.evaluate(&[true]).is_err());
    assert!(c.evaluate(&[true, false, true]).is_err());
}

/// The two-bit to four-bit output constrainer: 00 -> 1110, 01 -> 0001,
/// 10 -> 0111, 11 -> 1000.
fn constrainer() -> BoolCircuit {
    let mut b = CircuitBuilder::new(2);
    let (b0, b1) = (b.input(0), b.input(1));
    let nb0 = b.not(b0);
    let one = b.const1();
    let pos = [nb0, one, one, b0];
    let outs: Vec<usize> = pos.iter().map(|&p| b.xor(p, b1)).collect();
    b.finish(outs).unwrap()
}

#[test]
fn constrainer_matches_the_label_table() {
    let c = constrainer();
    let cases = [
        ((false, false), TuckerLabel::Plus1, "1110"),
        ((false, true), TuckerLabel::Minus1, "0001"),
        ((true, false), TuckerLabel::Plus2, "0111"),
        ((true, true), TuckerLabel::Minus2, "1000"),
    ];
    for ((b0, b1), label, word) in cases {
        let out = c.evaluate(&[b0, b1]).unwrap();
        assert_eq!(out, bits(word), "wrong word for {label}");
        let w = LabelWord::from_bits([out[0], out[1], out[2], out[3]]).unwrap();
        assert_eq!(w.label().unwrap(), label);
        assert_eq!(w, label_word_of(label));
        assert_eq!(TuckerLabel::from_bits(b0, b1), label);
    }
}

#[test]
fn composing_two_inverters_is_the_identity() {
    let inv = BoolCircuit::new(1, vec![Gate::Not(0)], vec![1]).unwrap();
    let c = BoolCircuit::compose(&inv, &inv).unwrap();
    for v in [false, true] {
        assert_eq!(c.evaluate(&[v]).unwrap(), vec![v]);
    }
}

#[test]
fn ripple_adder_example() {
    // 0101 + 0011 = 1000 reading most significant bit first: 5 + 3 = 8.
    let mut b = CircuitBuilder::new(8);
    let a: Vec<usize> = (0..4).collect();
    let x: Vec<usize> = (4..8).collect();
    let (sum, _) = b.add(&a, &x);
    let c = b.finish(sum).unwrap();
    let mut input = vec![true, false, true, false]; // 5, little-endian
    input.extend([true, true, false, false]); // 3
    let out = c.evaluate(&input).unwrap();
    assert_eq!(out, vec![false, false, false, true]); // 8
}

#[test]
fn adder_exhaustive_four_bits() {
    let mut b = CircuitBuilder::new(8);
    let a: Vec<usize> = (0..4).collect();
    let x: Vec<usize> = (4..8).collect();
    let (sum, carry) = b.add(&a, &x);
    let mut outs = sum;
    outs.push(carry);
    let c = b.finish(outs).unwrap();
    for p in 0u64..16 {
        for q in 0u64..16 {
            let mut input: Vec<bool> = (0..4).map(|i| p >> i & 1 == 1).collect();
            input.extend((0..4).map(|i| q >> i & 1 == 1));
            let out = c.evaluate(&input).unwrap();
            let got = out
                .iter()
                .enumerate()
                .map(|(i, &v)| (v as u64) << i)
                .sum::<u64>();
            assert_eq!(got, p + q);
        }
    }
}

#[test]
fn subtractor_and_comparators() {
    let mut b = CircuitBuilder::new(8);
    let a: Vec<usize> = (0..4).collect();
    let x: Vec<usize> = (4..8).collect();
    let (diff, no_borrow) = b.sub(&a, &x);
    let lt = b.lt_unsigned(&a, &x);
    let le = b.le_unsigned(&a, &x);
    let eq = b.eq_word(&a, &x);
    let mut outs = diff;
    outs.extend([no_borrow, lt, le, eq]);
    let c = b.finish(outs).unwrap();
    for p in 0u64..16 {
        for q in 0u64..16 {
            let mut input: Vec<bool> = (0..4).map(|i| p >> i & 1 == 1).collect();
            input.extend((0..4).map(|i| q >> i & 1 == 1));
            let out = c.evaluate(&input).unwrap();
            let diff = (0..4).map(|i| (out[i] as u64) << i).sum::<u64>();
            assert_eq!(diff, (p.wrapping_sub(q)) & 15, "diff at {p},{q}");
            assert_eq!(out[4], p >= q, "borrow at {p},{q}");
            assert_eq!(out[5], p < q);
            assert_eq!(out[6], p <= q);
            assert_eq!(out[7], p == q);
        }
    }
}

#[test]
fn mux_selects_second_input_when_set() {
    let mut b = CircuitBuilder::new(3);
    let m = b.mux(2, 0, 1);
    let c = b.finish(vec![m]).unwrap();
    assert_eq!(c.evaluate(&[true, false, true]).unwrap(), vec![false]);
    assert_eq!(c.evaluate(&[true, false, false]).unwrap(), vec![true]);
    assert_eq!(c.evaluate(&[false, true, true]).unwrap(), vec![true]);
}

#[test]
fn clamp_const_behaves_like_integer_clamp() {
    let mut b = CircuitBuilder::new(4);
    let a: Vec<usize> = (0..4).collect();
    let out = b.clamp_const(&a, 3, 11);
    let c = b.finish(out).unwrap();
    for v in 0u64..16 {
        let input: Vec<bool> = (0..4).map(|i| v >> i & 1 == 1).collect();
        let out = c.evaluate(&input).unwrap();
        let got = (0..4).map(|i| (out[i] as u64) << i).sum::<u64>();
        assert_eq!(got, v.clamp(3, 11));
    }
}

#[test]
fn embedding_a_circuit_matches_separate_evaluation() {
    let inner = constrainer();
    let mut b = CircuitBuilder::new(2);
    let x = b.xor(0, 1);
    let outs = b.embed(&inner, &[x, 1]);
    let c = b.finish(outs).unwrap();
    for p in [false, true] {
        for q in [false, true] {
            let expected = inner.evaluate(&[p ^ q, q]).unwrap();
            assert_eq!(c.evaluate(&[p, q]).unwrap(), expected);
        }
    }
}

#[test]
fn complementing_a_label_word_negates_its_label() {
    for label in TuckerLabel::ALL {
        let w = label_word_of(label);
        let comp = w.complement();
        assert_eq!(comp.label().unwrap(), label.negate());
        assert_eq!(comp, label_word_of(label.negate()));
    }
    assert!(LabelWord::from_bits([true, false, true, false]).is_err());
}

#[test]
fn render_parse_round_trip() {
    let c = constrainer();
    let text = render_circuit(&c);
    let back = parse_circuit(&text).unwrap();
    assert_eq!(c, back);
    assert!(parse_circuit("inputs 1\n1: NOT 5\noutputs 1\n").is_err());
    assert!(parse_circuit("inputs 1\n2: NOT 0\noutputs 2\n").is_err());
    assert!(parse_circuit("inputs 1\n1: NAND 0 0\noutputs 1\n").is_err());
    assert!(parse_circuit("inputs 1\n1: NOT 0\n").is_err());
}

#[test]
fn const_elimination_preserves_semantics() {
    let mut b = CircuitBuilder::new(2);
    let one = b.const1();
    let zero = b.const0();
    let x = b.xor(0, one);
    let y = b.or(x, zero);
    let a = b.and(y, 1);
    let c = b.finish(vec![a, one]).unwrap();
    let pure = eliminate_consts(&c).unwrap();
    assert!(pure
        .gates()
        .iter()
        .all(|g| !matches!(g, Gate::Const0 | Gate::Const1)));
    for p in [false, true] {
        for q in [false, true] {
            assert_eq!(c.evaluate(&[p, q]).unwrap(), pure.evaluate(&[p, q]).unwrap());
        }
    }
}

fn arb_circuit() -> impl Strategy<Value = (BoolCircuit, usize)> {
    // A random well-formed circuit: each gate draws operands from earlier wires.
    (2usize..6, proptest::collection::vec((0u8..5, 0usize..1000, 0usize..1000), 1..40)).prop_map(
        |(inputs, raw)| {
            let mut gates = Vec::new();
            for (op, a, b) in raw {
                let limit = inputs + gates.len();
                let a = a % limit;
                let b = b % limit;
                gates.push(match op {
                    0 => Gate::Not(a),
                    1 => Gate::And(a, b),
                    2 => Gate::Or(a, b),
                    3 => Gate::Const0,
                    _ => Gate::Const1,
                });
            }
            let total = inputs + gates.len();
            let c = BoolCircuit::new(inputs, gates, vec![total - 1, total / 2]).unwrap();
            (c, inputs)
        },
    )
}

proptest! {
    #[test]
    fn evaluation_matches_reference_interpreter(
        (c, inputs) in arb_circuit(),
        seed in proptest::collection::vec(any::<bool>(), 100),
    ) {
        // 100 random vectors per generated circuit, derived from the seed bits.
        for chunk in 0..100 {
            let v: Vec<bool> = (0..inputs).map(|i| seed[(chunk + i * 7) % seed.len()]).collect();
            prop_assert_eq!(c.evaluate(&v).unwrap(), c.evaluate_reference(&v).unwrap());
        }
    }

    #[test]
    fn composition_agrees_with_sequential_evaluation(
        (c, inputs) in arb_circuit(),
        vec_bits in proptest::collection::vec(any::<bool>(), 8),
    ) {
        // Compose the circuit with a word-wide inverter and compare.
        let mut b = CircuitBuilder::new(2);
        let n0 = b.not(0);
        let n1 = b.not(1);
        let inv = b.finish(vec![n0, n1]).unwrap();
        let composed = BoolCircuit::compose(&c, &inv).unwrap();
        let v: Vec<bool> = (0..inputs).map(|i| vec_bits[i % vec_bits.len()]).collect();
        let direct: Vec<bool> = c.evaluate(&v).unwrap().iter().map(|&x| !x).collect();
        prop_assert_eq!(composed.evaluate(&v).unwrap(), direct);
    }
}
