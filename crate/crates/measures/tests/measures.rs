use exact_arith::{rat, rint, Interval, StepFunction};
use measures::{
    normalize_labelling, parse_ch_instance, parse_cut_labelling, parse_division_instance,
    parse_division_solution, render_ch_instance, render_cut_labelling, render_division_instance,
    render_division_solution, renormalize, signed_balances, verify_division, verify_halving,
    CHInstance, CutLabelling, DivisionInstance, DivisionSolution, Label, MeasureError,
};

fn unit() -> Interval {
    Interval::make(rint(0), rint(1))
}

fn uniform_agent(name: &str) -> (String, StepFunction) {
    (name.into(), StepFunction::uniform(&unit(), rint(1)).unwrap())
}

fn front_loaded(name: &str) -> (String, StepFunction) {
    let f = StepFunction::from_pieces(&unit(), &[(rint(0), rat(1, 2), rint(2))]).unwrap();
    (name.into(), f)
}

#[test]
fn uniform_agent_split_at_half() {
    let inst = CHInstance::new(vec![uniform_agent("a")], rint(0)).unwrap();
    let sol = CutLabelling::new(vec![rat(1, 2)], Label::Plus);
    let rep = verify_halving(&inst, &sol).unwrap();
    assert_eq!(rep.per_agent_discrepancy, vec![rint(0)]);
    assert!(rep.valid);
}

#[test]
fn two_agents_two_cuts() {
    let inst = CHInstance::new(vec![uniform_agent("a"), front_loaded("b")], rint(0)).unwrap();
    let sol = CutLabelling::new(vec![rat(1, 4), rat(3, 4)], Label::Plus);
    let rep = verify_halving(&inst, &sol).unwrap();
    assert_eq!(rep.per_agent_discrepancy, vec![rint(0), rint(0)]);
    assert!(rep.valid);
}

#[test]
fn off_center_cut_is_invalid() {
    let inst = CHInstance::new(vec![uniform_agent("a")], rat(1, 10)).unwrap();
    let sol = CutLabelling::new(vec![rat(1, 4)], Label::Plus);
    let rep = verify_halving(&inst, &sol).unwrap();
    assert_eq!(rep.max_discrepancy, rat(1, 2));
    assert!(!rep.valid);
}

#[test]
fn verify_rejects_malformed_solutions() {
    let inst = CHInstance::new(vec![uniform_agent("a")], rint(0)).unwrap();
    let too_many = CutLabelling::new(vec![rat(1, 4), rat(1, 2)], Label::Plus);
    assert!(matches!(
        verify_halving(&inst, &too_many),
        Err(MeasureError::Structure(_))
    ));
    let outside = CutLabelling::new(vec![rint(2)], Label::Plus);
    assert!(matches!(
        verify_halving(&inst, &outside),
        Err(MeasureError::Domain(_))
    ));
}

#[test]
fn instance_constructor_rejections() {
    let half = StepFunction::uniform(&unit(), rat(1, 2)).unwrap();
    assert!(CHInstance::new(vec![("a".into(), half.clone())], rint(0)).is_err());
    let fixed = renormalize(&half).unwrap();
    assert!(CHInstance::new(vec![("a".into(), fixed)], rint(0)).is_ok());

    let shifted = StepFunction::uniform(&Interval::make(rint(1), rint(2)), rint(1)).unwrap();
    assert!(CHInstance::new(vec![("a".into(), shifted)], rint(0)).is_err());

    let (_, f) = uniform_agent("a");
    assert!(CHInstance::new(vec![("bad name".into(), f.clone())], rint(0)).is_err());
    assert!(CHInstance::new(vec![("a".into(), f)], rint(-1)).is_err());
}

#[test]
fn normalize_merges_and_parks_cuts() {
    let inst = CHInstance::new(vec![uniform_agent("a")], rint(0)).unwrap();

    let sol = normalize_labelling(&inst, &[rat(1, 2)], &[Label::Plus, Label::Plus]).unwrap();
    assert_eq!(sol.cuts(), &[rint(1)]);
    assert_eq!(sol.first_label(), Label::Plus);

    let sol = normalize_labelling(
        &inst,
        &[rat(3, 10), rat(6, 10)],
        &[Label::Plus, Label::Plus, Label::Minus],
    )
    .unwrap();
    assert_eq!(sol.cuts(), &[rat(3, 5), rint(1)]);
    assert_eq!(sol.first_label(), Label::Plus);

    let sol = normalize_labelling(&inst, &[rat(1, 3)], &[Label::Minus, Label::Plus]).unwrap();
    assert_eq!(sol.cuts(), &[rat(1, 3)]);
    assert_eq!(sol.first_label(), Label::Minus);
}

#[test]
fn equal_thirds_and_friends() {
    let agent = StepFunction::uniform(&unit(), rint(1)).unwrap();
    let inst = DivisionInstance::new(vec![agent.clone()], 2, 1, rint(0)).unwrap();
    let sol = DivisionSolution::new(vec![rat(1, 2)], vec![1, 2]).unwrap();
    let rep = verify_division(&inst, &sol).unwrap();
    assert_eq!(rep.max_pairwise_gap, rint(0));
    assert!(rep.valid);

    let inst3 = DivisionInstance::new(vec![agent.clone()], 3, 1, rint(0)).unwrap();
    let sol3 = DivisionSolution::new(vec![rat(1, 3), rat(2, 3)], vec![1, 2, 3]).unwrap();
    let rep3 = verify_division(&inst3, &sol3).unwrap();
    assert_eq!(rep3.max_pairwise_gap, rint(0));
    assert!(rep3.valid);

    let inst_eps = DivisionInstance::new(vec![agent], 2, 1, rat(1, 10)).unwrap();
    let bad = DivisionSolution::new(vec![rat(1, 4)], vec![1, 2]).unwrap();
    let rep_bad = verify_division(&inst_eps, &bad).unwrap();
    assert_eq!(rep_bad.max_pairwise_gap, rat(1, 2));
    assert!(!rep_bad.valid);
}

#[test]
fn division_structural_errors() {
    let agent = StepFunction::uniform(&unit(), rint(1)).unwrap();
    let inst = DivisionInstance::new(vec![agent], 2, 1, rint(0)).unwrap();

    let bad_part = DivisionSolution::new(vec![rat(1, 2)], vec![1, 3]).unwrap();
    assert!(matches!(
        verify_division(&inst, &bad_part),
        Err(MeasureError::Structure(_))
    ));

    let too_many = DivisionSolution::new(vec![rat(1, 4), rat(1, 2)], vec![1, 2, 1]).unwrap();
    assert!(matches!(
        verify_division(&inst, &too_many),
        Err(MeasureError::Structure(_))
    ));

    assert!(DivisionSolution::new(vec![rat(1, 2)], vec![1]).is_err());
}

#[test]
fn halving_is_division_with_k2() {
    let inst_h = CHInstance::new(vec![uniform_agent("a"), front_loaded("b")], rint(0)).unwrap();
    let cuts = vec![rat(1, 4), rat(3, 4)];
    let rep_h = verify_halving(&inst_h, &CutLabelling::new(cuts.clone(), Label::Plus)).unwrap();

    let agents = inst_h.agents().iter().map(|(_, f)| f.clone()).collect();
    let inst_d = DivisionInstance::new(agents, 2, 2, rint(0)).unwrap();
    let rep_d =
        verify_division(&inst_d, &DivisionSolution::new(cuts, vec![1, 2, 1]).unwrap()).unwrap();
    assert_eq!(rep_h.max_discrepancy, rep_d.max_pairwise_gap);
    assert_eq!(rep_h.valid, rep_d.valid);
}

#[test]
fn instance_formats_round_trip() {
    let inst = CHInstance::new(vec![uniform_agent("a"), front_loaded("b")], rat(1, 4)).unwrap();
    let text = render_ch_instance(&inst);
    assert_eq!(parse_ch_instance(&text).unwrap(), inst);

    let agents = vec![
        StepFunction::uniform(&unit(), rint(1)).unwrap(),
        StepFunction::from_pieces(&unit(), &[(rat(1, 2), rint(1), rint(2))]).unwrap(),
    ];
    let div = DivisionInstance::new(agents, 3, 2, rat(1, 8)).unwrap();
    let text = render_division_instance(&div);
    assert_eq!(parse_division_instance(&text).unwrap(), div);
}

#[test]
fn solution_formats_round_trip() {
    let sol = CutLabelling::new(vec![rat(1, 3), rat(2, 3)], Label::Minus);
    assert_eq!(parse_cut_labelling(&render_cut_labelling(&sol)).unwrap(), sol);

    let empty = CutLabelling::new(vec![], Label::Plus);
    assert_eq!(parse_cut_labelling(&render_cut_labelling(&empty)).unwrap(), empty);

    let div = DivisionSolution::new(vec![rat(1, 3), rat(2, 3)], vec![1, 2, 3]).unwrap();
    assert_eq!(
        parse_division_solution(&render_division_solution(&div)).unwrap(),
        div
    );
}

#[test]
fn parse_rejects_garbage() {
    assert!(parse_ch_instance("kind necklace\n").is_err());
    assert!(parse_ch_instance("kind consensus-halving\ndomain 1\n").is_err());
    assert!(parse_ch_instance(
        "kind consensus-halving\ndomain 1\nepsilon 0\npiece 0 1 1\n"
    )
    .is_err());
    assert!(parse_cut_labelling("kind halving-solution\nfirst-label up\n").is_err());
    assert!(parse_division_solution("kind division-solution\ncut 1/2\n").is_err());
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn arb_agent() -> impl Strategy<Value = StepFunction> {
        proptest::collection::vec((0i64..=15, 1i64..=4, 1i64..=5), 1..5).prop_map(|raw| {
            let mut bps: Vec<_> = raw.iter().map(|(b, _, _)| rat(*b, 16)).collect();
            bps.push(rint(0));
            bps.push(rint(1));
            bps.sort();
            bps.dedup();
            let heights: Vec<_> = raw
                .iter()
                .cycle()
                .take(bps.len() - 1)
                .map(|(_, n, d)| rat(*n, *d))
                .collect();
            let f = StepFunction::new(bps, heights).unwrap();
            renormalize(&f).unwrap()
        })
    }

    fn arb_cuts(max: usize) -> impl Strategy<Value = Vec<exact_arith::Rational>> {
        proptest::collection::vec(0i64..=32, 0..=max).prop_map(|raw| {
            let mut cuts: Vec<_> = raw.into_iter().map(|c| rat(c, 32)).collect();
            cuts.sort();
            cuts
        })
    }

    proptest! {
        #[test]
        fn sides_sum_to_one(f in arb_agent(), cuts in arb_cuts(3), flip in any::<bool>()) {
            let n = cuts.len().max(1);
            let agents: Vec<_> = (0..n).map(|i| (format!("a{i}"), f.clone())).collect();
            let inst = CHInstance::new(agents, rint(0)).unwrap();
            let first = if flip { Label::Minus } else { Label::Plus };
            let sol = CutLabelling::new(cuts, first);

            let mut plus = rint(0);
            let mut minus = rint(0);
            for (piece, label) in sol.pieces(&inst.domain()).unwrap() {
                let m = f.integrate(&piece).unwrap();
                match label {
                    Label::Plus => plus += m,
                    Label::Minus => minus += m,
                }
            }
            prop_assert_eq!(&plus + &minus, rint(1));

            let balances = signed_balances(&inst, &sol).unwrap();
            prop_assert_eq!(&plus - &minus, balances[0].clone());
            let rep = verify_halving(&inst, &sol).unwrap();
            for (b, d) in balances.iter().zip(&rep.per_agent_discrepancy) {
                prop_assert_eq!(exact_arith::abs(b), d.clone());
            }
        }

        #[test]
        fn flipping_first_label_preserves_discrepancy(f in arb_agent(), cuts in arb_cuts(3)) {
            let n = cuts.len().max(1);
            let agents: Vec<_> = (0..n).map(|i| (format!("a{i}"), f.clone())).collect();
            let inst = CHInstance::new(agents, rint(0)).unwrap();
            let a = verify_halving(&inst, &CutLabelling::new(cuts.clone(), Label::Plus)).unwrap();
            let b = verify_halving(&inst, &CutLabelling::new(cuts.clone(), Label::Minus)).unwrap();
            prop_assert_eq!(a.per_agent_discrepancy, b.per_agent_discrepancy);
            let p = signed_balances(&inst, &CutLabelling::new(cuts.clone(), Label::Plus)).unwrap();
            let m = signed_balances(&inst, &CutLabelling::new(cuts, Label::Minus)).unwrap();
            for (x, y) in p.iter().zip(&m) {
                prop_assert_eq!(x.clone(), -y.clone());
            }
        }

        #[test]
        fn normalization_preserves_verification(
            f in arb_agent(),
            cuts in arb_cuts(4),
            raw_labels in proptest::collection::vec(any::<bool>(), 5),
        ) {
            let labels: Vec<Label> = raw_labels[..cuts.len() + 1]
                .iter()
                .map(|b| if *b { Label::Plus } else { Label::Minus })
                .collect();
            let n = cuts.len().max(1);
            let agents: Vec<_> = (0..n).map(|i| (format!("a{i}"), f.clone())).collect();
            let inst = CHInstance::new(agents, rint(0)).unwrap();

            // raw discrepancy computed directly from the labelled pieces
            let mut edges = vec![rint(0)];
            edges.extend(cuts.iter().cloned());
            edges.push(rint(1));
            let mut balance = rint(0);
            for i in 0..edges.len() - 1 {
                let piece = Interval::make(edges[i].clone(), edges[i + 1].clone());
                let m = f.integrate(&piece).unwrap();
                match labels[i] {
                    Label::Plus => balance += m,
                    Label::Minus => balance -= m,
                }
            }

            let sol = normalize_labelling(&inst, &cuts, &labels).unwrap();
            prop_assert!(sol.cuts().len() <= cuts.len());
            let got = signed_balances(&inst, &sol).unwrap();
            prop_assert_eq!(got[0].clone(), balance);
        }
    }
}
