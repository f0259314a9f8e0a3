use ch_solver::{
    solve_division_exact, solve_division_exact_with_budget, solve_halving_approx,
    solve_halving_exact, solve_halving_exact_with_budget, SolveOutcome,
};
use exact_arith::{rat, rint, Interval, StepFunction};
use measures::{
    renormalize, verify_division, verify_halving, CHInstance, DivisionInstance, Label,
};

fn unit() -> Interval {
    Interval::make(rint(0), rint(1))
}

fn uniform() -> StepFunction {
    StepFunction::uniform(&unit(), rint(1)).unwrap()
}

fn block(from: (i64, i64), to: (i64, i64), h: (i64, i64)) -> StepFunction {
    StepFunction::from_pieces(&unit(), &[(rat(from.0, from.1), rat(to.0, to.1), rat(h.0, h.1))])
        .unwrap()
}

#[test]
fn uniform_agent_gets_the_median_cut() {
    let inst = CHInstance::new(vec![("a".into(), uniform())], rint(0)).unwrap();
    let sol = solve_halving_exact(&inst, 1).found().unwrap();
    assert_eq!(sol.cuts(), &[rat(1, 2)]);
    assert_eq!(sol.first_label(), Label::Plus);
}

#[test]
fn concentrated_agent_gets_the_block_median() {
    let inst = CHInstance::new(vec![("a".into(), block((0, 1), (1, 4), (4, 1)))], rint(0)).unwrap();
    let sol = solve_halving_exact(&inst, 1).found().unwrap();
    assert_eq!(sol.cuts(), &[rat(1, 8)]);
}

#[test]
fn two_agents_solved_and_verified() {
    let skew = block((0, 1), (1, 2), (2, 1));
    let inst = CHInstance::new(vec![("a".into(), uniform()), ("b".into(), skew)], rint(0)).unwrap();
    let sol = solve_halving_exact(&inst, 2).found().unwrap();
    assert!(sol.cuts().len() <= 2);
    let rep = verify_halving(&inst, &sol).unwrap();
    assert_eq!(rep.max_discrepancy, rint(0));
}

#[test]
fn vacuous_tolerance_needs_no_cuts() {
    let inst = CHInstance::new(vec![("a".into(), uniform())], rint(1)).unwrap();
    let sol = solve_halving_approx(&inst, 1).found().unwrap();
    assert!(sol.cuts().is_empty());
    assert_eq!(sol.first_label(), Label::Plus);
}

#[test]
fn approx_at_zero_matches_exact() {
    let corpus = vec![
        vec![("a".to_string(), uniform())],
        vec![("a".to_string(), block((0, 1), (1, 2), (2, 1)))],
        vec![
            ("a".to_string(), uniform()),
            ("b".to_string(), block((1, 4), (3, 4), (2, 1))),
        ],
    ];
    for agents in corpus {
        let n = agents.len();
        let inst = CHInstance::new(agents, rint(0)).unwrap();
        let exact = solve_halving_exact(&inst, n).found().unwrap();
        let approx = solve_halving_approx(&inst, n).found().unwrap();
        assert_eq!(exact, approx);
    }
}

#[test]
fn disjoint_blocks_with_no_cut_budget() {
    let a = block((0, 1), (1, 2), (2, 1));
    let b = block((1, 2), (1, 1), (2, 1));
    let inst = CHInstance::new(vec![("a".into(), a), ("b".into(), b)], rat(1, 2)).unwrap();
    assert_eq!(solve_halving_approx(&inst, 0), SolveOutcome::NoSolution);
}

#[test]
fn budget_exhaustion_is_reported_distinctly() {
    let inst = CHInstance::new(vec![("a".into(), uniform())], rint(0)).unwrap();
    assert_eq!(
        solve_halving_exact_with_budget(&inst, 1, 1),
        SolveOutcome::BudgetExhausted
    );
    let div = DivisionInstance::new(vec![uniform()], 2, 1, rint(0)).unwrap();
    assert_eq!(
        solve_division_exact_with_budget(&div, 1),
        SolveOutcome::BudgetExhausted
    );
}

#[test]
fn division_halves_and_thirds() {
    let inst2 = DivisionInstance::new(vec![uniform()], 2, 1, rint(0)).unwrap();
    let sol2 = solve_division_exact(&inst2).found().unwrap();
    assert_eq!(sol2.cuts(), &[rat(1, 2)]);
    assert_eq!(sol2.part_of_piece(), &[1, 2]);

    let inst3 = DivisionInstance::new(vec![uniform()], 3, 1, rint(0)).unwrap();
    let sol3 = solve_division_exact(&inst3).found().unwrap();
    assert_eq!(sol3.cuts(), &[rat(1, 3), rat(2, 3)]);
    assert_eq!(sol3.part_of_piece(), &[1, 2, 3]);
    assert!(verify_division(&inst3, &sol3).unwrap().valid);
}

#[test]
fn division_with_two_agents() {
    let inst = DivisionInstance::new(
        vec![uniform(), block((0, 1), (1, 2), (2, 1))],
        2,
        2,
        rint(0),
    )
    .unwrap();
    let sol = solve_division_exact(&inst).found().unwrap();
    let rep = verify_division(&inst, &sol).unwrap();
    assert_eq!(rep.max_pairwise_gap, rint(0));
}

#[test]
fn deterministic_across_runs() {
    let skew = block((1, 8), (7, 8), (4, 3));
    let inst = CHInstance::new(vec![("a".into(), uniform()), ("b".into(), skew)], rint(0)).unwrap();
    let first = solve_halving_exact(&inst, 2);
    let second = solve_halving_exact(&inst, 2);
    assert_eq!(first, second);
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn arb_agent() -> impl Strategy<Value = StepFunction> {
        proptest::collection::vec((0i64..=7, 1i64..=3, 1i64..=4), 1..4).prop_map(|raw| {
            let mut bps: Vec<_> = raw.iter().map(|(b, _, _)| rat(*b, 8)).collect();
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

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn one_agent_always_splits_with_one_cut(f in arb_agent()) {
            let inst = CHInstance::new(vec![("a".into(), f)], rint(0)).unwrap();
            let sol = solve_halving_exact(&inst, 1).found();
            prop_assert!(sol.is_some());
        }

        #[test]
        fn two_agents_always_split_with_two_cuts(f in arb_agent(), g in arb_agent()) {
            let inst = CHInstance::new(vec![("a".into(), f), ("b".into(), g)], rint(0)).unwrap();
            let sol = solve_halving_exact(&inst, 2).found();
            prop_assert!(sol.is_some());
        }

        #[test]
        fn found_solutions_verify_at_instance_epsilon(f in arb_agent(), g in arb_agent()) {
            let inst = CHInstance::new(
                vec![("a".into(), f), ("b".into(), g)],
                rat(1, 16),
            )
            .unwrap();
            if let Some(sol) = solve_halving_approx(&inst, 2).found() {
                let rep = verify_halving(&inst, &sol).unwrap();
                prop_assert!(rep.valid);
            }
        }
    }
}
