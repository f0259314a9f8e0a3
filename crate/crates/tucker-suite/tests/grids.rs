use proptest::prelude::*;
use tucker_suite::*;

fn l(v: i8) -> TuckerLabel {
    TuckerLabel::from_value(v).unwrap()
}

/// Rows are given bottom to top: `rows[j-1][i-1]` is the label of (i, j).
fn table(side: u64, rows: &[&[i8]]) -> Vec<TuckerLabel> {
    assert_eq!(rows.len() as u64, side);
    let mut labels = Vec::new();
    for row in rows {
        assert_eq!(row.len() as u64, side);
        labels.extend(row.iter().map(|&v| l(v)));
    }
    labels
}

fn grid(n: u32, rows: &[&[i8]]) -> TuckerInstance {
    let side = 1u64 << n;
    TuckerInstance::new(n, labeller_from_table(side, &table(side, rows)).unwrap()).unwrap()
}

fn ms_grid(side: u64, rows: &[&[i8]]) -> MSTuckerInstance {
    MSTuckerInstance::new(side, labeller_from_table(side, &table(side, rows)).unwrap()).unwrap()
}

fn valid_four_by_four() -> TuckerInstance {
    grid(
        2,
        &[
            &[1, 2, 2, 1],
            &[2, 2, -1, 2],
            &[-2, 1, -2, -2],
            &[-1, -2, -2, -1],
        ],
    )
}

#[test]
fn labels_round_the_two_by_two_grid() {
    let g = grid(1, &[&[1, 2], &[-2, -1]]);
    assert_eq!(g.label_at(1, 1).unwrap(), l(1));
    assert_eq!(g.label_at(2, 1).unwrap(), l(2));
    assert_eq!(g.label_at(1, 2).unwrap(), l(-2));
    assert_eq!(g.label_at(2, 2).unwrap(), l(-1));
    assert!(matches!(g.label_at(0, 1), Err(TuckerError::Domain(_))));
    assert!(matches!(g.label_at(1, 3), Err(TuckerError::Domain(_))));
}

#[test]
fn antipodal_boundary_accepts_valid_grids() {
    assert!(check_tucker_constraints(&grid(1, &[&[1, 2], &[-2, -1]]))
        .unwrap()
        .is_empty());
    assert!(check_tucker_constraints(&valid_four_by_four())
        .unwrap()
        .is_empty());
}

#[test]
fn first_solution_on_the_two_by_two_grid() {
    let report = find_tucker_solution(&grid(1, &[&[1, 2], &[-2, -1]])).unwrap();
    let sol = report.solution.unwrap();
    assert_eq!(sol.first, (1, 1));
    assert_eq!(sol.second, (2, 2));
    assert_eq!(sol.first_label, l(1));
    assert_eq!(sol.second_label, l(-1));
    assert!(report.violations.is_empty());
}

#[test]
fn monochromatic_rows_give_a_vertical_pair() {
    let report = find_tucker_solution(&grid(1, &[&[1, 1], &[-1, -1]])).unwrap();
    let sol = report.solution.unwrap();
    assert_eq!((sol.first, sol.second), ((1, 1), (1, 2)));
}

#[test]
fn four_by_four_first_solution() {
    let sol = find_tucker_solution(&valid_four_by_four())
        .unwrap()
        .solution
        .unwrap();
    assert_eq!(sol.first, (1, 2));
    assert_eq!(sol.second, (1, 3));
    assert_eq!(sol.first_label, l(2));
    assert_eq!(sol.second_label, l(-2));
}

#[test]
fn uniform_labels_break_antipodality() {
    let report = find_tucker_solution(&grid(1, &[&[1, 1], &[1, 1]])).unwrap();
    assert!(report.solution.is_none());
    assert_eq!(report.violations.len(), 2);
}

#[test]
fn single_flip_is_reported_exactly_once() {
    let g = grid(
        2,
        &[
            &[1, -2, 2, 1],
            &[2, 2, -1, 2],
            &[-2, 1, -2, -2],
            &[-1, -2, -2, -1],
        ],
    );
    let violations = check_tucker_constraints(&g).unwrap();
    assert_eq!(violations.len(), 1);
    assert!(violations[0].contains("(2, 1)"));
    assert!(violations[0].contains("(3, 4)"));
}

#[test]
fn reduction_triples_the_side_and_stays_valid() {
    let g = grid(1, &[&[1, 2], &[-2, -1]]);
    let (ms, _) = reduce_tucker_to_ms(&g).unwrap();
    assert_eq!(ms.side(), 6);
    assert!(check_ms_constraints(&ms).unwrap().is_empty());
    for i in 1..=6 {
        assert_eq!(ms.label_at(i, 1).unwrap(), l(1));
        assert_eq!(ms.label_at(i, 6).unwrap(), l(-1));
    }
}

#[test]
fn reduction_relabels_a_negative_corner() {
    let g = grid(1, &[&[-2, -1], &[1, 2]]);
    assert!(check_tucker_constraints(&g).unwrap().is_empty());
    let (ms, reduction) = reduce_tucker_to_ms(&g).unwrap();
    assert!(check_ms_constraints(&ms).unwrap().is_empty());
    let found = find_ms_solution(&ms).unwrap().solution.unwrap();
    let back = reduction.map_back(&found).unwrap();
    assert!(back.touching() && back.complementary());
}

#[test]
fn ms_solution_maps_back_to_the_original() {
    let g = valid_four_by_four();
    let (ms, reduction) = reduce_tucker_to_ms(&g).unwrap();
    assert_eq!(ms.side(), 12);
    assert!(check_ms_constraints(&ms).unwrap().is_empty());
    let found = find_ms_solution(&ms).unwrap().solution.unwrap();
    let back = reduction.map_back(&found).unwrap();
    assert!(back.touching() && back.complementary());
    assert_eq!(g.label_at(back.first.0, back.first.1).unwrap(), back.first_label);
    assert_eq!(
        g.label_at(back.second.0, back.second.1).unwrap(),
        back.second_label
    );
}

#[test]
fn every_reduced_solution_maps_back() {
    for g in [grid(1, &[&[1, 2], &[-2, -1]]), grid(1, &[&[-2, -1], &[1, 2]])] {
        let (ms, reduction) = reduce_tucker_to_ms(&g).unwrap();
        let all = all_ms_solutions(&ms).unwrap();
        assert!(!all.is_empty());
        for sol in all {
            let back = reduction.map_back(&sol).unwrap();
            assert!(back.touching() && back.complementary());
        }
    }
}

#[test]
fn monochromatic_checker_flags_coloured_side_rows() {
    // Valid as a plain grid, but the side rows are not monochromatic.
    let m = ms_grid(
        4,
        &[
            &[1, 2, 2, 1],
            &[2, 2, -1, 2],
            &[-2, 1, -2, -2],
            &[-1, -2, -2, -1],
        ],
    );
    let violations = check_ms_constraints(&m).unwrap();
    assert_eq!(violations.len(), 4);
    assert!(violations.iter().all(|v| v.contains("row must be")));
}

#[test]
fn ms_search_finds_the_hand_solution() {
    let m = ms_grid(
        4,
        &[
            &[1, 1, 1, 1],
            &[1, 2, -2, -1],
            &[1, 2, -2, -1],
            &[-1, -1, -1, -1],
        ],
    );
    assert!(check_ms_constraints(&m).unwrap().is_empty());
    let sol = find_ms_solution(&m).unwrap().solution.unwrap();
    assert_eq!((sol.first, sol.second), ((1, 3), (1, 4)));
    assert_eq!(sol.first_label, l(1));
    assert_eq!(sol.second_label, l(-1));
}

#[test]
fn instance_formats_round_trip() {
    let g = valid_four_by_four();
    let text = render_tucker_instance(&g);
    let parsed = parse_tucker_instance(&text).unwrap();
    assert_eq!(render_tucker_instance(&parsed), text);
    for i in 1..=4 {
        for j in 1..=4 {
            assert_eq!(parsed.label_at(i, j).unwrap(), g.label_at(i, j).unwrap());
        }
    }

    let (ms, _) = reduce_tucker_to_ms(&g).unwrap();
    let text = render_ms_instance(&ms);
    let parsed = parse_ms_instance(&text).unwrap();
    assert_eq!(render_ms_instance(&parsed), text);
    for i in 1..=12 {
        for j in 1..=12 {
            assert_eq!(parsed.label_at(i, j).unwrap(), ms.label_at(i, j).unwrap());
        }
    }
}

#[test]
fn solution_formats_round_trip() {
    let sol = find_tucker_solution(&valid_four_by_four())
        .unwrap()
        .solution
        .unwrap();
    let text = render_grid_solution(&sol);
    let parsed = parse_grid_solution(&text).unwrap();
    assert_eq!(parsed, sol);
    assert_eq!(render_grid_solution(&parsed), text);
}

#[test]
fn parse_rejects_malformed_inputs() {
    assert!(matches!(
        parse_tucker_instance("kind necklace\nn 1\ncircuit\ninputs 2\noutputs 0 0\n"),
        Err(TuckerError::Parse(_))
    ));
    assert!(matches!(
        parse_tucker_instance("kind tucker\nm 1\ncircuit\n"),
        Err(TuckerError::Parse(_))
    ));
    assert!(matches!(
        parse_grid_solution("kind grid-solution\nfirst 1 1 +3\nsecond 1 2 -1\n"),
        Err(TuckerError::Parse(_))
    ));
    assert!(matches!(
        parse_grid_solution("kind grid-solution\nfirst 1 1 +1\nsecond 1 2 -1\nthird 2 2 +2\n"),
        Err(TuckerError::Parse(_))
    ));
    // Errors inside the circuit section name it.
    let err = parse_tucker_instance("kind tucker\nn 1\ncircuit\ninputs x\n").unwrap_err();
    assert!(err.to_string().contains("circuit section"));
}

#[test]
fn search_is_deterministic() {
    let g = valid_four_by_four();
    let a = find_tucker_solution(&g).unwrap().solution;
    let b = find_tucker_solution(&g).unwrap().solution;
    assert_eq!(a, b);
}

fn arb_label() -> impl Strategy<Value = TuckerLabel> {
    prop::sample::select(TuckerLabel::ALL.to_vec())
}

fn arb_valid_grid(n: u32) -> impl Strategy<Value = Vec<TuckerLabel>> {
    let m = 1u64 << n;
    prop::collection::vec(arb_label(), (m * m) as usize).prop_map(move |mut labels| {
        let m = m as usize;
        // Overwrite the far boundary with the antipodal images of the near
        // one, which makes any label table valid.
        for i in 0..m {
            labels[(m - 1) * m + (m - 1 - i)] = labels[i].negate();
        }
        for j in 1..m - 1 {
            labels[(m - 1 - j) * m + (m - 1)] = labels[j * m].negate();
        }
        labels
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn reduction_soundness_on_random_grids(labels in arb_valid_grid(2)) {
        let g = TuckerInstance::new(2, labeller_from_table(4, &labels).unwrap()).unwrap();
        prop_assert!(check_tucker_constraints(&g).unwrap().is_empty());
        let (ms, reduction) = reduce_tucker_to_ms(&g).unwrap();
        prop_assert!(check_ms_constraints(&ms).unwrap().is_empty());
        let report = find_ms_solution(&ms).unwrap();
        let sol = report.solution.expect("a valid grid always has a solution");
        let back = reduction.map_back(&sol).unwrap();
        prop_assert!(back.touching() && back.complementary());
    }
}
