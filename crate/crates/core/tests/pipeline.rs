//! Build, store, reload and verify.

use hamcol_core::analysis::{extract_quotient, verify_full, verify_sampled};
use hamcol_core::catalog::plan;
use hamcol_core::coloring::DEFAULT_BUDGET;
use hamcol_core::constructions::build;
use hamcol_core::io::{load_coloring, parse_matrix, save_coloring, FileMode};
use hamcol_core::Recipe;

const RECIPES: &[&str] = &[
    "(flaass-std :t1 1 :t2 1 (perfect :r 1 :q 3 :t 1))",
    "(mult-alphabet :p 2 (split2 :q 2 :p 2 :t 1))",
    "(invasion :t1 1 :t2 0 (split1-base :seed 7 (perfect :r 1 :q 2 :t 1)))",
    "(complement (mult-length :t 3 (perfect :r 2 :q 2 :t 1)))",
];

#[test]
fn files_round_trip_in_every_mode() {
    let dir = std::env::temp_dir().join(format!("hamcol-pipeline-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for text in RECIPES {
        let r: Recipe = text.parse().unwrap();
        let c = build(&r).unwrap();
        let m = extract_quotient(&c, DEFAULT_BUDGET).unwrap();
        assert_eq!(m, r.predict().unwrap().matrix, "{text}");
        let dense = c.materialize(DEFAULT_BUDGET).unwrap();
        for mode in [FileMode::Dense, FileMode::DenseRle, FileMode::Recipe] {
            let path = dir.join("c.hpc");
            save_coloring(&path, &c, mode, DEFAULT_BUDGET).unwrap();
            let back = load_coloring(&path, DEFAULT_BUDGET).unwrap();
            let back = back.materialize(DEFAULT_BUDGET).unwrap();
            assert_eq!(back.dense_table(), dense.dense_table(), "{text} {mode:?}");
            assert!(verify_full(&back, &m, DEFAULT_BUDGET).unwrap().passed());
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn planned_witnesses_build_and_verify() {
    for (q, b, c) in [(3, 8, 1), (3, 16, 11), (4, 10, 6), (4, 12, 4), (6, 9, 3)] {
        let w = plan(q, b, c, 4).unwrap_or_else(|| panic!("no witness for q={q} ({b},{c})"));
        let pred = w.recipe.predict().unwrap();
        let bc = pred.bc().unwrap();
        assert_eq!((bc.0.max(bc.1), bc.0.min(bc.1)), (b, c));
        let col = build(&w.recipe).unwrap();
        let report = if col.shape().vertex_count_within(DEFAULT_BUDGET).is_some() {
            verify_full(&col, &pred.matrix, DEFAULT_BUDGET).unwrap()
        } else {
            verify_sampled(&col, &pred.matrix, 20_000, 1).unwrap()
        };
        assert!(report.passed(), "{}", w.recipe);
    }
}

#[test]
fn wrong_matrices_are_caught() {
    let r: Recipe = "(perfect :r 2 :q 3 :t 1)".parse().unwrap();
    let c = build(&r).unwrap();
    let wrong = parse_matrix("0 8\n2 6\n").unwrap();
    let full = verify_full(&c, &wrong, DEFAULT_BUDGET).unwrap();
    assert!(!full.passed());
    assert!(full.violations.iter().all(|v| v.color == 2));
    assert!(!verify_sampled(&c, &wrong, 1000, 3).unwrap().passed());
}
