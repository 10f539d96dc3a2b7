//! The bundled reference ANF table is checked against itself: its entry
//! (2, 0) repeats entry (1, 3), which breaks complementarity of row 2 and
//! column 0. Every other entry agrees with the construction.

use golayset::analysis::{golay_check, AnalysisError, GeneralizedBooleanFunction, QarySequence};
use golayset::fixtures::example7_reference_anf;
use golayset::reproduce::example7;

fn table() -> Vec<Vec<GeneralizedBooleanFunction>> {
    let mut grid = vec![vec![None; 4]; 4];
    for (r, s, f) in example7_reference_anf() {
        grid[r][s] = Some(f);
    }
    grid.into_iter().map(|row| row.into_iter().map(Option::unwrap).collect()).collect()
}

fn row_set(t: &[Vec<GeneralizedBooleanFunction>], r: usize) -> Vec<QarySequence> {
    t[r].iter().map(|f| f.truth_table()).collect()
}

fn col_set(t: &[Vec<GeneralizedBooleanFunction>], s: usize) -> Vec<QarySequence> {
    t.iter().map(|row| row[s].truth_table()).collect()
}

#[test]
fn reference_entry_repeats_another() {
    let t = table();
    assert_eq!(t[2][0], t[1][3]);
}

#[test]
fn reference_row_and_column_through_the_repeat_are_not_complementary() {
    let t = table();
    for set in [row_set(&t, 2), col_set(&t, 0)] {
        assert!(matches!(golay_check(&set), Err(AnalysisError::NotComplementary { shift: 1, .. })));
    }
    for k in 0..4 {
        if k != 2 {
            assert!(golay_check(&row_set(&t, k)).is_ok(), "row {}", k);
        }
        if k != 0 {
            assert!(golay_check(&col_set(&t, k)).is_ok(), "column {}", k);
        }
    }
}

#[test]
fn construction_agrees_everywhere_else_and_repairs_the_table() {
    let outcome = example7().unwrap();
    let mismatched: Vec<(usize, usize)> = outcome.mismatches().map(|c| (c.row, c.col)).collect();
    assert_eq!(mismatched, vec![(2, 0)]);

    let mut t = table();
    t[2][0] = outcome.mismatches().next().unwrap().computed.clone();
    for k in 0..4 {
        assert!(golay_check(&row_set(&t, k)).is_ok());
        assert!(golay_check(&col_set(&t, k)).is_ok());
    }
    assert_eq!(
        t[2][0].to_string(),
        "x_0 + 2*x_1 + 2*x_2 + x_3 + 2*x_0*x_1 + 2*x_0*x_2 + 3*x_0*x_3 + 2*x_1*x_2 + x_1*x_3 + 2*x_0*x_1*x_3 + 2"
    );
}
