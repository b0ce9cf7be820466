//! Checks over every vine on up to five variables.

mod common;

use std::collections::HashSet;

use common::*;
use vine_structure::{
    cherry_to_chordal, cherry_to_vine, chordal_to_junction_tree, decode_matrix, encode_cherry, encode_napoles,
    enumerate_vines, for_each_vine, matrix_equivalence_class, parse_matrix_csv, parse_vine_json, serialize_matrix_csv,
    serialize_vine_json, validate_matrix, validate_vine, vine_to_cherry, vines_equal, ClusterTree, VineError,
    VineMatrix, VineStructure, Violation, DEFAULT_CLASS_BOUND,
};

fn vines_up_to(max_n: usize) -> Vec<VineStructure> {
    (2..=max_n).flat_map(|n| enumerate_vines(n).unwrap()).collect()
}

#[test]
fn tree_shapes_for_every_vine_up_to_six() {
    for n in 2..=6 {
        for_each_vine(n, |v| {
            assert!(validate_vine(&v).is_ok());
            for (idx, t) in v.trees().iter().enumerate() {
                let k = idx + 1;
                assert_eq!(t.level(), k);
                assert_eq!(t.clusters().len(), n - k + 1);
                assert_eq!(t.edges().len(), n - k);
                assert!(t.clusters().iter().all(|c| c.len() == k));
                for e in t.edges() {
                    let (a, b) = (&t.clusters()[e.a], &t.clusters()[e.b]);
                    assert_eq!(e.label.conditioning().len(), k - 1);
                    assert_eq!(e.label.variables(), a.union(b));
                }
            }
        })
        .unwrap();
    }
}

/// Re-pointing any edge at level two or higher to a pair of clusters that
/// differ in more than one element each way.
#[test]
fn every_proximity_mutant_is_rejected() {
    let mut mutants = 0;
    for v in vines_up_to(5) {
        for level in 2..v.n() {
            let t = v.tree(level);
            let c = t.clusters();
            for e in 0..t.edges().len() {
                for a in 0..c.len() {
                    for b in a + 1..c.len() {
                        if c[a].symmetric_difference(&c[b]).len() == 2 {
                            continue;
                        }
                        let mut edges = t.edges().to_vec();
                        edges[e].a = a;
                        edges[e].b = b;
                        let mut trees = v.trees().to_vec();
                        trees[level - 1] = ClusterTree::new(level, c.to_vec(), edges);
                        let report = validate_vine(&VineStructure::from_trees(v.n(), trees));
                        assert!(report
                            .violations()
                            .iter()
                            .any(|x| matches!(x, Violation::Proximity { .. })));
                        mutants += 1;
                    }
                }
            }
        }
    }
    assert!(mutants > 1000, "{mutants}");
}

#[test]
fn formats_round_trip_for_every_vine() {
    for v in vines_up_to(5) {
        let back = parse_vine_json(&serialize_vine_json(&v)).unwrap();
        assert!(back.same_structure(&v));
        let (m, _) = encode_napoles(&v).unwrap();
        assert_eq!(parse_matrix_csv(&serialize_matrix_csv(&m)).unwrap(), m);
    }
}

#[test]
fn representations_round_trip_for_every_vine() {
    for v in vines_up_to(5) {
        let cherry = vine_to_cherry(&v);
        assert!(cherry_to_vine(&cherry).unwrap().same_structure(&v));
        for t in cherry.trees() {
            let jt = chordal_to_junction_tree(&cherry_to_chordal(t)).unwrap();
            let mut want = t.clusters().to_vec();
            want.sort();
            assert_eq!(jt.clusters(), &want[..]);
            assert!(jt.validate().is_ok());
        }
    }
}

#[test]
fn equivalence_classes_partition_the_matrices() {
    let mut all = HashSet::new();
    let mut total = 0;
    for v in vines_up_to(5) {
        let class = matrix_equivalence_class(&v, DEFAULT_CLASS_BOUND).unwrap();
        assert_eq!(class.matrices.len(), class.peo_count);
        assert!(class.peo_count >= 1 << (v.n() - 1));
        for m in &class.matrices {
            assert!(validate_matrix(m).is_ok());
            let w = decode_matrix(m).unwrap();
            assert!(vines_equal(&w, &v));
            let (again, _) = encode_cherry(&w, &m.diagonal().unwrap()).unwrap();
            assert_eq!(&again, m);
            all.insert(m.clone());
        }
        total += class.matrices.len();
    }
    // no matrix encodes two different vines
    assert_eq!(all.len(), total);
}

#[test]
fn example_class_contains_both_worked_diagonals() {
    let class = matrix_equivalence_class(&v5(), DEFAULT_CLASS_BOUND).unwrap();
    let diagonals: Vec<Vec<u32>> = class.matrices.iter().map(VineMatrix::diagonal_values).collect();
    assert!(diagonals.contains(&vec![4, 1, 2, 3, 5]));
    assert!(diagonals.contains(&vec![4, 5, 1, 2, 3]));
    assert!(diagonals.windows(2).all(|w| w[0] < w[1]));
}

/// Below the diagonal each column must hold exactly the later diagonal values,
/// so any single-entry change is rejected outright.
#[test]
fn single_entry_changes_are_rejected() {
    for v in enumerate_vines(4).unwrap() {
        let (m, _) = encode_napoles(&v).unwrap();
        for i in 2..=4 {
            for j in 1..i {
                for value in (1..=4u32).filter(|&x| x != m.get(i, j)) {
                    let mut rows = m.rows();
                    rows[i - 1][j - 1] = value;
                    let mutated = VineMatrix::from_rows(&rows).unwrap();
                    assert!(!mutated.validate().is_ok());
                    assert!(matches!(decode_matrix(&mutated), Err(VineError::InvalidMatrix(_))));
                }
            }
        }
    }
}

/// Swapping two entries of a column keeps the matrix well-formed; the result
/// is either not a vine, or a different vine that re-encodes to it exactly.
#[test]
fn in_column_swaps() {
    let (mut rejected, mut accepted) = (0, 0);
    for v in vines_up_to(5) {
        let n = v.n();
        let (m, _) = encode_napoles(&v).unwrap();
        for j in 1..n {
            for a in j + 1..=n {
                for b in a + 1..=n {
                    let mut rows = m.rows();
                    let (x, y) = (rows[a - 1][j - 1], rows[b - 1][j - 1]);
                    rows[a - 1][j - 1] = y;
                    rows[b - 1][j - 1] = x;
                    let mutated = VineMatrix::from_rows(&rows).unwrap();
                    assert!(mutated.validate().is_ok());
                    match decode_matrix(&mutated) {
                        Ok(w) => {
                            assert!(!w.same_structure(&v));
                            let (again, _) = encode_cherry(&w, &mutated.diagonal().unwrap()).unwrap();
                            assert_eq!(again, mutated);
                            accepted += 1;
                        }
                        Err(VineError::NotAVineMatrix(_)) => rejected += 1,
                        Err(e) => panic!("unexpected error {e}"),
                    }
                }
            }
        }
    }
    assert!(rejected > 0 && accepted > 0, "rejected={rejected} accepted={accepted}");
}
