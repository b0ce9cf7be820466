//! Regular vines on variables `1..=n` in four equivalent forms: the tree
//! sequence itself, cherry-tree sequences, chordal graphs and the
//! lower-triangular vine matrix.
//!
//! ```
//! use vine_structure::{decode_matrix, encode_napoles, parse_matrix_csv};
//!
//! let m = parse_matrix_csv("4\n5,1\n1,5,2\n2,3,5,3\n3,2,3,5,5\n").unwrap();
//! let vine = decode_matrix(&m).unwrap();
//! let (again, comparisons) = encode_napoles(&vine).unwrap();
//! assert_eq!(again, m);
//! assert_eq!(comparisons.get(), 36);
//! ```

pub mod cherry;
pub mod chordal;
pub mod decode;
pub mod encode;
pub mod enumerate;
pub mod error;
pub mod io;
pub mod matrix;
pub mod model;
pub mod peo;
pub mod report;
mod util;

pub use cherry::{
    check_rip, cherry_to_vine, vine_to_cherry, CherryTree, CherryTreeSequence, JunctionTree, SeparatorEdge,
};
pub use chordal::{
    cherry_to_chordal, chordal_to_junction_tree, leaf_elimination_peo, maximal_cliques, maximum_cardinality_search,
    verify_peo, ChordalGraph,
};
pub use decode::{decode_matrix, matrix_equivalence_class, EquivalenceClass, DEFAULT_CLASS_BOUND};
pub use encode::{
    comparison_count_formula_cherry, comparison_count_formula_napoles, encode_cherry, encode_napoles, ComparisonCounter,
};
pub use enumerate::{
    enumerate_vine_peos, enumerate_vines, for_each_vine, random_vine, spanning_trees, MAX_ENUMERATION_N,
    MAX_PEO_ENUMERATION_N, RNG_NAME,
};
pub use error::{Result, VineError};
pub use io::{
    parse_matrix_csv, parse_vine_json, serialize_matrix_csv, serialize_vine_json, serialize_vine_json_compact,
    ParseError,
};
pub use matrix::{validate_matrix, ShapeError, VineMatrix};
pub use model::{
    validate_vine, vines_equal, ClusterTree, EdgeLabel, LabelError, TreeEdge, VarId, VarSet, VineStructure,
};
pub use peo::{verify_vine_peo, vine_peo, Peo, PeoError, VineChordalGraphs};
pub use report::{ValidationReport, Violation};
