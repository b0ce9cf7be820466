use std::fmt;

use crate::model::{EdgeLabel, VarId, VarSet};

/// A single broken rule, with enough context to locate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    TooFewVariables {
        n: usize,
    },
    TreeCount {
        expected: usize,
        found: usize,
    },
    LevelMismatch {
        position: usize,
        level: usize,
    },
    ClusterCount {
        level: usize,
        expected: usize,
        found: usize,
    },
    ClusterSize {
        level: usize,
        cluster: VarSet,
        expected: usize,
    },
    VariableOutOfRange {
        level: usize,
        var: u32,
        n: usize,
    },
    DuplicateCluster {
        level: usize,
        cluster: VarSet,
    },
    EdgeCount {
        level: usize,
        expected: usize,
        found: usize,
    },
    BadEndpoint {
        level: usize,
        edge: usize,
    },
    Proximity {
        level: usize,
        a: VarSet,
        b: VarSet,
        size: usize,
    },
    LabelMismatch {
        level: usize,
        label: EdgeLabel,
        a: VarSet,
        b: VarSet,
    },
    NotATree {
        level: usize,
    },
    MissingCluster {
        level: usize,
        cluster: VarSet,
    },
    UnexpectedCluster {
        level: usize,
        cluster: VarSet,
    },
    LabelLevel {
        level: usize,
        label: EdgeLabel,
    },
    DanglingLabel {
        level: usize,
        label: EdgeLabel,
    },
    SeparatorMismatch {
        level: usize,
        edge: usize,
        separator: VarSet,
        expected: VarSet,
    },
    RunningIntersection {
        level: usize,
        var: VarId,
        a: VarSet,
        b: VarSet,
    },

    MatrixTooSmall {
        n: usize,
    },
    NonzeroAboveDiagonal {
        row: usize,
        col: usize,
    },
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: u32,
    },
    DiagonalNotPermutation,
    DuplicateInColumn {
        col: usize,
        value: u32,
    },
    EntryNotFromLaterDiagonal {
        row: usize,
        col: usize,
        value: u32,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            TooFewVariables { n } => write!(f, "a vine needs at least 2 variables, got {n}"),
            TreeCount { expected, found } => write!(f, "expected {expected} trees, found {found}"),
            LevelMismatch { position, level } => {
                write!(f, "tree at position {} declares level {level}", position + 1)
            }
            ClusterCount { level, expected, found } => {
                write!(f, "level {level}: expected {expected} clusters, found {found}")
            }
            ClusterSize { level, cluster, expected } => {
                write!(f, "level {level}: cluster {cluster} must have {expected} elements")
            }
            VariableOutOfRange { level, var, n } => {
                write!(f, "level {level}: variable {var} outside 1..{n}")
            }
            DuplicateCluster { level, cluster } => write!(f, "level {level}: duplicate cluster {cluster}"),
            EdgeCount { level, expected, found } => {
                write!(f, "level {level}: expected {expected} edges, found {found}")
            }
            BadEndpoint { level, edge } => write!(f, "level {level}: edge {edge} has invalid endpoints"),
            Proximity { level, a, b, size } => write!(
                f,
                "proximity: symmetric difference size {size} between clusters {a} and {b} at level {level}"
            ),
            LabelMismatch { level, label, a, b } => {
                write!(f, "level {level}: label {label} does not match clusters {a} and {b}")
            }
            NotATree { level } => write!(f, "level {level}: edges do not form a spanning tree"),
            MissingCluster { level, cluster } => write!(
                f,
                "level {level}: cluster {cluster} from an edge label of level {} is missing",
                level - 1
            ),
            UnexpectedCluster { level, cluster } => write!(
                f,
                "level {level}: cluster {cluster} is not an edge label of level {}",
                level - 1
            ),
            LabelLevel { level, label } => {
                write!(f, "level {level}: label {label} has the wrong conditioning size")
            }
            DanglingLabel { level, label } => {
                write!(f, "level {level}: label {label} does not join two clusters of that level")
            }
            SeparatorMismatch { level, edge, separator, expected } => write!(
                f,
                "level {level}: edge {edge} separator {separator} is not the endpoint intersection {expected}"
            ),
            RunningIntersection { level, var, a, b } => write!(
                f,
                "running intersection property violated at level {level}: variable {var} is in {a} and {b} but not on the path between them"
            ),
            MatrixTooSmall { n } => write!(f, "matrix dimension must be at least 2, got {n}"),
            NonzeroAboveDiagonal { row, col } => write!(f, "entry ({row},{col}) above the diagonal must be 0"),
            EntryOutOfRange { row, col, value } => write!(f, "entry ({row},{col}) = {value} is out of range"),
            DiagonalNotPermutation => f.write_str("diagonal not a permutation"),
            DuplicateInColumn { col, value } => write!(f, "column {col} repeats value {value}"),
            EntryNotFromLaterDiagonal { row, col, value } => write!(
                f,
                "entry ({row},{col}) = {value} is not a later diagonal value"
            ),
        }
    }
}

/// Outcome of a structural check: empty means ok.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    pub(crate) fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    pub(crate) fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
