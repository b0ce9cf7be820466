use crate::encode::encode_cherry;
use crate::enumerate::enumerate_vine_peos;
use crate::error::{Result, VineError};
use crate::matrix::VineMatrix;
use crate::model::{EdgeLabel, VarId, VarSet, VineStructure};
use crate::report::{ValidationReport, Violation};

/// Default cap on `n` for equivalence-class enumeration.
pub const DEFAULT_CLASS_BOUND: usize = 8;

/// Reads the vine back out of a matrix. Entry `(i, j)` below the diagonal is
/// the level-`n−i+1` edge `m_{j,j}, m_{i,j} | m_{i+1,j}, ..., m_{n,j}`.
pub fn decode_matrix(m: &VineMatrix) -> Result<VineStructure> {
    let report = m.validate();
    if !report.is_ok() {
        return Err(VineError::InvalidMatrix(report));
    }
    let n = m.n();
    let var = |x: u32| VarId::new(x).expect("validated entry");
    let mut levels: Vec<Vec<EdgeLabel>> = vec![Vec::new(); n - 1];
    let mut report = ValidationReport::default();
    for j in 1..n {
        for i in j + 1..=n {
            let level = n - i + 1;
            let conditioned = VarSet::new([var(m.get(j, j)), var(m.get(i, j))]);
            let conditioning = VarSet::new((i + 1..=n).map(|r| var(m.get(r, j))));
            match EdgeLabel::new(conditioned, conditioning) {
                Ok(label) => levels[level - 1].push(label),
                Err(_) => report.push(Violation::DuplicateInColumn {
                    col: j,
                    value: m.get(i, j),
                }),
            }
        }
    }
    if !report.is_ok() {
        return Err(VineError::NotAVineMatrix(report));
    }
    VineStructure::from_edge_labels(n, levels).map_err(VineError::NotAVineMatrix)
}

/// Every matrix encoding the same vine, one per vine PEO.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceClass {
    /// Distinct matrices, sorted by diagonal then entries.
    pub matrices: Vec<VineMatrix>,
    /// Number of vine PEOs enumerated (before deduplication).
    pub peo_count: usize,
}

pub fn matrix_equivalence_class(v: &VineStructure, bound: usize) -> Result<EquivalenceClass> {
    if v.n() > bound {
        return Err(VineError::OutOfBounds {
            what: "n for equivalence-class enumeration",
            min: 2,
            max: bound,
            got: v.n(),
        });
    }
    let peos = enumerate_vine_peos(v)?;
    let mut matrices = peos
        .iter()
        .map(|p| encode_cherry(v, p).map(|(m, _)| m))
        .collect::<Result<Vec<_>>>()?;
    matrices.sort_by(|a, b| a.diagonal_values().cmp(&b.diagonal_values()).then_with(|| a.cmp(b)));
    matrices.dedup();
    Ok(EquivalenceClass {
        matrices,
        peo_count: peos.len(),
    })
}
