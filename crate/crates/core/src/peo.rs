//! Perfect elimination orderings of whole vines.

use std::fmt;
use std::str::FromStr;

use crate::cherry::vine_to_cherry;
use crate::chordal::{cherry_to_chordal, verify_peo, ChordalGraph};
use crate::error::{Result, VineError};
use crate::model::{VarId, VarSet, VineStructure};

/// An ordering `r_1, ..., r_m` of distinct variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Peo(Vec<VarId>);

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PeoError {
    #[error("variable {0} appears more than once")]
    Repeated(u32),
    #[error("invalid variable '{0}'")]
    BadToken(String),
}

impl Peo {
    pub fn new(order: Vec<VarId>) -> Result<Self, PeoError> {
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(PeoError::Repeated(w[0].get()));
        }
        Ok(Peo(order))
    }

    pub fn from_values(values: &[u32]) -> Result<Self, PeoError> {
        let vars = values
            .iter()
            .map(|&x| VarId::new(x).ok_or_else(|| PeoError::BadToken(x.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Peo::new(vars)
    }

    pub fn as_slice(&self) -> &[VarId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> Vec<u32> {
        self.0.iter().map(|v| v.get()).collect()
    }

    /// True when the ordering contains exactly the variables `1..=n`.
    pub fn is_permutation_of(&self, n: usize) -> bool {
        self.0.len() == n && self.0.iter().all(|v| v.index() < n)
    }
}

impl fmt::Display for Peo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl FromStr for Peo {
    type Err = PeoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<u32>().map_err(|_| PeoError::BadToken(t.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Peo::from_values(&values)
    }
}

/// The chordal graph of every tree of a vine, built once for repeated checks.
#[derive(Clone, Debug)]
pub struct VineChordalGraphs {
    n: usize,
    graphs: Vec<ChordalGraph>,
}

impl VineChordalGraphs {
    pub fn new(v: &VineStructure) -> Self {
        let cherry = vine_to_cherry(v);
        VineChordalGraphs {
            n: v.n(),
            graphs: cherry.trees().iter().map(cherry_to_chordal).collect(),
        }
    }

    pub fn graphs(&self) -> &[ChordalGraph] {
        &self.graphs
    }

    pub fn is_vine_peo(&self, p: &Peo) -> bool {
        p.is_permutation_of(self.n) && self.graphs.iter().all(|g| verify_peo(g, p).unwrap_or(false))
    }

    /// Whether `v` may be eliminated next when exactly the variables flagged in
    /// `remaining` (including `v`) are still present: its remaining neighbours
    /// must be pairwise adjacent in every tree.
    pub fn can_eliminate(&self, v: VarId, remaining: &[bool]) -> bool {
        self.graphs.iter().all(|g| {
            let later: Vec<VarId> = g.neighbours(v).filter(|u| remaining[u.index()] && *u != v).collect();
            later
                .iter()
                .enumerate()
                .all(|(i, &a)| later[i + 1..].iter().all(|&b| g.has_edge(a, b)))
        })
    }
}

/// An ordering that is a perfect elimination ordering of every tree.
pub fn verify_vine_peo(v: &VineStructure, p: &Peo) -> bool {
    VineChordalGraphs::new(v).is_vine_peo(p)
}

/// Constructs a vine PEO: the conditioned pair of `T_{n-1}`, then per tree from
/// `T_{n-2}` down to `T_1` every not-yet-placed variable that sits in no
/// separator of that tree, then whatever is left. A variable is only placed
/// once its remaining neighbours form a clique in every tree; one that is not
/// ready yet is deferred, and the tail is filled greedily. Ties go to the
/// lowest index.
///
/// The guard matters: when `T_1` is the path `4-2-1-3-5`, every one of 1, 2, 3
/// lies in some separator above `T_1`, and placing 1 before 2 and 3 would leave
/// its `T_1` neighbours 2, 3 non-adjacent.
pub fn vine_peo(v: &VineStructure) -> Result<Peo> {
    let report = v.validate();
    if !report.is_ok() {
        return Err(VineError::InvalidVine(report));
    }
    let n = v.n();
    let graphs = VineChordalGraphs::new(v);
    let mut remaining = vec![true; n];
    let mut order = Vec::with_capacity(n);
    let try_place = |x: VarId, remaining: &mut Vec<bool>, order: &mut Vec<VarId>| {
        if remaining[x.index()] && graphs.can_eliminate(x, remaining) {
            remaining[x.index()] = false;
            order.push(x);
        }
    };

    for x in v.tree(n - 1).edges()[0].label.conditioned().iter() {
        try_place(x, &mut remaining, &mut order);
    }
    for level in (1..n - 1).rev() {
        let separators: VarSet = v
            .tree(level)
            .edges()
            .iter()
            .flat_map(|e| e.label.conditioning().iter())
            .collect();
        for x in (0..n).map(VarId::from_index) {
            if !separators.contains(x) {
                try_place(x, &mut remaining, &mut order);
            }
        }
    }
    while order.len() < n {
        let next = (0..n)
            .map(VarId::from_index)
            .find(|&x| remaining[x.index()] && graphs.can_eliminate(x, &remaining));
        let Some(x) = next else {
            return Err(VineError::StructureCorrupt(format!(
                "no variable can be eliminated after {}",
                Peo(order)
            )));
        };
        try_place(x, &mut remaining, &mut order);
    }
    Ok(Peo(order))
}
