//! Vine structures as sequences of cluster trees.
//!
//! A vine on `n` variables is a list of trees `T_1, ..., T_{n-1}`. The clusters
//! of `T_1` are the singletons `{1}, ..., {n}`; the clusters of `T_{k+1}` are the
//! unions `D ∪ S` of the edge labels `D|S` of `T_k`. Two clusters may only be
//! joined when their symmetric difference has exactly two elements.

use std::collections::BTreeSet;
use std::fmt;

use crate::report::{ValidationReport, Violation};
use crate::util::DisjointSets;

/// A variable index in `1..=n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(u32);

impl VarId {
    /// Returns `None` for zero; variables are numbered from one.
    pub fn new(value: u32) -> Option<Self> {
        (value >= 1).then_some(VarId(value))
    }

    pub const fn get(self) -> u32 {
        self.0
    }

    /// Zero-based position, handy for dense lookup tables.
    pub const fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub(crate) fn from_index(index: usize) -> Self {
        VarId(index as u32 + 1)
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Sorted, duplicate-free set of variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarSet(Vec<VarId>);

impl VarSet {
    pub fn new(vars: impl IntoIterator<Item = VarId>) -> Self {
        let mut v: Vec<VarId> = vars.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VarSet(v)
    }

    pub fn empty() -> Self {
        VarSet(Vec::new())
    }

    pub fn singleton(v: VarId) -> Self {
        VarSet(vec![v])
    }

    /// Builds a set from raw indices. Fails on zero or on repeated values.
    pub fn from_values(values: &[u32]) -> Option<Self> {
        let vars: Option<Vec<VarId>> = values.iter().map(|&x| VarId::new(x)).collect();
        let set = VarSet::new(vars?);
        (set.len() == values.len()).then_some(set)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = VarId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[VarId] {
        &self.0
    }

    pub fn values(&self) -> Vec<u32> {
        self.0.iter().map(|v| v.get()).collect()
    }

    pub fn last(&self) -> Option<VarId> {
        self.0.last().copied()
    }

    pub fn with(&self, v: VarId) -> VarSet {
        let mut out = self.0.clone();
        if let Err(pos) = out.binary_search(&v) {
            out.insert(pos, v);
        }
        VarSet(out)
    }

    pub fn union(&self, other: &VarSet) -> VarSet {
        VarSet::new(self.iter().chain(other.iter()))
    }

    pub fn intersection(&self, other: &VarSet) -> VarSet {
        VarSet(self.iter().filter(|&v| other.contains(v)).collect())
    }

    pub fn difference(&self, other: &VarSet) -> VarSet {
        VarSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn symmetric_difference(&self, other: &VarSet) -> VarSet {
        self.union(other).difference(&self.intersection(other))
    }

    pub fn is_subset(&self, other: &VarSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn is_disjoint(&self, other: &VarSet) -> bool {
        self.iter().all(|v| !other.contains(v))
    }
}

impl FromIterator<VarId> for VarSet {
    fn from_iter<I: IntoIterator<Item = VarId>>(iter: I) -> Self {
        VarSet::new(iter)
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Why an edge label could not be built.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum LabelError {
    #[error("conditioned set must have size 2, got {0}")]
    ConditionedSize(usize),
    #[error("conditioned and conditioning sets overlap")]
    Overlap,
}

/// Edge label `D|S`: the two conditioned variables and the conditioning set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeLabel {
    conditioned: VarSet,
    conditioning: VarSet,
}

impl EdgeLabel {
    pub fn new(conditioned: VarSet, conditioning: VarSet) -> Result<Self, LabelError> {
        if conditioned.len() != 2 {
            return Err(LabelError::ConditionedSize(conditioned.len()));
        }
        if !conditioned.is_disjoint(&conditioning) {
            return Err(LabelError::Overlap);
        }
        Ok(EdgeLabel {
            conditioned,
            conditioning,
        })
    }

    /// The label an edge between `a` and `b` must carry, if the two clusters
    /// satisfy the proximity condition.
    pub fn between(a: &VarSet, b: &VarSet) -> Option<Self> {
        let conditioned = a.symmetric_difference(b);
        if conditioned.len() != 2 {
            return None;
        }
        Some(EdgeLabel {
            conditioned,
            conditioning: a.intersection(b),
        })
    }

    pub fn conditioned(&self) -> &VarSet {
        &self.conditioned
    }

    pub fn conditioning(&self) -> &VarSet {
        &self.conditioning
    }

    /// The conditioned pair, smaller element first.
    pub fn pair(&self) -> (VarId, VarId) {
        let s = self.conditioned.as_slice();
        (s[0], s[1])
    }

    /// The other conditioned variable, if `v` is one of the two.
    pub fn partner(&self, v: VarId) -> Option<VarId> {
        let (lo, hi) = self.pair();
        if v == lo {
            Some(hi)
        } else if v == hi {
            Some(lo)
        } else {
            None
        }
    }

    /// `D ∪ S`, the cluster this edge becomes one tree up.
    pub fn variables(&self) -> VarSet {
        self.conditioned.union(&self.conditioning)
    }

    /// Tree level the label belongs to (`|S| + 1`).
    pub fn level(&self) -> usize {
        self.conditioning.len() + 1
    }

    /// The two clusters `S ∪ {d1}` and `S ∪ {d2}` joined by this edge.
    pub fn endpoints(&self) -> (VarSet, VarSet) {
        let (lo, hi) = self.pair();
        (self.conditioning.with(lo), self.conditioning.with(hi))
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.pair();
        write!(f, "{a},{b}")?;
        if !self.conditioning.is_empty() {
            f.write_str("|")?;
            for (i, v) in self.conditioning.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub a: usize,
    pub b: usize,
    pub label: EdgeLabel,
}

/// One tree `T_k` of a vine: clusters of size `k` joined by labelled edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterTree {
    level: usize,
    clusters: Vec<VarSet>,
    edges: Vec<TreeEdge>,
}

impl ClusterTree {
    /// Raw constructor; nothing is checked until the enclosing vine is validated.
    pub fn new(level: usize, clusters: Vec<VarSet>, edges: Vec<TreeEdge>) -> Self {
        ClusterTree { level, clusters, edges }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn clusters(&self) -> &[VarSet] {
        &self.clusters
    }

    pub fn edges(&self) -> &[TreeEdge] {
        &self.edges
    }

    pub fn cluster_index(&self, cluster: &VarSet) -> Option<usize> {
        self.clusters.iter().position(|c| c == cluster)
    }

    /// Edge labels in canonical (sorted) order.
    pub fn sorted_labels(&self) -> Vec<EdgeLabel> {
        let mut labels: Vec<EdgeLabel> = self.edges.iter().map(|e| e.label.clone()).collect();
        labels.sort();
        labels
    }

    /// Cluster-index adjacency lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.clusters.len()];
        for e in &self.edges {
            if e.a < adj.len() && e.b < adj.len() {
                adj[e.a].push(e.b);
                adj[e.b].push(e.a);
            }
        }
        adj
    }
}

/// A regular vine: the canonical in-memory representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VineStructure {
    n: usize,
    trees: Vec<ClusterTree>,
}

impl VineStructure {
    /// Raw constructor; call [`VineStructure::validate`] before trusting the result.
    pub fn from_trees(n: usize, trees: Vec<ClusterTree>) -> Self {
        VineStructure { n, trees }
    }

    /// Builds a vine from its edge labels alone, level by level. Clusters are
    /// derived (`T_1` singletons, then `D ∪ S` of the level below), sorted, and
    /// each label is attached to the two clusters `S ∪ {d1}`, `S ∪ {d2}`.
    pub fn from_edge_labels(n: usize, levels: Vec<Vec<EdgeLabel>>) -> Result<Self, ValidationReport> {
        let mut report = ValidationReport::default();
        if n < 2 {
            report.push(Violation::TooFewVariables { n });
            return Err(report);
        }
        if levels.len() != n - 1 {
            report.push(Violation::TreeCount {
                expected: n - 1,
                found: levels.len(),
            });
            return Err(report);
        }

        let mut clusters: Vec<VarSet> = (0..n).map(|i| VarSet::singleton(VarId::from_index(i))).collect();
        let mut trees = Vec::with_capacity(n - 1);
        for (pos, labels) in levels.into_iter().enumerate() {
            let level = pos + 1;
            let mut edges = Vec::with_capacity(labels.len());
            for label in labels {
                if label.level() != level {
                    report.push(Violation::LabelLevel { level, label });
                    continue;
                }
                let (ca, cb) = label.endpoints();
                let a = clusters.iter().position(|c| *c == ca);
                let b = clusters.iter().position(|c| *c == cb);
                match (a, b) {
                    (Some(a), Some(b)) => edges.push(TreeEdge {
                        a: a.min(b),
                        b: a.max(b),
                        label,
                    }),
                    _ => report.push(Violation::DanglingLabel { level, label }),
                }
            }
            edges.sort_by(|x, y| (x.a, x.b, &x.label).cmp(&(y.a, y.b, &y.label)));
            let mut next: Vec<VarSet> = edges.iter().map(|e| e.label.variables()).collect();
            next.sort();
            trees.push(ClusterTree::new(level, std::mem::replace(&mut clusters, next), edges));
        }
        if !report.is_ok() {
            return Err(report);
        }
        let vine = VineStructure { n, trees };
        let report = vine.validate();
        if report.is_ok() {
            Ok(vine)
        } else {
            Err(report)
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn trees(&self) -> &[ClusterTree] {
        &self.trees
    }

    /// Tree `T_level`, one-based.
    pub fn tree(&self, level: usize) -> &ClusterTree {
        &self.trees[level - 1]
    }

    /// All edge labels, one sorted list per level.
    pub fn labels(&self) -> Vec<Vec<EdgeLabel>> {
        self.trees.iter().map(ClusterTree::sorted_labels).collect()
    }

    /// Same `n` and the same edge labels at every level; cluster and edge
    /// order are irrelevant.
    pub fn same_structure(&self, other: &VineStructure) -> bool {
        self.n == other.n
            && self.trees.len() == other.trees.len()
            && self
                .trees
                .iter()
                .zip(&other.trees)
                .all(|(a, b)| a.sorted_labels() == b.sorted_labels())
    }

    /// Path-shaped vine over `1..=n` in natural order.
    pub fn d_vine(n: usize) -> Self {
        let levels = (1..n)
            .map(|k| {
                (1..=n - k)
                    .map(|i| {
                        let d = VarSet::new([VarId::from_index(i - 1), VarId::from_index(i + k - 1)]);
                        let s = VarSet::new((i + 1..i + k).map(|x| VarId::from_index(x - 1)));
                        EdgeLabel::new(d, s).expect("d-vine label")
                    })
                    .collect()
            })
            .collect();
        VineStructure::from_edge_labels(n, levels).expect("d-vine is valid")
    }

    /// Star-shaped vine: `T_k` is centred on `{1, ..., k}`.
    pub fn c_vine(n: usize) -> Self {
        let levels = (1..n)
            .map(|k| {
                (k + 1..=n)
                    .map(|x| {
                        let d = VarSet::new([VarId::from_index(k - 1), VarId::from_index(x - 1)]);
                        let s = VarSet::new((1..k).map(|y| VarId::from_index(y - 1)));
                        EdgeLabel::new(d, s).expect("c-vine label")
                    })
                    .collect()
            })
            .collect();
        VineStructure::from_edge_labels(n, levels).expect("c-vine is valid")
    }

    /// Checks every construction rule and reports each violation found.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.n;
        if n < 2 {
            report.push(Violation::TooFewVariables { n });
            return report;
        }
        if self.trees.len() != n - 1 {
            report.push(Violation::TreeCount {
                expected: n - 1,
                found: self.trees.len(),
            });
            return report;
        }

        for (pos, tree) in self.trees.iter().enumerate() {
            let level = pos + 1;
            if tree.level != level {
                report.push(Violation::LevelMismatch {
                    position: pos,
                    level: tree.level,
                });
            }
            validate_tree(n, level, tree, &mut report);
            if level >= 2 {
                let below = &self.trees[pos - 1];
                let expected: BTreeSet<VarSet> = below.edges.iter().map(|e| e.label.variables()).collect();
                let actual: BTreeSet<VarSet> = tree.clusters.iter().cloned().collect();
                for missing in expected.difference(&actual) {
                    report.push(Violation::MissingCluster {
                        level,
                        cluster: missing.clone(),
                    });
                }
                for extra in actual.difference(&expected) {
                    report.push(Violation::UnexpectedCluster {
                        level,
                        cluster: extra.clone(),
                    });
                }
            }
        }
        report
    }
}

fn validate_tree(n: usize, level: usize, tree: &ClusterTree, report: &mut ValidationReport) {
    let expected_clusters = n - level + 1;
    if tree.clusters.len() != expected_clusters {
        report.push(Violation::ClusterCount {
            level,
            expected: expected_clusters,
            found: tree.clusters.len(),
        });
        return;
    }
    let mut seen = BTreeSet::new();
    for cluster in &tree.clusters {
        if cluster.len() != level {
            report.push(Violation::ClusterSize {
                level,
                cluster: cluster.clone(),
                expected: level,
            });
        }
        if let Some(v) = cluster.iter().find(|v| v.index() >= n) {
            report.push(Violation::VariableOutOfRange { level, var: v.get(), n });
        }
        if !seen.insert(cluster.clone()) {
            report.push(Violation::DuplicateCluster {
                level,
                cluster: cluster.clone(),
            });
        }
    }

    if tree.edges.len() != n - level {
        report.push(Violation::EdgeCount {
            level,
            expected: n - level,
            found: tree.edges.len(),
        });
    }
    let mut sets = DisjointSets::new(tree.clusters.len());
    let mut acyclic = true;
    for (idx, e) in tree.edges.iter().enumerate() {
        if e.a >= tree.clusters.len() || e.b >= tree.clusters.len() || e.a == e.b {
            report.push(Violation::BadEndpoint { level, edge: idx });
            continue;
        }
        let (a, b) = (&tree.clusters[e.a], &tree.clusters[e.b]);
        let diff = a.symmetric_difference(b);
        if diff.len() != 2 {
            report.push(Violation::Proximity {
                level,
                a: a.clone(),
                b: b.clone(),
                size: diff.len(),
            });
        } else if e.label.conditioned() != &diff || e.label.conditioning() != &a.intersection(b) {
            report.push(Violation::LabelMismatch {
                level,
                label: e.label.clone(),
                a: a.clone(),
                b: b.clone(),
            });
        }
        if !sets.union(e.a, e.b) {
            acyclic = false;
        }
    }
    if !acyclic || sets.components() != 1 {
        report.push(Violation::NotATree { level });
    }
}

/// Free-function form of [`VineStructure::validate`].
pub fn validate_vine(v: &VineStructure) -> ValidationReport {
    v.validate()
}

/// Free-function form of [`VineStructure::same_structure`].
pub fn vines_equal(a: &VineStructure, b: &VineStructure) -> bool {
    a.same_structure(b)
}
