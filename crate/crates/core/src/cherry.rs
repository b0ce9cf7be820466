//! Cherry-tree representation of a vine.
//!
//! Every cluster tree `T_k` of a vine maps to a cherry tree of order `k`: the
//! same clusters, with each edge carrying its separator (the intersection of its
//! endpoints) instead of a `D|S` label. Separators live on edges, so a
//! separator shared by several edges is kept once per edge.

use std::collections::BTreeSet;

use crate::error::{Result, VineError};
use crate::model::{ClusterTree, EdgeLabel, TreeEdge, VarSet, VineStructure};
use crate::report::{ValidationReport, Violation};
use crate::util::DisjointSets;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatorEdge {
    pub a: usize,
    pub b: usize,
    pub separator: VarSet,
}

/// A cluster tree with per-edge separators whose clusters may differ in size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JunctionTree {
    clusters: Vec<VarSet>,
    edges: Vec<SeparatorEdge>,
}

impl JunctionTree {
    pub fn new(clusters: Vec<VarSet>, edges: Vec<SeparatorEdge>) -> Self {
        JunctionTree { clusters, edges }
    }

    pub fn clusters(&self) -> &[VarSet] {
        &self.clusters
    }

    pub fn edges(&self) -> &[SeparatorEdge] {
        &self.edges
    }

    /// Tree shape, separators equal to endpoint intersections, and the running
    /// intersection property.
    pub fn validate(&self) -> ValidationReport {
        let mut report = shape_violations(0, &self.clusters, &self.edges);
        if report.is_ok() {
            report.extend(rip_violations(0, &self.clusters, &self.edges));
        }
        report
    }
}

/// Cherry tree of order `k`: clusters of size `k`, separators of size `k − 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CherryTree {
    order: usize,
    clusters: Vec<VarSet>,
    edges: Vec<SeparatorEdge>,
}

impl CherryTree {
    pub fn new(order: usize, clusters: Vec<VarSet>, edges: Vec<SeparatorEdge>) -> Self {
        CherryTree { order, clusters, edges }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn clusters(&self) -> &[VarSet] {
        &self.clusters
    }

    pub fn edges(&self) -> &[SeparatorEdge] {
        &self.edges
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        adjacency(self.clusters.len(), &self.edges)
    }

    /// Everything a cherry tree must satisfy on its own, without reference to
    /// neighbouring levels.
    pub fn validate(&self) -> ValidationReport {
        let level = self.order;
        let mut report = ValidationReport::default();
        for c in &self.clusters {
            if c.len() != self.order {
                report.push(Violation::ClusterSize {
                    level,
                    cluster: c.clone(),
                    expected: self.order,
                });
            }
        }
        report.extend(shape_violations(level, &self.clusters, &self.edges));
        if report.is_ok() {
            report.extend(rip_violations(level, &self.clusters, &self.edges));
        }
        report
    }
}

impl From<CherryTree> for JunctionTree {
    fn from(c: CherryTree) -> Self {
        JunctionTree::new(c.clusters, c.edges)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CherryTreeSequence {
    trees: Vec<CherryTree>,
}

impl CherryTreeSequence {
    pub fn new(trees: Vec<CherryTree>) -> Self {
        CherryTreeSequence { trees }
    }

    pub fn trees(&self) -> &[CherryTree] {
        &self.trees
    }

    /// The order-`k` tree, one-based.
    pub fn tree(&self, order: usize) -> &CherryTree {
        &self.trees[order - 1]
    }
}

fn adjacency(len: usize, edges: &[SeparatorEdge]) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); len];
    for e in edges {
        adj[e.a].push(e.b);
        adj[e.b].push(e.a);
    }
    adj
}

fn shape_violations(level: usize, clusters: &[VarSet], edges: &[SeparatorEdge]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut sets = DisjointSets::new(clusters.len());
    let mut acyclic = true;
    for (idx, e) in edges.iter().enumerate() {
        if e.a >= clusters.len() || e.b >= clusters.len() || e.a == e.b {
            report.push(Violation::BadEndpoint { level, edge: idx });
            continue;
        }
        let expected = clusters[e.a].intersection(&clusters[e.b]);
        if e.separator != expected {
            report.push(Violation::SeparatorMismatch {
                level,
                edge: idx,
                separator: e.separator.clone(),
                expected,
            });
        }
        acyclic &= sets.union(e.a, e.b);
    }
    if !clusters.is_empty() && (!acyclic || sets.components() != 1) {
        report.push(Violation::NotATree { level });
    }
    report
}

fn rip_violations(level: usize, clusters: &[VarSet], edges: &[SeparatorEdge]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let adj = adjacency(clusters.len(), edges);
    let vars: BTreeSet<_> = clusters.iter().flat_map(VarSet::iter).collect();
    for v in vars {
        let holders: Vec<usize> = (0..clusters.len()).filter(|&i| clusters[i].contains(v)).collect();
        let start = holders[0];
        let mut reached = vec![false; clusters.len()];
        reached[start] = true;
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            for &d in &adj[c] {
                if !reached[d] && clusters[d].contains(v) {
                    reached[d] = true;
                    stack.push(d);
                }
            }
        }
        if let Some(&b) = holders.iter().find(|&&i| !reached[i]) {
            report.push(Violation::RunningIntersection {
                level,
                var: v,
                a: clusters[start].clone(),
                b: clusters[b].clone(),
            });
        }
    }
    report
}

/// Checks the running intersection property: for every variable, the clusters
/// containing it form a connected subtree. Assumes `c` is tree-shaped.
pub fn check_rip(c: &CherryTree) -> ValidationReport {
    rip_violations(c.order, &c.clusters, &c.edges)
}

pub fn vine_to_cherry(v: &VineStructure) -> CherryTreeSequence {
    let trees = v
        .trees()
        .iter()
        .map(|t| {
            let edges = t
                .edges()
                .iter()
                .map(|e| SeparatorEdge {
                    a: e.a,
                    b: e.b,
                    separator: t.clusters()[e.a].intersection(&t.clusters()[e.b]),
                })
                .collect();
            CherryTree::new(t.level(), t.clusters().to_vec(), edges)
        })
        .collect();
    CherryTreeSequence::new(trees)
}

/// Rebuilds the vine, labelling each edge `(A ∪ B) \ S | S`. Each tree is
/// checked on its own first (shape, separators, running intersection), then the
/// levels are checked against each other.
pub fn cherry_to_vine(c: &CherryTreeSequence) -> Result<VineStructure> {
    let mut report = ValidationReport::default();
    if c.trees.is_empty() {
        report.push(Violation::TooFewVariables { n: 1 });
        return Err(VineError::IrregularCherry(report));
    }
    let n = c.trees.len() + 1;
    for (pos, t) in c.trees.iter().enumerate() {
        if t.order != pos + 1 {
            report.push(Violation::LevelMismatch {
                position: pos,
                level: t.order,
            });
        }
        report.extend(t.validate());
    }
    if !report.is_ok() {
        return Err(VineError::IrregularCherry(report));
    }

    let mut trees = Vec::with_capacity(c.trees.len());
    for t in &c.trees {
        let mut edges = Vec::with_capacity(t.edges.len());
        for e in &t.edges {
            let (a, b) = (&t.clusters[e.a], &t.clusters[e.b]);
            let conditioned = a.union(b).difference(&e.separator);
            match EdgeLabel::new(conditioned.clone(), e.separator.clone()) {
                Ok(label) => edges.push(TreeEdge { a: e.a, b: e.b, label }),
                Err(_) => report.push(Violation::Proximity {
                    level: t.order,
                    a: a.clone(),
                    b: b.clone(),
                    size: conditioned.len(),
                }),
            }
        }
        trees.push(ClusterTree::new(t.order, t.clusters.clone(), edges));
    }
    if !report.is_ok() {
        return Err(VineError::IrregularCherry(report));
    }
    let vine = VineStructure::from_trees(n, trees);
    let report = vine.validate();
    if report.is_ok() {
        Ok(vine)
    } else {
        Err(VineError::IrregularCherry(report))
    }
}
