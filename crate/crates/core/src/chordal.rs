//! Chordal-graph representation and elimination orderings.
//!
//! Completing every cluster of a cherry tree gives a chordal graph. Going the
//! other way, the maximal cliques of a chordal graph joined by a maximum-weight
//! spanning tree of their intersection graph form a junction tree.

use std::collections::BTreeSet;

use crate::cherry::{CherryTree, JunctionTree, SeparatorEdge};
use crate::error::{Result, VineError};
use crate::model::{VarId, VarSet};
use crate::peo::Peo;
use crate::util::DisjointSets;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordalGraph {
    vertices: VarSet,
    edges: BTreeSet<(VarId, VarId)>,
    // dense adjacency indexed by VarId::index()
    adj: Vec<Vec<bool>>,
}

impl ChordalGraph {
    /// Edges are unordered; self-loops are dropped.
    pub fn new(vertices: VarSet, edges: impl IntoIterator<Item = (VarId, VarId)>) -> Self {
        let size = vertices.last().map_or(0, |v| v.get() as usize);
        let mut adj = vec![vec![false; size]; size];
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b || !vertices.contains(a) || !vertices.contains(b) {
                continue;
            }
            adj[a.index()][b.index()] = true;
            adj[b.index()][a.index()] = true;
            set.insert((a.min(b), a.max(b)));
        }
        ChordalGraph {
            vertices,
            edges: set,
            adj,
        }
    }

    pub fn vertices(&self) -> &VarSet {
        &self.vertices
    }

    /// Edges as `(smaller, larger)` pairs, sorted.
    pub fn edges(&self) -> &BTreeSet<(VarId, VarId)> {
        &self.edges
    }

    pub fn has_edge(&self, a: VarId, b: VarId) -> bool {
        self.adj
            .get(a.index())
            .and_then(|row| row.get(b.index()))
            .copied()
            .unwrap_or(false)
    }

    pub fn neighbours(&self, v: VarId) -> impl Iterator<Item = VarId> + '_ {
        self.vertices.iter().filter(move |&u| self.has_edge(v, u))
    }
}

/// Completes every cluster into a clique.
pub fn cherry_to_chordal(c: &CherryTree) -> ChordalGraph {
    let vertices: VarSet = c.clusters().iter().flat_map(VarSet::iter).collect();
    let edges = c.clusters().iter().flat_map(|cl| {
        let s = cl.as_slice();
        (0..s.len()).flat_map(move |i| (i + 1..s.len()).map(move |j| (s[i], s[j])))
    });
    ChordalGraph::new(vertices, edges.collect::<Vec<_>>())
}

/// For every `i`, the neighbours of `r_i` among `r_{i+1}, ..., r_m` are
/// pairwise adjacent.
pub fn verify_peo(g: &ChordalGraph, p: &Peo) -> Result<bool> {
    let covered: VarSet = p.as_slice().iter().copied().collect();
    if covered != *g.vertices() || covered.len() != p.len() {
        return Err(VineError::VertexMismatch);
    }
    let order = p.as_slice();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<VarId> = order[i + 1..].iter().copied().filter(|&u| g.has_edge(v, u)).collect();
        for (x, &a) in later.iter().enumerate() {
            if later[x + 1..].iter().any(|&b| !g.has_edge(a, b)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Repeatedly strips a leaf cluster and emits its private variable, then emits
/// the last cluster. Leaves are taken lowest cluster index first.
pub fn leaf_elimination_peo(c: &CherryTree) -> Result<Peo> {
    let clusters = c.clusters();
    let adj = c.adjacency();
    let mut alive = vec![true; clusters.len()];
    let mut remaining = clusters.len();
    let mut order = Vec::new();

    while remaining > 1 {
        let mut removed = false;
        for leaf in 0..clusters.len() {
            if !alive[leaf] || adj[leaf].iter().filter(|&&d| alive[d]).count() != 1 {
                continue;
            }
            let private: Vec<VarId> = clusters[leaf]
                .iter()
                .filter(|&x| (0..clusters.len()).all(|o| o == leaf || !alive[o] || !clusters[o].contains(x)))
                .collect();
            if private.is_empty() {
                continue;
            }
            order.extend(private);
            alive[leaf] = false;
            remaining -= 1;
            removed = true;
            break;
        }
        if !removed {
            return Err(VineError::NoPrivateVariable);
        }
    }
    if let Some(last) = (0..clusters.len()).find(|&i| alive[i]) {
        order.extend(clusters[last].iter());
    }
    Peo::new(order).map_err(|e| VineError::StructureCorrupt(e.to_string()))
}

/// Maximum cardinality search (lowest index on ties); the reversed visiting
/// order is a PEO whenever the graph is chordal.
pub fn maximum_cardinality_search(g: &ChordalGraph) -> Peo {
    let verts: Vec<VarId> = g.vertices().iter().collect();
    let mut weight = vec![0usize; verts.len()];
    let mut done = vec![false; verts.len()];
    let mut visit = Vec::with_capacity(verts.len());
    for _ in 0..verts.len() {
        let next = (0..verts.len())
            .filter(|&i| !done[i])
            .max_by(|&a, &b| weight[a].cmp(&weight[b]).then(b.cmp(&a)))
            .expect("unvisited vertex");
        done[next] = true;
        visit.push(verts[next]);
        for i in 0..verts.len() {
            if !done[i] && g.has_edge(verts[next], verts[i]) {
                weight[i] += 1;
            }
        }
    }
    visit.reverse();
    Peo::new(visit).expect("vertices are distinct")
}

/// Maximal cliques of a chordal graph, read off a PEO: each vertex with its
/// later neighbours, keeping only candidates not contained in another.
pub fn maximal_cliques(g: &ChordalGraph, p: &Peo) -> Vec<VarSet> {
    let order = p.as_slice();
    let candidates: Vec<VarSet> = order
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            let mut c: Vec<VarId> = order[i + 1..].iter().copied().filter(|&u| g.has_edge(v, u)).collect();
            c.push(v);
            VarSet::new(c)
        })
        .collect();
    let mut cliques: Vec<VarSet> = candidates
        .iter()
        .filter(|c| !candidates.iter().any(|d| d.len() > c.len() && c.is_subset(d)))
        .cloned()
        .collect();
    cliques.sort();
    cliques.dedup();
    cliques
}

/// Junction tree of a chordal graph. Cliques are sorted; candidate edges are
/// taken by separator size descending, then endpoint indices ascending.
pub fn chordal_to_junction_tree(g: &ChordalGraph) -> Result<JunctionTree> {
    let p = maximum_cardinality_search(g);
    if !verify_peo(g, &p)? {
        return Err(VineError::NotChordal);
    }
    let cliques = maximal_cliques(g, &p);
    let mut candidates = Vec::new();
    for i in 0..cliques.len() {
        for j in i + 1..cliques.len() {
            let sep = cliques[i].intersection(&cliques[j]);
            candidates.push((sep.len(), i, j, sep));
        }
    }
    candidates.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut sets = DisjointSets::new(cliques.len());
    let edges = candidates
        .into_iter()
        .filter(|&(_, a, b, _)| sets.union(a, b))
        .map(|(_, a, b, separator)| SeparatorEdge { a, b, separator })
        .collect();
    Ok(JunctionTree::new(cliques, edges))
}
