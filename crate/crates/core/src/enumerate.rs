//! Exhaustive and random generation of vines and vine PEOs.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, VineError};
use crate::model::{EdgeLabel, VarId, VarSet, VineStructure};
use crate::peo::{Peo, VineChordalGraphs};
use crate::util::DisjointSets;

pub const MAX_ENUMERATION_N: usize = 6;
pub const MAX_PEO_ENUMERATION_N: usize = 8;

/// Name and version of the generator behind [`random_vine`].
pub const RNG_NAME: &str = "chacha8 (rand_chacha 0.3)";

/// Every spanning tree of the graph on `nodes` vertices, as sorted lists of
/// indices into `edges`, in lexicographic order.
pub fn spanning_trees(nodes: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    fn walk(
        pos: usize,
        needed: usize,
        edges: &[(usize, usize)],
        sets: &DisjointSets,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if chosen.len() == needed {
            out.push(chosen.clone());
            return;
        }
        if edges.len() - pos < needed - chosen.len() {
            return;
        }
        let (a, b) = edges[pos];
        let mut with = sets.clone();
        if with.union(a, b) {
            chosen.push(pos);
            walk(pos + 1, needed, edges, &with, chosen, out);
            chosen.pop();
        }
        walk(pos + 1, needed, edges, sets, chosen, out);
    }

    let mut out = Vec::new();
    if nodes == 0 {
        return out;
    }
    walk(
        0,
        nodes - 1,
        edges,
        &DisjointSets::new(nodes),
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Pairs of clusters that may be joined (intersection of size `|cluster| − 1`).
fn proximity_edges(clusters: &[VarSet]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for i in 0..clusters.len() {
        for j in i + 1..clusters.len() {
            if clusters[i].symmetric_difference(&clusters[j]).len() == 2 {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn next_clusters(labels: &[EdgeLabel]) -> Vec<VarSet> {
    let mut c: Vec<VarSet> = labels.iter().map(EdgeLabel::variables).collect();
    c.sort();
    c
}

fn labels_for(clusters: &[VarSet], edges: &[(usize, usize)], chosen: &[usize]) -> Vec<EdgeLabel> {
    chosen
        .iter()
        .map(|&e| {
            let (a, b) = edges[e];
            EdgeLabel::between(&clusters[a], &clusters[b]).expect("proximity edge")
        })
        .collect()
}

fn check_enumeration_bound(n: usize) -> Result<()> {
    if !(2..=MAX_ENUMERATION_N).contains(&n) {
        return Err(VineError::OutOfBounds {
            what: "n for vine enumeration",
            min: 2,
            max: MAX_ENUMERATION_N,
            got: n,
        });
    }
    Ok(())
}

/// Calls `f` on every vine over `1..=n` exactly once, in canonical order:
/// spanning trees of `K_n` for `T_1`, then recursively every spanning tree of
/// each level's proximity graph.
pub fn for_each_vine(n: usize, mut f: impl FnMut(VineStructure)) -> Result<()> {
    check_enumeration_bound(n)?;

    fn extend(n: usize, levels: &mut Vec<Vec<EdgeLabel>>, f: &mut dyn FnMut(VineStructure)) {
        if levels.len() == n - 1 {
            let vine = VineStructure::from_edge_labels(n, levels.clone()).expect("enumerated vine is valid");
            f(vine);
            return;
        }
        let clusters = next_clusters(levels.last().expect("at least T_1"));
        let edges = proximity_edges(&clusters);
        for tree in spanning_trees(clusters.len(), &edges) {
            levels.push(labels_for(&clusters, &edges, &tree));
            extend(n, levels, f);
            levels.pop();
        }
    }

    let singletons: Vec<VarSet> = (0..n).map(|i| VarSet::singleton(VarId::from_index(i))).collect();
    let complete: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    for tree in spanning_trees(n, &complete) {
        let mut levels = vec![labels_for(&singletons, &complete, &tree)];
        extend(n, &mut levels, &mut f);
    }
    Ok(())
}

pub fn enumerate_vines(n: usize) -> Result<Vec<VineStructure>> {
    let mut out = Vec::new();
    for_each_vine(n, |v| out.push(v))?;
    Ok(out)
}

/// All vine PEOs in lexicographic order: brute force over permutations up to
/// seven variables, prefix-pruned search at eight.
pub fn enumerate_vine_peos(v: &VineStructure) -> Result<Vec<Peo>> {
    let n = v.n();
    if !(2..=MAX_PEO_ENUMERATION_N).contains(&n) {
        return Err(VineError::OutOfBounds {
            what: "n for PEO enumeration",
            min: 2,
            max: MAX_PEO_ENUMERATION_N,
            got: n,
        });
    }
    let graphs = VineChordalGraphs::new(v);
    if n <= 7 {
        Ok((0..n)
            .map(VarId::from_index)
            .permutations(n)
            .map(|p| Peo::new(p).expect("permutation"))
            .filter(|p| graphs.is_vine_peo(p))
            .collect())
    } else {
        Ok(pruned_peo_search(&graphs, n))
    }
}

/// Depth-first search that only extends a prefix by a variable whose remaining
/// neighbours form a clique in every tree. Whether `r_i` is admissible depends
/// only on the set of variables after it, so no valid ordering is cut.
pub(crate) fn pruned_peo_search(graphs: &VineChordalGraphs, n: usize) -> Vec<Peo> {
    fn dfs(graphs: &VineChordalGraphs, remaining: &mut Vec<bool>, prefix: &mut Vec<VarId>, out: &mut Vec<Peo>) {
        if prefix.len() == remaining.len() {
            out.push(Peo::new(prefix.clone()).expect("distinct"));
            return;
        }
        for i in 0..remaining.len() {
            let v = VarId::from_index(i);
            if remaining[i] && graphs.can_eliminate(v, remaining) {
                remaining[i] = false;
                prefix.push(v);
                dfs(graphs, remaining, prefix, out);
                prefix.pop();
                remaining[i] = true;
            }
        }
    }
    let mut out = Vec::new();
    dfs(graphs, &mut vec![true; n], &mut Vec::new(), &mut out);
    out
}

/// Uniform spanning tree by loop-erased random walks (Wilson's algorithm).
fn random_spanning_tree(nodes: usize, edges: &[(usize, usize)], rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nodes];
    for (idx, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, idx));
        adj[b].push((a, idx));
    }
    let mut order: Vec<usize> = (0..nodes).collect();
    order.shuffle(rng);
    let mut in_tree = vec![false; nodes];
    let mut next: Vec<Option<(usize, usize)>> = vec![None; nodes];
    in_tree[order[0]] = true;
    let mut chosen = Vec::with_capacity(nodes.saturating_sub(1));
    for &start in &order[1..] {
        let mut u = start;
        while !in_tree[u] {
            let step = adj[u][rng.gen_range(0..adj[u].len())];
            next[u] = Some(step);
            u = step.0;
        }
        let mut u = start;
        while !in_tree[u] {
            in_tree[u] = true;
            let (w, idx) = next[u].expect("walk recorded");
            chosen.push(idx);
            u = w;
        }
    }
    chosen.sort_unstable();
    chosen
}

/// A random vine, reproducible from `(n, seed)`: a uniform spanning tree of
/// `K_n` for `T_1`, then a uniform spanning tree of each proximity graph.
pub fn random_vine(n: usize, seed: u64) -> Result<VineStructure> {
    if n < 2 {
        return Err(VineError::OutOfBounds {
            what: "n",
            min: 2,
            max: usize::MAX,
            got: n,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut clusters: Vec<VarSet> = (0..n).map(|i| VarSet::singleton(VarId::from_index(i))).collect();
    let mut levels = Vec::with_capacity(n - 1);
    for level in 1..n {
        let edges = if level == 1 {
            (0..n).tuple_combinations().collect()
        } else {
            proximity_edges(&clusters)
        };
        let tree = random_spanning_tree(clusters.len(), &edges, &mut rng);
        let labels = labels_for(&clusters, &edges, &tree);
        clusters = next_clusters(&labels);
        levels.push(labels);
    }
    VineStructure::from_edge_labels(n, levels).map_err(VineError::InvalidVine)
}
