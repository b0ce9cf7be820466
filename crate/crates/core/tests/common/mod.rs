//! Fixtures and brute-force oracles shared by the integration tests. The
//! oracles work from the public cluster lists only and share no code with the
//! library's own checkers.

#![allow(dead_code)]

use vine_structure::{EdgeLabel, Peo, VarSet, VineMatrix, VineStructure};

pub fn set(values: &[u32]) -> VarSet {
    VarSet::from_values(values).expect("distinct positive values")
}

pub fn label(d: [u32; 2], s: &[u32]) -> EdgeLabel {
    EdgeLabel::new(set(&d), set(s)).expect("valid label")
}

/// The five-variable vine used throughout the worked examples.
pub fn v5() -> VineStructure {
    VineStructure::from_edge_labels(
        5,
        vec![
            vec![
                label([1, 2], &[]),
                label([2, 3], &[]),
                label([3, 4], &[]),
                label([3, 5], &[]),
            ],
            vec![label([1, 3], &[2]), label([2, 4], &[3]), label([2, 5], &[3])],
            vec![label([1, 4], &[2, 3]), label([1, 5], &[2, 3])],
            vec![label([4, 5], &[1, 2, 3])],
        ],
    )
    .expect("example vine is valid")
}

pub fn m5() -> VineMatrix {
    VineMatrix::from_rows(&[
        vec![4],
        vec![5, 1],
        vec![1, 5, 2],
        vec![2, 3, 5, 3],
        vec![3, 2, 3, 5, 5],
    ])
    .unwrap()
}

/// Number of vines on `n` labelled variables:
/// `C(n,2) · (n−2)! · 2^((n−2)(n−3)/2)`.
pub fn vine_count_closed_form(n: u64) -> u64 {
    if n == 2 {
        return 1;
    }
    let pairs = n * (n - 1) / 2;
    let factorial: u64 = (1..=n - 2).product();
    pairs * factorial * (1u64 << ((n - 2) * (n - 3) / 2))
}

/// Adjacency of the graph in which every cluster of `clusters` is a clique,
/// indexed by zero-based variable.
pub fn clique_adjacency(n: usize, clusters: &[VarSet]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for c in clusters {
        let vals = c.values();
        for &a in &vals {
            for &b in &vals {
                if a != b {
                    adj[a as usize - 1][b as usize - 1] = true;
                }
            }
        }
    }
    adj
}

/// Later neighbours of every position must be pairwise adjacent.
pub fn is_peo_of(adj: &[Vec<bool>], order: &[u32]) -> bool {
    let order: Vec<usize> = order.iter().map(|&x| x as usize - 1).collect();
    (0..order.len()).all(|i| {
        let later: Vec<usize> = order[i + 1..].iter().copied().filter(|&u| adj[order[i]][u]).collect();
        later.iter().all(|&a| later.iter().all(|&b| a == b || adj[a][b]))
    })
}

pub fn level_adjacencies(v: &VineStructure) -> Vec<Vec<Vec<bool>>> {
    v.trees()
        .iter()
        .map(|t| clique_adjacency(v.n(), t.clusters()))
        .collect()
}

pub fn oracle_vine_peo(adjs: &[Vec<Vec<bool>>], order: &[u32]) -> bool {
    adjs.iter().all(|adj| is_peo_of(adj, order))
}

/// All permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Vec<u32>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x as u32 + 1);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

pub fn peo(values: &[u32]) -> Peo {
    Peo::from_values(values).expect("distinct values")
}

/// Both vines carry the same labels at every level, compared as sorted lists.
pub fn same_labels(a: &VineStructure, b: &VineStructure) -> bool {
    a.n() == b.n()
        && a.trees().len() == b.trees().len()
        && a.trees().iter().zip(b.trees()).all(|(x, y)| {
            let mut l: Vec<String> = x.edges().iter().map(|e| e.label.to_string()).collect();
            let mut r: Vec<String> = y.edges().iter().map(|e| e.label.to_string()).collect();
            l.sort();
            r.sort();
            l == r
        })
}
