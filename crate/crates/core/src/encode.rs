//! Vine-matrix encoders.
//!
//! Two constructions of the same `n × n` lower-triangular matrix:
//!
//! * [`encode_napoles`] fills the matrix column by column, peeling the vine one
//!   leaf variable at a time and always putting the smaller conditioned
//!   variable on the diagonal.
//! * [`encode_cherry`] fills it row by row from a given vine PEO, walking one
//!   cherry tree per row.
//!
//! Given the same diagonal both produce the same matrix. Each run also reports
//! how many element comparisons it made under a fixed charging scheme, so the
//! totals are exact functions of `n`.

use std::collections::{HashMap, HashSet};

use crate::error::{Result, VineError};
use crate::matrix::VineMatrix;
use crate::model::{VarId, VarSet, VineStructure};
use crate::peo::{Peo, VineChordalGraphs};

/// Number of element comparisons made by an encoder run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct ComparisonCounter(u64);

impl ComparisonCounter {
    pub fn get(self) -> u64 {
        self.0
    }

    fn charge(&mut self, comparisons: u64) {
        self.0 += comparisons;
    }
}

fn ensure_valid(v: &VineStructure) -> Result<()> {
    let report = v.validate();
    if report.is_ok() {
        Ok(())
    } else {
        Err(VineError::InvalidVine(report))
    }
}

/// Column-wise, minimum-index construction.
///
/// Charging: the single unmarked edge of the top remaining tree costs one
/// comparison (choosing the smaller of its pair); below it, every unmarked edge
/// inspected while looking for the diagonal variable costs two (one against
/// each conditioned element), and every unmarked edge of the tree is inspected.
/// Step `j` therefore costs `2·(unmarked edges) − 1`.
pub fn encode_napoles(v: &VineStructure) -> Result<(VineMatrix, ComparisonCounter)> {
    ensure_valid(v)?;
    let n = v.n();
    let mut m = VineMatrix::zeros(n);
    let mut counter = ComparisonCounter::default();
    // marked[level - 1][edge]
    let mut marked: Vec<Vec<bool>> = v.trees().iter().map(|t| vec![false; t.edges().len()]).collect();

    let unmarked = |marked: &Vec<Vec<bool>>, level: usize| -> Vec<usize> {
        (0..marked[level - 1].len())
            .filter(|&e| !marked[level - 1][e])
            .collect()
    };

    for j in 1..n {
        let top = n - j;
        let open = unmarked(&marked, top);
        let [edge] = open[..] else {
            return Err(VineError::StructureCorrupt(format!(
                "tree {top} has {} unmarked edges at step {j}",
                open.len()
            )));
        };
        marked[top - 1][edge] = true;
        counter.charge(1);
        let (lo, hi) = v.tree(top).edges()[edge].label.pair();
        m.set(j, j, lo.get());
        m.set(j + 1, j, hi.get());

        for i in j + 2..=n {
            let level = n - i + 1;
            let tree = v.tree(level);
            let mut found = None;
            for e in unmarked(&marked, level) {
                counter.charge(2);
                if let Some(partner) = tree.edges()[e].label.partner(lo) {
                    if found.is_some() {
                        return Err(VineError::StructureCorrupt(format!(
                            "variable {lo} on several unmarked edges of tree {level}"
                        )));
                    }
                    found = Some((e, partner));
                }
            }
            let Some((e, partner)) = found else {
                return Err(VineError::StructureCorrupt(format!(
                    "variable {lo} on no unmarked edge of tree {level}"
                )));
            };
            marked[level - 1][e] = true;
            m.set(i, j, partner.get());
        }
    }
    m.set(n, n, n as u32);
    Ok((m, counter))
}

/// The single element of `a \ b` for sorted `a`, `b` with `|a| = |b| + 1` or
/// `|a| = |b|`, found by walking both lists in step.
fn single_difference(a: &VarSet, b: &VarSet) -> Option<VarId> {
    let (a, b) = (a.as_slice(), b.as_slice());
    let mut j = 0;
    let mut out = None;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j < b.len() && b[j] == x {
            j += 1;
        } else if out.replace(x).is_some() {
            return None;
        }
    }
    out
}

/// Row-wise construction from a vine PEO using the cherry-tree sequence.
///
/// Charging: filling the row that belongs to `T_k` visits each of its
/// `n − k + 1` clusters once, and a visit to a cluster of size `k` costs `k`
/// comparisons (the ordered-list walk that yields the new entry).
pub fn encode_cherry(v: &VineStructure, p: &Peo) -> Result<(VineMatrix, ComparisonCounter)> {
    ensure_valid(v)?;
    let n = v.n();
    if !VineChordalGraphs::new(v).is_vine_peo(p) {
        return Err(VineError::NotVinePeo);
    }
    let r = p.as_slice();
    let mut m = VineMatrix::zeros(n);
    let mut counter = ComparisonCounter::default();

    // first phase: diagonal and bottom row from T_1
    let t1 = v.tree(1);
    let mut t1_adj = vec![Vec::new(); n];
    for e in t1.edges() {
        let (a, b) = e.label.pair();
        t1_adj[a.index()].push(b);
        t1_adj[b.index()].push(a);
    }
    let mut attached = vec![false; n];
    for j in (1..=n).rev() {
        let rj = r[j - 1];
        m.set(j, j, rj.get());
        counter.charge(1);
        if j < n {
            let links: Vec<VarId> = t1_adj[rj.index()]
                .iter()
                .copied()
                .filter(|u| attached[u.index()])
                .collect();
            let [link] = links[..] else {
                return Err(VineError::StructureCorrupt(format!(
                    "{rj} joins {} earlier nodes of tree 1",
                    links.len()
                )));
            };
            m.set(n, j, link.get());
        }
        attached[rj.index()] = true;
    }

    // second phase: row i from T_{n-i+1}
    for i in (2..n).rev() {
        let level = n - i + 1;
        let tree = v.tree(level);
        let index: HashMap<&VarSet, usize> = tree.clusters().iter().enumerate().map(|(x, c)| (c, x)).collect();
        let joined: HashSet<(usize, usize)> = tree.edges().iter().flat_map(|e| [(e.a, e.b), (e.b, e.a)]).collect();

        // cluster of column c: its diagonal entry with everything below row i
        let mut columns = Vec::with_capacity(i);
        for c in 1..=i {
            let cluster: VarSet = std::iter::once(m.get(c, c))
                .chain((i + 1..=n).map(|row| m.get(row, c)))
                .map(|x| VarId::new(x).expect("filled entry"))
                .collect();
            counter.charge(level as u64);
            let Some(&idx) = index.get(&cluster) else {
                return Err(VineError::StructureCorrupt(format!(
                    "column {c} names {cluster}, which is not a cluster of tree {level}"
                )));
            };
            columns.push((cluster, idx));
        }

        for j in (1..i).rev() {
            let (b, b_idx) = &columns[j - 1];
            let hit = (j + 1..=i).find(|&k| joined.contains(&(columns[k - 1].1, *b_idx)));
            let Some(k) = hit else {
                return Err(VineError::StructureCorrupt(format!(
                    "column {j}: {b} joins no candidate cluster in tree {level}"
                )));
            };
            let Some(x) = single_difference(&columns[k - 1].0, b) else {
                return Err(VineError::StructureCorrupt(format!(
                    "column {j}: clusters differ in more than one element"
                )));
            };
            m.set(i, j, x.get());
        }
    }
    Ok((m, counter))
}

fn check_n(n: usize) -> Result<u64> {
    if n < 2 {
        return Err(VineError::OutOfBounds {
            what: "n",
            min: 2,
            max: usize::MAX,
            got: n,
        });
    }
    Ok(n as u64)
}

/// `(n − 1)(n(n + 1) − 3) / 3`, the comparison total of [`encode_napoles`].
pub fn comparison_count_formula_napoles(n: usize) -> Result<u64> {
    let n = check_n(n)?;
    Ok((n - 1) * (n * (n + 1) - 3) / 3)
}

/// `(n − 1) n (n + 4) / 6`, the comparison total of [`encode_cherry`].
pub fn comparison_count_formula_cherry(n: usize) -> Result<u64> {
    let n = check_n(n)?;
    Ok((n - 1) * n * (n + 4) / 6)
}
