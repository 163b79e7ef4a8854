//! Single-linkage dendrograms from minimum spanning trees.
//!
//! Replaying MST edges in ascending order and merging the clusters on
//! either side reproduces single-linkage agglomerative clustering exactly:
//! the lightest edge between two clusters is their single-linkage distance.

use crate::error::{Error, Result};
use crate::graph::{edge_order, EdgeList, UnionFind};

/// One agglomeration. Points are clusters `0..n`; step `t` creates
/// cluster `n + t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MergeStep {
    pub cluster_a: usize,
    pub cluster_b: usize,
    pub height: f64,
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dendrogram {
    n: usize,
    steps: Vec<MergeStep>,
}

impl Dendrogram {
    pub fn steps(&self) -> &[MergeStep] {
        &self.steps
    }

    /// Number of original points.
    pub fn leaves(&self) -> usize {
        self.n
    }

    pub fn heights(&self) -> Vec<f64> {
        self.steps.iter().map(|s| s.height).collect()
    }

    /// Flat clustering obtained by applying every merge with
    /// `height <= h`. Labels are numbered by first appearance in point order.
    pub fn cut(&self, h: f64) -> Vec<usize> {
        let n = self.n;
        let mut uf = UnionFind::new(n);
        let mut rep: Vec<usize> = (0..n).collect();
        for s in &self.steps {
            let r = rep[s.cluster_a];
            if s.height <= h {
                uf.union(r, rep[s.cluster_b]);
            }
            rep.push(r);
        }
        canonical_labels((0..n).map(|i| uf.find(i)))
    }
}

/// Renumbers arbitrary component representatives to `0, 1, ...` in order
/// of first appearance.
pub fn canonical_labels(roots: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut seen = std::collections::HashMap::new();
    roots
        .into_iter()
        .map(|r| {
            let next = seen.len();
            *seen.entry(r).or_insert(next)
        })
        .collect()
}

/// Converts a spanning tree over vertices `0..n` into its dendrogram.
pub fn mst_to_dendrogram(tree: &EdgeList, n: usize) -> Result<Dendrogram> {
    if n > 0 && tree.len() != n - 1 || n == 0 && !tree.is_empty() {
        return Err(Error::usage(format!(
            "a spanning tree on {n} vertices has {} edges, got {}",
            n.saturating_sub(1),
            tree.len()
        )));
    }
    if let Some(e) = tree.iter().find(|e| e.v >= n) {
        return Err(Error::usage(format!(
            "edge ({}, {}) has an endpoint outside 0..{n}",
            e.u, e.v
        )));
    }
    let mut edges = tree.edges.clone();
    edges.sort_unstable_by(edge_order);

    let mut uf = UnionFind::new(n);
    // Cluster id and size currently attached to each union-find root.
    let mut cluster: Vec<usize> = (0..n).collect();
    let mut size = vec![1usize; n];
    let mut steps = Vec::with_capacity(edges.len());
    for e in edges {
        let (ra, rb) = (uf.find(e.u), uf.find(e.v));
        if ra == rb {
            return Err(Error::usage(format!(
                "edge ({}, {}) closes a cycle; input is not a tree",
                e.u, e.v
            )));
        }
        let merged = size[ra] + size[rb];
        steps.push(MergeStep {
            cluster_a: cluster[ra],
            cluster_b: cluster[rb],
            height: e.w,
            size: merged,
        });
        uf.union(ra, rb);
        let root = uf.find(ra);
        cluster[root] = n + steps.len() - 1;
        size[root] = merged;
    }
    Ok(Dendrogram { n, steps })
}
