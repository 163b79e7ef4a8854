//! Edges, the deterministic edge order, union-find and Kruskal.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// An undirected weighted edge between two global vertex ids, stored with
/// `u < v`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub w: f64,
}

impl Edge {
    /// Normalizes endpoint order. Weight `-0.0` is folded to `+0.0` so that
    /// the bitwise order below agrees with numeric equality.
    pub fn new(a: usize, b: usize, w: f64) -> Self {
        debug_assert!(w.is_finite(), "edge weight must be finite");
        let (u, v) = if a <= b { (a, b) } else { (b, a) };
        Edge { u, v, w: w + 0.0 }
    }

    /// The unordered endpoint pair.
    pub fn pair(&self) -> (usize, usize) {
        (self.u, self.v)
    }
}

/// Strict total order on edges: weight, then `u`, then `v`.
///
/// This order makes the minimum spanning forest unique even when weights
/// tie; every MST routine in the crate uses it.
pub fn edge_order(a: &Edge, b: &Edge) -> Ordering {
    a.w.total_cmp(&b.w).then(a.u.cmp(&b.u)).then(a.v.cmp(&b.v))
}

/// A candidate edge set or forest.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EdgeList {
    pub edges: Vec<Edge>,
    pub vertex_count_hint: usize,
}

impl EdgeList {
    pub fn new(edges: Vec<Edge>, vertex_count_hint: usize) -> Self {
        EdgeList {
            edges,
            vertex_count_hint,
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Edge> {
        self.edges.iter()
    }

    pub fn sort(&mut self) {
        self.edges.sort_unstable_by(edge_order);
    }

    /// Sorts and removes repeated `(u, v)` pairs, keeping the smallest copy.
    pub fn dedup(&mut self) {
        self.edges
            .sort_unstable_by(|a, b| a.pair().cmp(&b.pair()).then(edge_order(a, b)));
        self.edges.dedup_by_key(|e| e.pair());
        self.sort();
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    /// Endpoint pairs in edge order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(Edge::pair).collect()
    }

    pub fn extend(&mut self, other: &EdgeList) {
        self.edges.extend_from_slice(&other.edges);
        self.vertex_count_hint = self.vertex_count_hint.max(other.vertex_count_hint);
    }
}

impl<'a> IntoIterator for &'a EdgeList {
    type Item = &'a Edge;
    type IntoIter = std::slice::Iter<'a, Edge>;

    fn into_iter(self) -> Self::IntoIter {
        self.edges.iter()
    }
}

/// Disjoint sets with union by rank and path compression.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the sets of `a` and `b`. Returns false if they were already
    /// joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            Ordering::Less => self.parent[ra] = rb,
            Ordering::Greater => self.parent[rb] = ra,
            Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Minimum spanning forest of the candidate multigraph on `n` vertices,
/// sorted by [`edge_order`]. Duplicate candidates are harmless.
pub fn kruskal(candidates: &EdgeList, n: usize) -> Result<EdgeList> {
    if let Some(e) = candidates.iter().find(|e| e.v >= n) {
        return Err(Error::usage(format!(
            "edge ({}, {}) has an endpoint outside 0..{n}",
            e.u, e.v
        )));
    }
    let mut sorted = candidates.edges.clone();
    sorted.sort_unstable_by(edge_order);
    let mut uf = UnionFind::new(n);
    let mut forest = Vec::with_capacity(n.saturating_sub(1).min(sorted.len()));
    for e in sorted {
        if uf.union(e.u, e.v) {
            forest.push(e);
            if forest.len() + 1 == n {
                break;
            }
        }
    }
    Ok(EdgeList::new(forest, n))
}

/// Number of connected components of `edges` over `n` vertices.
pub fn component_count(edges: &EdgeList, n: usize) -> usize {
    let mut uf = UnionFind::new(n);
    let merged = edges.iter().filter(|e| uf.union(e.u, e.v)).count();
    n - merged
}
