//! The dense MST kernel: exact MST of the implicit complete graph over a
//! set of vectors, by all-pairs Prim.
//!
//! Prim keeps, for every vertex outside the tree, its lightest known edge
//! into the tree. Each time a vertex joins, the distances from it to every
//! remaining outside vertex are evaluated once, so a run over `m` points
//! performs exactly `m(m-1)/2` distance evaluations. Candidate edges are
//! compared with [`edge_order`], which is what makes the result agree with
//! Kruskal over the materialized graph even when weights tie.

use crate::decompose::RunStats;
use crate::error::Result;
use crate::geometry::{Metric, PointSet};
use crate::graph::{edge_order, Edge, EdgeList};

/// MST of the complete graph on `points` under `metric`, on global ids.
pub fn dense_mst(points: &PointSet, metric: Metric, stats: &mut RunStats) -> Result<EdgeList> {
    let rows: Vec<usize> = (0..points.len()).collect();
    dense_mst_rows(points, &rows, metric, stats)
}

/// Same as [`dense_mst`] restricted to the given rows of `points`.
pub fn dense_mst_rows(
    points: &PointSet,
    rows: &[usize],
    metric: Metric,
    stats: &mut RunStats,
) -> Result<EdgeList> {
    let hint = points.id_bound();
    let m = rows.len();
    if m < 2 {
        return Ok(EdgeList::new(Vec::new(), hint));
    }

    // Local slots still outside the tree, and their best edge into it.
    let mut outside: Vec<usize> = (1..m).collect();
    let mut best: Vec<Option<Edge>> = vec![None; m];
    let mut tree = Vec::with_capacity(m - 1);
    let mut newest = 0usize;
    let mut evals = 0u64;

    while !outside.is_empty() {
        let t_row = rows[newest];
        let t_id = points.id(t_row);
        let t_coords = points.row(t_row);

        let mut pick = 0usize;
        for (pos, &slot) in outside.iter().enumerate() {
            let o_row = rows[slot];
            let o_id = points.id(o_row);
            let o_coords = points.row(o_row);
            let w = if t_id < o_id {
                metric.eval(t_coords, o_coords)?
            } else {
                metric.eval(o_coords, t_coords)?
            };
            evals += 1;
            let cand = Edge::new(t_id, o_id, w);
            let cur = &mut best[slot];
            if cur.is_none_or(|c| edge_order(&cand, &c).is_lt()) {
                *cur = Some(cand);
            }
            let better = match (best[slot], best[outside[pick]]) {
                (Some(a), Some(b)) => edge_order(&a, &b).is_lt(),
                _ => false,
            };
            if better {
                pick = pos;
            }
        }

        newest = outside.swap_remove(pick);
        tree.push(best[newest].expect("outside vertex has a best edge after an update pass"));
    }

    stats.distance_evals += evals;
    tree.sort_unstable_by(edge_order);
    Ok(EdgeList::new(tree, hint))
}
