//! Brute-force ground truth: materialize every pair, run Kruskal.
//!
//! Deliberately a different algorithm from the Prim kernel; the two share
//! only the edge order.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::geometry::{Metric, PointSet};
use crate::graph::{kruskal, Edge, EdgeList};

/// Largest point count the oracle materializes by default.
pub const DEFAULT_ORACLE_CAP: usize = 2048;

/// Oracle MSF with the default size cap.
pub fn oracle_mst(points: &PointSet, metric: Metric) -> Result<EdgeList> {
    oracle_mst_capped(points, metric, DEFAULT_ORACLE_CAP)
}

pub fn oracle_mst_capped(points: &PointSet, metric: Metric, cap: usize) -> Result<EdgeList> {
    let rows: Vec<usize> = (0..points.len()).collect();
    materialized_mst(points, metric, &rows, cap)
}

fn materialized_mst(
    points: &PointSet,
    metric: Metric,
    rows: &[usize],
    cap: usize,
) -> Result<EdgeList> {
    if rows.len() > cap {
        return Err(Error::usage(format!(
            "oracle limited to {cap} points, got {}",
            rows.len()
        )));
    }
    let mut all = Vec::with_capacity(rows.len() * rows.len().saturating_sub(1) / 2);
    for (a, &ra) in rows.iter().enumerate() {
        for &rb in &rows[a + 1..] {
            let (ia, ib) = (points.id(ra), points.id(rb));
            let (first, second) = if ia < ib { (ra, rb) } else { (rb, ra) };
            let w = metric.eval(points.row(first), points.row(second))?;
            all.push(Edge::new(ia, ib, w));
        }
    }
    let n = points.id_bound();
    kruskal(&EdgeList::new(all, n), n)
}

/// Oracle MSF of the complete graph induced on `subset` (row indices).
pub fn induced_mst(points: &PointSet, metric: Metric, subset: &[usize]) -> Result<EdgeList> {
    if let Some(&bad) = subset.iter().find(|&&i| i >= points.len()) {
        return Err(Error::usage(format!(
            "subset index {bad} outside 0..{}",
            points.len()
        )));
    }
    let mut rows = subset.to_vec();
    rows.sort_unstable();
    rows.dedup();
    materialized_mst(points, metric, &rows, usize::MAX)
}

/// Optimal substructure check: every edge of the global MSF with both
/// endpoints in `subset` must belong to the MSF of the induced subgraph.
pub fn check_substructure(points: &PointSet, metric: Metric, subset: &[usize]) -> Result<bool> {
    let global = oracle_mst_capped(points, metric, usize::MAX)?;
    let local = induced_mst(points, metric, subset)?;
    let inside: HashSet<usize> = subset.iter().map(|&r| points.id(r)).collect();
    let local: HashSet<(usize, usize)> = local.pairs().into_iter().collect();
    Ok(global
        .iter()
        .filter(|e| inside.contains(&e.u) && inside.contains(&e.v))
        .all(|e| local.contains(&e.pair())))
}
