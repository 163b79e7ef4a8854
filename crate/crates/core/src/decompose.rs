//! The pairwise partition decomposition.
//!
//! The vertices are split into blocks `S_0..S_{k-1}`. For every pair of
//! blocks `i < j` the dense kernel computes the MST of the points in
//! `S_i ∪ S_j`; the union of those `k(k-1)/2` trees contains the MST of the
//! whole complete graph, so one sparse MST over the union finishes the job.
//!
//! Tasks see the shared [`PointSet`] through row lists and emit edges on
//! global ids, so no reindexing pass is ever needed.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dense::dense_mst_rows;
use crate::error::{Error, Result};
use crate::geometry::{Metric, PointSet};
use crate::graph::{kruskal, EdgeList};

/// A cover of `0..n` (point rows) by disjoint non-empty blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    n: usize,
}

impl Partition {
    /// Validates and wraps explicit blocks over `0..n`.
    pub fn new(blocks: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::usage("partition needs at least one block"));
        }
        let mut seen = vec![false; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::usage(format!("partition block {b} is empty")));
            }
            for &i in block {
                if i >= n {
                    return Err(Error::usage(format!("partition index {i} outside 0..{n}")));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::usage(format!("index {i} appears in two blocks")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::usage(format!(
                "index {i} is not covered by any block"
            )));
        }
        Ok(Partition { blocks, n })
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Number of indices covered.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The block pairs `(i, j)`, `i < j`, in lexicographic order.
    pub fn block_pairs(&self) -> Vec<(usize, usize)> {
        let k = self.blocks.len();
        (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionStrategy {
    /// Blocks of consecutive indices.
    Contiguous,
    /// Indices permuted by a seeded ChaCha8 generator, then split contiguously.
    Shuffled(u64),
}

/// Splits `0..n` into `k` blocks whose sizes differ by at most one; the
/// first `n % k` blocks get the extra element.
pub fn make_partition(n: usize, k: usize, strategy: PartitionStrategy) -> Result<Partition> {
    if k == 0 || k > n {
        return Err(Error::usage(format!(
            "partition count must satisfy 1 <= k <= n (k = {k}, n = {n})"
        )));
    }
    let mut order: Vec<usize> = (0..n).collect();
    if let PartitionStrategy::Shuffled(seed) = strategy {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let (q, r) = (n / k, n % k);
    let mut blocks = Vec::with_capacity(k);
    let mut rest = order.as_slice();
    for b in 0..k {
        let (head, tail) = rest.split_at(q + usize::from(b < r));
        blocks.push(head.to_vec());
        rest = tail;
    }
    Partition::new(blocks, n)
}

/// How the pairwise trees are combined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum MergeStrategy {
    /// Union all task outputs, then one Kruskal.
    #[default]
    Gather,
    /// Combine trees pairwise up a balanced binary tree with
    /// `T1 ⊕ T2 = MST(T1 ∪ T2)`.
    Reduce,
}

impl MergeStrategy {
    pub fn name(self) -> &'static str {
        match self {
            MergeStrategy::Gather => "gather",
            MergeStrategy::Reduce => "reduce",
        }
    }
}

impl fmt::Display for MergeStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MergeStrategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gather" => Ok(MergeStrategy::Gather),
            "reduce" => Ok(MergeStrategy::Reduce),
            _ => Err(Error::usage(format!(
                "unknown merge strategy '{s}' (expected gather or reduce)"
            ))),
        }
    }
}

/// Work and communication counters for one run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct RunStats {
    /// Distance function evaluations performed by the dense kernel.
    pub distance_evals: u64,
    /// Edges handed to merge steps: every task output under gather, both
    /// inputs of every combine node under reduce.
    pub edges_gathered: u64,
    pub tasks_executed: u64,
    pub merge_strategy: MergeStrategy,
    /// Input size of the last merge step (the gather Kruskal or the root
    /// combine node). Zero when no merge ran.
    pub final_merge_input: u64,
    pub wall_time: Duration,
}

impl RunStats {
    /// Adds the counters of `other` into `self`. Associative and
    /// commutative over the counter fields.
    pub fn absorb(&mut self, other: &RunStats) {
        self.distance_evals += other.distance_evals;
        self.edges_gathered += other.edges_gathered;
        self.tasks_executed += other.tasks_executed;
    }
}

/// Output of one pairwise task.
#[derive(Clone, Debug)]
pub struct TaskTree {
    pub blocks: (usize, usize),
    pub tree: EdgeList,
    pub stats: RunStats,
}

fn check_partition(points: &PointSet, part: &Partition) -> Result<()> {
    if part.len() != points.len() {
        return Err(Error::usage(format!(
            "partition covers {} indices but there are {} points",
            part.len(),
            points.len()
        )));
    }
    Ok(())
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    if workers == 0 {
        return Err(Error::usage("worker count must be positive"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::usage(format!("cannot start worker pool: {e}")))
}

fn run_tasks(points: &PointSet, metric: Metric, part: &Partition) -> Result<Vec<TaskTree>> {
    part.block_pairs()
        .into_par_iter()
        .map(|(i, j)| {
            let rows: Vec<usize> = part.blocks[i]
                .iter()
                .chain(&part.blocks[j])
                .copied()
                .collect();
            let mut stats = RunStats {
                tasks_executed: 1,
                ..RunStats::default()
            };
            let tree = dense_mst_rows(points, &rows, metric, &mut stats)?;
            Ok(TaskTree {
                blocks: (i, j),
                tree,
                stats,
            })
        })
        .collect()
}

/// Runs every pairwise block-union task and returns their trees in
/// lexicographic block-pair order, without merging.
pub fn pairwise_trees(
    points: &PointSet,
    metric: Metric,
    part: &Partition,
    workers: usize,
) -> Result<Vec<TaskTree>> {
    check_partition(points, part)?;
    pool(workers)?.install(|| run_tasks(points, metric, part))
}

/// Combines `trees` up a balanced binary tree. Returns the merged forest
/// and the input size of the root combine (zero for a single leaf).
fn reduce_trees(trees: &[EdgeList], n: usize, stats: &mut RunStats) -> Result<(EdgeList, u64)> {
    match trees {
        [] => Ok((EdgeList::new(Vec::new(), n), 0)),
        [one] => Ok((one.clone(), 0)),
        _ => {
            let (left, right) = trees.split_at(trees.len() / 2);
            let mut ls = RunStats::default();
            let mut rs = RunStats::default();
            let (l, r) = rayon::join(
                || reduce_trees(left, n, &mut ls),
                || reduce_trees(right, n, &mut rs),
            );
            let (l, r) = (l?.0, r?.0);
            stats.absorb(&ls);
            stats.absorb(&rs);
            let input = (l.len() + r.len()) as u64;
            stats.edges_gathered += input;
            let mut union = l;
            union.extend(&r);
            Ok((kruskal(&union, n)?, input))
        }
    }
}

/// Exact MSF of the complete graph on `points` via the pairwise partition
/// decomposition, using a pool of `workers` threads.
///
/// The result equals the MST computed directly over all pairs, edge for
/// edge, for every valid partition, merge strategy and worker count.
pub fn decomposed_mst(
    points: &PointSet,
    metric: Metric,
    part: &Partition,
    merge: MergeStrategy,
    workers: usize,
) -> Result<(EdgeList, RunStats)> {
    check_partition(points, part)?;
    let start = Instant::now();
    let pool = pool(workers)?;
    let n = points.id_bound();
    let mut stats = RunStats {
        merge_strategy: merge,
        ..RunStats::default()
    };

    let tree = if part.block_count() == 1 {
        let mut task = RunStats::default();
        let rows: Vec<usize> = (0..points.len()).collect();
        let tree = pool.install(|| dense_mst_rows(points, &rows, metric, &mut task))?;
        task.tasks_executed = 1;
        stats.absorb(&task);
        tree
    } else {
        let tasks = pool.install(|| run_tasks(points, metric, part))?;
        for t in &tasks {
            stats.absorb(&t.stats);
        }
        match merge {
            MergeStrategy::Gather => {
                let mut union = EdgeList::new(Vec::new(), n);
                for t in &tasks {
                    union.extend(&t.tree);
                }
                stats.edges_gathered += union.len() as u64;
                stats.final_merge_input = union.len() as u64;
                kruskal(&union, n)?
            }
            MergeStrategy::Reduce => {
                let trees: Vec<EdgeList> = tasks.into_iter().map(|t| t.tree).collect();
                let (tree, root_input) = pool.install(|| reduce_trees(&trees, n, &mut stats))?;
                stats.final_merge_input = root_input;
                tree
            }
        }
    };

    stats.wall_time = start.elapsed();
    Ok((tree, stats))
}

/// Measured kernel work relative to a single undecomposed run:
/// `distance_evals / (n(n-1)/2)`.
pub fn redundancy_factor(stats: &RunStats, n: usize) -> f64 {
    let base = (n as f64) * (n as f64 - 1.0) / 2.0;
    stats.distance_evals as f64 / base
}

/// The default block count for a worker pool: `⌈√(2·workers)⌉`, which gives
/// roughly one pairwise task per worker.
pub fn default_partitions(workers: usize) -> usize {
    ((2.0 * workers.max(1) as f64).sqrt().ceil() as usize).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Edge;

    #[test]
    fn contiguous_split() {
        let p = make_partition(7, 3, PartitionStrategy::Contiguous).unwrap();
        assert_eq!(p.blocks(), &[vec![0, 1, 2], vec![3, 4], vec![5, 6]]);
        let one = make_partition(4, 1, PartitionStrategy::Contiguous).unwrap();
        assert_eq!(one.blocks(), &[vec![0, 1, 2, 3]]);
    }

    #[test]
    fn shuffled_is_deterministic_and_valid() {
        let a = make_partition(100, 10, PartitionStrategy::Shuffled(7)).unwrap();
        let b = make_partition(100, 10, PartitionStrategy::Shuffled(7)).unwrap();
        assert_eq!(a, b);
        assert!(a.blocks().iter().all(|b| b.len() == 10));
        let c = make_partition(100, 10, PartitionStrategy::Shuffled(8)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn partition_errors() {
        assert!(make_partition(3, 0, PartitionStrategy::Contiguous).is_err());
        assert!(make_partition(3, 4, PartitionStrategy::Contiguous).is_err());
        assert!(Partition::new(vec![vec![0], vec![]], 1).is_err());
        assert!(Partition::new(vec![vec![0, 1], vec![1]], 2).is_err());
        assert!(Partition::new(vec![vec![0]], 2).is_err());
        assert!(Partition::new(vec![vec![0, 2]], 2).is_err());
        assert!(Partition::new(vec![], 0).is_err());
    }

    #[test]
    fn three_singletons_gather() {
        let p = PointSet::from_rows(&[[0.0], [1.0], [3.0]]).unwrap();
        let part = Partition::new(vec![vec![0], vec![1], vec![2]], 3).unwrap();
        let (t, s) =
            decomposed_mst(&p, Metric::Euclidean, &part, MergeStrategy::Gather, 2).unwrap();
        assert_eq!(t.edges, vec![Edge::new(0, 1, 1.0), Edge::new(1, 2, 2.0)]);
        assert_eq!(s.tasks_executed, 3);
        assert_eq!(s.edges_gathered, 3);
        assert_eq!(s.distance_evals, 3);
    }

    #[test]
    fn single_block_delegates() {
        let p = PointSet::from_rows(&[[0.0], [1.0], [3.0], [7.0]]).unwrap();
        let part = make_partition(4, 1, PartitionStrategy::Contiguous).unwrap();
        for merge in [MergeStrategy::Gather, MergeStrategy::Reduce] {
            let (t, s) = decomposed_mst(&p, Metric::Euclidean, &part, merge, 1).unwrap();
            assert_eq!(t.len(), 3);
            assert_eq!(s.tasks_executed, 1);
            assert_eq!(s.edges_gathered, 0);
            assert_eq!(redundancy_factor(&s, 4), 1.0);
        }
    }

    #[test]
    fn two_blocks_is_one_full_task() {
        let rows: Vec<[f64; 1]> = (0..100).map(|i| [(i * i) as f64]).collect();
        let p = PointSet::from_rows(&rows).unwrap();
        let part = make_partition(100, 2, PartitionStrategy::Contiguous).unwrap();
        let (_, s) =
            decomposed_mst(&p, Metric::Euclidean, &part, MergeStrategy::Gather, 1).unwrap();
        assert_eq!(s.tasks_executed, 1);
        assert_eq!(redundancy_factor(&s, 100), 1.0);
    }

    #[test]
    fn mismatched_partition_and_workers() {
        let p = PointSet::from_rows(&[[0.0], [1.0]]).unwrap();
        let part = make_partition(3, 1, PartitionStrategy::Contiguous).unwrap();
        assert!(decomposed_mst(&p, Metric::Euclidean, &part, MergeStrategy::Gather, 1).is_err());
        let part = make_partition(2, 1, PartitionStrategy::Contiguous).unwrap();
        assert!(decomposed_mst(&p, Metric::Euclidean, &part, MergeStrategy::Gather, 0).is_err());
    }

    #[test]
    fn kernel_errors_propagate() {
        let p = PointSet::from_rows(&[[1.0], [0.0], [2.0]]).unwrap();
        let part = make_partition(3, 3, PartitionStrategy::Contiguous).unwrap();
        let r = decomposed_mst(&p, Metric::CosineDistance, &part, MergeStrategy::Reduce, 2);
        assert!(matches!(r, Err(Error::Domain(_))));
    }

    #[test]
    fn default_partition_heuristic() {
        assert_eq!(default_partitions(1), 2);
        assert_eq!(default_partitions(8), 4);
        assert_eq!(default_partitions(28), 8);
    }

    #[test]
    fn merge_strategy_names() {
        assert_eq!(
            "reduce".parse::<MergeStrategy>().unwrap(),
            MergeStrategy::Reduce
        );
        assert!("scatter".parse::<MergeStrategy>().is_err());
    }
}
