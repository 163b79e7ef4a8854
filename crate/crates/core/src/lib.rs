//! Exact minimum spanning trees of complete graphs over vector sets.
//!
//! The vertices are split into `k` blocks; the MST of every union of two
//! blocks is computed by a dense all-pairs kernel, and a sparse Kruskal over
//! the union of those trees yields the MST of the full graph. Work and
//! communication are counted in [`RunStats`].
//!
//! ```
//! use demst::{decomposed_mst, make_partition, MergeStrategy, Metric, PartitionStrategy, PointSet};
//!
//! let points = PointSet::from_rows(&[[0.0], [1.0], [3.0], [6.0]]).unwrap();
//! let part = make_partition(points.len(), 2, PartitionStrategy::Contiguous).unwrap();
//! let (tree, stats) =
//!     decomposed_mst(&points, Metric::Euclidean, &part, MergeStrategy::Gather, 2).unwrap();
//! assert_eq!(tree.pairs(), vec![(0, 1), (1, 2), (2, 3)]);
//! assert_eq!(stats.tasks_executed, 1);
//! ```
//!
//! The guide in `book/` walks through each piece; its code listings are
//! compiled and run as doc-tests of this crate.

pub mod cli;
pub mod decompose;
pub mod dendrogram;
pub mod dense;
pub mod error;
pub mod geometry;
pub mod graph;
pub mod instance;
pub mod io;
pub mod oracle;

pub use decompose::{
    decomposed_mst, make_partition, pairwise_trees, redundancy_factor, MergeStrategy, Partition,
    PartitionStrategy, RunStats,
};
pub use dendrogram::{mst_to_dendrogram, Dendrogram, MergeStep};
pub use dense::dense_mst;
pub use error::{Error, Result};
pub use geometry::{distance, Metric, PointSet};
pub use graph::{edge_order, kruskal, Edge, EdgeList, UnionFind};
pub use oracle::{check_substructure, induced_mst, oracle_mst};

// Every chapter of the guide is checked by `cargo test --doc`.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/distances.md")]
    mod distances {}
    #[doc = include_str!("../../../book/src/dense_kernel.md")]
    mod dense_kernel {}
    #[doc = include_str!("../../../book/src/decomposition.md")]
    mod decomposition {}
    #[doc = include_str!("../../../book/src/cost_model.md")]
    mod cost_model {}
    #[doc = include_str!("../../../book/src/dendrograms.md")]
    mod dendrograms {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
