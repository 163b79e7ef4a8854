#![allow(dead_code)]

use demst::instance::{
    clustered_instance, generate_instance, portable_rng, unit_f64, Distribution,
};
use demst::{Metric, Partition, PointSet};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Point families used across the suites. `Grid` snaps coordinates to a
/// handful of integers so that equal weights are everywhere.
#[derive(Clone, Copy, Debug)]
pub enum Family {
    Uniform,
    Gaussian,
    Clustered,
    Grid,
}

pub const FAMILIES: [Family; 4] = [
    Family::Uniform,
    Family::Gaussian,
    Family::Clustered,
    Family::Grid,
];

pub fn instance(seed: u64, n: usize, d: usize, family: Family) -> PointSet {
    match family {
        Family::Uniform => generate_instance(seed, n, d, Distribution::UniformCube).unwrap(),
        Family::Gaussian => generate_instance(seed, n, d, Distribution::Gaussian).unwrap(),
        Family::Clustered => clustered_instance(seed, n, d, 3).unwrap().0,
        Family::Grid => {
            // Values in 1..=4 so cosine distance never sees a zero vector.
            let mut rng = portable_rng(seed);
            let coords = (0..n * d)
                .map(|_| 1.0 + (unit_f64(&mut rng) * 4.0).floor())
                .collect();
            PointSet::new(d, coords).unwrap()
        }
    }
}

/// Random partition with arbitrary (uneven) block sizes.
pub fn random_partition(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Partition {
    let mut order: Vec<usize> = (0..n).collect();
    rand::seq::SliceRandom::shuffle(order.as_mut_slice(), rng);
    let mut cuts: Vec<usize> = rand::seq::index::sample(rng, n - 1, k - 1)
        .into_iter()
        .map(|c| c + 1)
        .collect();
    cuts.sort_unstable();
    let mut blocks = Vec::new();
    let mut start = 0;
    for c in cuts.into_iter().chain(std::iter::once(n)) {
        blocks.push(order[start..c].to_vec());
        start = c;
    }
    Partition::new(blocks, n).unwrap()
}

/// Distance evaluations the kernel must perform over a partition:
/// every block-pair task costs m(m-1)/2 with m = |S_i| + |S_j|.
pub fn expected_evals(part: &Partition) -> u64 {
    let sizes: Vec<u64> = part.blocks().iter().map(|b| b.len() as u64).collect();
    if sizes.len() == 1 {
        return sizes[0] * sizes[0].saturating_sub(1) / 2;
    }
    let mut total = 0;
    for i in 0..sizes.len() {
        for j in i + 1..sizes.len() {
            let m = sizes[i] + sizes[j];
            total += m * (m - 1) / 2;
        }
    }
    total
}

/// Edges a gather merge receives: one tree of m-1 edges per task.
pub fn expected_gathered(part: &Partition) -> u64 {
    let sizes: Vec<u64> = part.blocks().iter().map(|b| b.len() as u64).collect();
    let mut total = 0;
    for i in 0..sizes.len() {
        for j in i + 1..sizes.len() {
            total += sizes[i] + sizes[j] - 1;
        }
    }
    total
}

/// Naive single-linkage agglomeration on the full distance matrix,
/// independent of any MST code. Returns (height, merged rows a, b) per step.
pub struct NaiveLinkage {
    pub n: usize,
    pub merges: Vec<(f64, usize, usize)>,
}

impl NaiveLinkage {
    pub fn new(points: &PointSet, metric: Metric) -> Self {
        let n = points.len();
        let mut dist = vec![f64::INFINITY; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let w = metric_value(metric, points.row(i), points.row(j));
                dist[i * n + j] = w;
                dist[j * n + i] = w;
            }
        }
        let mut active: Vec<bool> = vec![true; n];
        let mut merges = Vec::with_capacity(n.saturating_sub(1));
        for _ in 1..n {
            let mut best = (f64::INFINITY, 0, 0);
            for i in 0..n {
                if !active[i] {
                    continue;
                }
                for j in i + 1..n {
                    if active[j] && dist[i * n + j] < best.0 {
                        best = (dist[i * n + j], i, j);
                    }
                }
            }
            let (h, a, b) = best;
            merges.push((h, a, b));
            active[b] = false;
            for x in 0..n {
                let m = dist[a * n + x].min(dist[b * n + x]);
                dist[a * n + x] = m;
                dist[x * n + a] = m;
            }
            dist[a * n + a] = f64::INFINITY;
        }
        NaiveLinkage { n, merges }
    }

    pub fn heights(&self) -> Vec<f64> {
        self.merges.iter().map(|m| m.0).collect()
    }

    /// Partition after applying every merge with height <= h, labelled by
    /// first appearance.
    pub fn cut(&self, h: f64) -> Vec<usize> {
        let mut label: Vec<usize> = (0..self.n).collect();
        for &(height, a, b) in &self.merges {
            if height <= h {
                let (from, to) = (label[b], label[a]);
                for l in label.iter_mut() {
                    if *l == from {
                        *l = to;
                    }
                }
            }
        }
        demst::dendrogram::canonical_labels(label)
    }
}

/// Metric evaluated straight from its definition.
pub fn metric_value(metric: Metric, a: &[f64], b: &[f64]) -> f64 {
    let mut evals = 0;
    demst::distance(metric, a, b, &mut evals).unwrap()
}

pub fn random_dims(rng: &mut ChaCha8Rng) -> usize {
    [1, 2, 8, 64][rng.gen_range(0..4)]
}
