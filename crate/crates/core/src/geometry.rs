//! Vector storage and the symmetric distance functions that weight the
//! edges of the implicit complete graph.
//!
//! Every shipped metric is evaluated by a commutative formula, so
//! `d(a, b)` and `d(b, a)` are bit-identical. Callers that walk pairs
//! still pass the lower global id first.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// An immutable `count × dim` matrix of finite coordinates, one row per
/// vertex, together with the global vertex id of every row.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    dim: usize,
    coords: Vec<f64>,
    ids: Vec<usize>,
}

impl PointSet {
    /// Builds a point set from row-major coordinates. Ids default to `0..n`.
    pub fn new(dim: usize, coords: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::usage("point dimension must be positive"));
        }
        if !coords.len().is_multiple_of(dim) {
            return Err(Error::usage(format!(
                "coordinate buffer of length {} is not a multiple of dimension {dim}",
                coords.len()
            )));
        }
        let count = coords.len() / dim;
        Self::with_ids(dim, coords, (0..count).collect())
    }

    /// Builds a point set with explicit global ids, which must be distinct.
    pub fn with_ids(dim: usize, coords: Vec<f64>, ids: Vec<usize>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::usage("point dimension must be positive"));
        }
        if coords.len() != ids.len() * dim {
            return Err(Error::usage(format!(
                "expected {} coordinates for {} points of dimension {dim}, got {}",
                ids.len() * dim,
                ids.len(),
                coords.len()
            )));
        }
        if let Some(pos) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::ingest(format!(
                "non-finite coordinate in row {} (column {})",
                pos / dim,
                pos % dim
            )));
        }
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::usage(format!("duplicate vertex id {}", w[0])));
        }
        Ok(PointSet { dim, coords, ids })
    }

    /// Convenience constructor from a slice of rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.first().map_or(1, |r| r.as_ref().len());
        let mut coords = Vec::with_capacity(rows.len() * dim);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != dim {
                return Err(Error::usage(format!(
                    "row {i} has {} columns, expected {dim}",
                    r.len()
                )));
            }
            coords.extend_from_slice(r);
        }
        Self::new(dim, coords)
    }

    /// An empty set of the given dimension.
    pub fn empty(dim: usize) -> Result<Self> {
        Self::new(dim, Vec::new())
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    /// Coordinates of row `row`.
    #[inline]
    pub fn row(&self, row: usize) -> &[f64] {
        &self.coords[row * self.dim..(row + 1) * self.dim]
    }

    /// Global id of row `row`.
    #[inline]
    pub fn id(&self, row: usize) -> usize {
        self.ids[row]
    }

    /// One past the largest global id; the size of the vertex space that
    /// edges over this set live in.
    pub fn id_bound(&self) -> usize {
        self.ids.iter().max().map_or(0, |m| m + 1)
    }

    /// Returns a copy with every point shifted by `offset`.
    pub fn translated(&self, offset: &[f64]) -> Result<Self> {
        if offset.len() != self.dim {
            return Err(Error::usage("offset dimension mismatch"));
        }
        let coords = self
            .coords
            .chunks_exact(self.dim)
            .flat_map(|r| r.iter().zip(offset).map(|(a, b)| a + b))
            .collect();
        Self::with_ids(self.dim, coords, self.ids.clone())
    }
}

/// The distance function defining edge weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    Euclidean,
    SquaredEuclidean,
    Manhattan,
    Chebyshev,
    CosineDistance,
}

impl Metric {
    pub const ALL: [Metric; 5] = [
        Metric::Euclidean,
        Metric::SquaredEuclidean,
        Metric::Manhattan,
        Metric::Chebyshev,
        Metric::CosineDistance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Euclidean => "euclidean",
            Metric::SquaredEuclidean => "squared_euclidean",
            Metric::Manhattan => "manhattan",
            Metric::Chebyshev => "chebyshev",
            Metric::CosineDistance => "cosine_distance",
        }
    }

    /// Evaluates the metric without touching any counter. Dimensions must
    /// already agree.
    #[inline]
    pub(crate) fn eval(self, a: &[f64], b: &[f64]) -> Result<f64> {
        debug_assert_eq!(a.len(), b.len());
        let d = match self {
            Metric::Euclidean => squared_l2(a, b).sqrt(),
            Metric::SquaredEuclidean => squared_l2(a, b),
            Metric::Manhattan => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
            Metric::Chebyshev => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max),
            Metric::CosineDistance => cosine_distance(a, b)?,
        };
        Ok(d)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| {
                Error::usage(format!(
                    "unknown metric '{s}' (expected one of euclidean, squared_euclidean, \
                     manhattan, chebyshev, cosine_distance)"
                ))
            })
    }
}

#[inline]
fn squared_l2(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let t = x - y;
            t * t
        })
        .sum()
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn cosine_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    let na = dot(a, a);
    let nb = dot(b, b);
    if na == 0.0 || nb == 0.0 {
        return Err(Error::domain("cosine distance of a zero-norm vector"));
    }
    // sqrt(fl(x*x)) == x, so identical vectors land on exactly 0.
    let d = 1.0 - dot(a, b) / (na * nb).sqrt();
    Ok(d.clamp(0.0, 2.0))
}

/// Evaluates `m` on `a` and `b`, bumping `evals` by one.
pub fn distance(m: Metric, a: &[f64], b: &[f64], evals: &mut u64) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::usage(format!(
            "dimension mismatch: {} vs {}",
            a.len(),
            b.len()
        )));
    }
    *evals += 1;
    m.eval(a, b)
}
