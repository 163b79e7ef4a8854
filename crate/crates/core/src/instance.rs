//! Seeded test and benchmark data.
//!
//! All generators draw from ChaCha8 keyed with the seed's 8 little-endian
//! bytes followed by 24 zero bytes (`ChaCha8Rng::from_seed`). A uniform
//! coordinate is `(next_u64() >> 11) · 2⁻⁵³`, in `[0, 1)`, drawn row by row.
//! That recipe is all another implementation needs to reproduce the
//! uniform-cube point sets used by `demst bench`.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::geometry::PointSet;

/// Spacing between blob centres in units of the blob radius.
pub const CLUSTER_SEPARATION: f64 = 100.0;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distribution {
    /// Uniform in `[0, 1)^d`.
    UniformCube,
    /// Standard normal coordinates.
    Gaussian,
    /// `c` Gaussian blobs of radius ~1 with centres at least
    /// [`CLUSTER_SEPARATION`] apart.
    Clustered(usize),
}

/// The portable generator described in the module docs.
pub fn portable_rng(seed: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

#[inline]
pub fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

pub fn generate_instance(seed: u64, n: usize, d: usize, dist: Distribution) -> Result<PointSet> {
    if d == 0 {
        return Err(Error::usage("dimension must be positive"));
    }
    let mut rng = portable_rng(seed);
    match dist {
        Distribution::UniformCube => {
            let coords = (0..n * d).map(|_| unit_f64(&mut rng)).collect();
            PointSet::new(d, coords)
        }
        Distribution::Gaussian => {
            let coords = (0..n * d).map(|_| rng.sample(StandardNormal)).collect();
            PointSet::new(d, coords)
        }
        Distribution::Clustered(c) => clustered_instance(seed, n, d, c).map(|(p, _)| p),
    }
}

/// Blob data together with the blob label of every point. Point `i`
/// belongs to blob `i % c`.
pub fn clustered_instance(
    seed: u64,
    n: usize,
    d: usize,
    c: usize,
) -> Result<(PointSet, Vec<usize>)> {
    if d == 0 || c == 0 {
        return Err(Error::usage("clustered instances need d > 0 and c > 0"));
    }
    let mut rng = portable_rng(seed);
    let sep = CLUSTER_SEPARATION;
    // Centre b sits at b·sep on axis 0; the other axes are jittered inside
    // one spacing, which keeps every pair of centres at least sep apart.
    let centres: Vec<Vec<f64>> = (0..c)
        .map(|b| {
            (0..d)
                .map(|axis| {
                    if axis == 0 {
                        b as f64 * sep
                    } else {
                        unit_f64(&mut rng) * sep
                    }
                })
                .collect()
        })
        .collect();
    let sigma = 1.0 / (3.0 * (d as f64).sqrt());
    let mut coords = Vec::with_capacity(n * d);
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let b = i % c;
        labels.push(b);
        for centre in &centres[b] {
            let z: f64 = rng.sample(StandardNormal);
            coords.push(centre + sigma * z);
        }
    }
    Ok((PointSet::new(d, coords)?, labels))
}
