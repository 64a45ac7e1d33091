//! Seeded random instance generation. One ChaCha stream per instance
//! index keeps scans parallelizable and byte-reproducible.

use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::PartitionedGraph;
use crate::matrix::{BinaryMultimatrix, CostMultimatrix};
use crate::shape::Shape;

/// RNG for instance `stream` of a seeded run.
pub fn instance_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn check_density(density: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::input(format!("density {density} not in [0, 1]")));
    }
    Ok(())
}

/// Each cell is 1 with probability `density`, drawn in dense order.
pub fn random_multimatrix(shape: Shape, density: f64, rng: &mut impl Rng) -> BinaryMultimatrix {
    let cells = (0..shape.cell_count())
        .map(|_| rng.random_bool(density))
        .collect();
    BinaryMultimatrix::from_dense(shape, cells).expect("dense data sized by shape")
}

/// Uniform integer costs in `lo..=hi`, drawn in dense order.
pub fn random_cost_multimatrix(
    shape: Shape,
    lo: i64,
    hi: i64,
    rng: &mut impl Rng,
) -> Result<CostMultimatrix> {
    if lo > hi {
        return Err(Error::input(format!("cost range {lo}..={hi} is empty")));
    }
    let values = (0..shape.cell_count())
        .map(|_| BigRational::from_integer(rng.random_range(lo..=hi).into()))
        .collect();
    CostMultimatrix::from_dense(shape, values)
}

/// Vertices 1..total split consecutively into the given part sizes;
/// each candidate pair (ascending) becomes an edge with probability
/// `density`. Intra-part pairs are only candidates when requested.
pub fn random_partitioned_graph(
    part_sizes: &[usize],
    density: f64,
    include_intra: bool,
    rng: &mut impl Rng,
) -> Result<PartitionedGraph> {
    check_density(density)?;
    if part_sizes.is_empty() {
        return Err(Error::input("graph needs at least one part".to_string()));
    }
    let total: usize = part_sizes.iter().sum();
    let mut parts = Vec::with_capacity(part_sizes.len());
    let mut next = 1;
    for &size in part_sizes {
        parts.push((next..next + size).collect::<Vec<usize>>());
        next += size;
    }
    let part_of = |v: usize| parts.iter().position(|p| p.contains(&v)).unwrap();
    let mut edges = Vec::new();
    for u in 1..=total {
        for v in u + 1..=total {
            if !include_intra && part_of(u) == part_of(v) {
                continue;
            }
            if rng.random_bool(density) {
                edges.push((u, v));
            }
        }
    }
    PartitionedGraph::new(parts, edges)
}
