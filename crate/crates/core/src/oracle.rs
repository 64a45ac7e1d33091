//! Reference solvers by plain enumeration. These exist to anchor the
//! branch-and-bound and backtracking implementations: they share no
//! code with them and favor obviousness over speed. Sizes are expected
//! to be tiny.

use itertools::Itertools;

use crate::graph::PartitionedGraph;
use crate::line::{cells_on_rplane, rplanes_of, same_rplane};
use crate::matrix::BinaryMultimatrix;
use crate::shape::Coord;

/// Classical determinant of a square integer matrix by Laplace
/// expansion along the first row.
pub fn leibniz_determinant(rows: &[Vec<i64>]) -> i64 {
    let n = rows.len();
    if n == 0 {
        return 1;
    }
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 1 {
        return rows[0][0];
    }
    let mut total = 0;
    for (col, &head) in rows[0].iter().enumerate() {
        if head == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = rows[1..]
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let sign = if col % 2 == 0 { 1 } else { -1 };
        total += sign * head * leibniz_determinant(&minor);
    }
    total
}

/// Minimum r-plane cover size by trying plane subsets in increasing
/// size.
pub fn min_cover_size_brute(m: &BinaryMultimatrix, r: usize) -> usize {
    let shape = m.shape();
    let ones: Vec<Coord> = m.ones().collect();
    if ones.is_empty() {
        return 0;
    }
    let planes = rplanes_of(shape, r).unwrap();
    let plane_cells: Vec<Vec<Coord>> = planes
        .iter()
        .map(|p| cells_on_rplane(shape, p).unwrap())
        .collect();
    for size in 1..=planes.len() {
        for subset in (0..planes.len()).combinations(size) {
            let covered = ones
                .iter()
                .all(|one| subset.iter().any(|&p| plane_cells[p].contains(one)));
            if covered {
                return size;
            }
        }
    }
    unreachable!("all planes together cover every cell")
}

/// Maximum plane-independent set of 1s by trying every subset of the
/// 1-cells.
pub fn max_matching_size_brute(m: &BinaryMultimatrix, r: usize) -> usize {
    let shape = m.shape();
    let ones: Vec<Coord> = m.ones().collect();
    assert!(ones.len() <= 20, "oracle subsets explode past 20 ones");
    let mut best = 0;
    for mask in 0u32..1 << ones.len() {
        let chosen: Vec<&Coord> = ones
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, c)| c)
            .collect();
        let independent = chosen.iter().enumerate().all(|(a, p)| {
            chosen[a + 1..]
                .iter()
                .all(|q| !same_rplane(shape, r, p, q).unwrap())
        });
        if independent {
            best = best.max(chosen.len());
        }
    }
    best
}

/// Whether the bipartite adjacency matrix (rows know columns) has a
/// perfect matching, by trying all column permutations.
pub fn perfect_matching_exists_brute(adj: &[Vec<bool>]) -> bool {
    let k = adj.len();
    if k == 0 {
        return true;
    }
    assert!(adj.iter().all(|row| row.len() == k));
    (0..k)
        .permutations(k)
        .any(|cols| cols.iter().enumerate().all(|(row, &col)| adj[row][col]))
}

/// The pairwise Hall condition by checking every subset of every
/// ordered part pair.
pub fn hall_condition_brute(g: &PartitionedGraph) -> bool {
    let n = g.part_count();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let a = &g.parts()[i];
            let b = &g.parts()[j];
            assert!(a.len() <= 20);
            for mask in 1u32..1 << a.len() {
                let subset: Vec<usize> = a
                    .iter()
                    .enumerate()
                    .filter(|(idx, _)| mask >> idx & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect();
                let neighborhood = b
                    .iter()
                    .filter(|&&w| subset.iter().any(|&v| g.adjacent(v, w)))
                    .count();
                if neighborhood < subset.len() {
                    return false;
                }
            }
        }
    }
    true
}

/// Whether k disjoint transversal n-cliques exist, by enumerating the
/// alignments of parts 2..n against part 1 directly on the graph.
pub fn decomposition_exists_brute(g: &PartitionedGraph) -> bool {
    let n = g.part_count();
    let k = g.parts()[0].len();
    assert!(g.parts().iter().all(|p| p.len() == k));
    let alignments: Vec<Vec<Vec<usize>>> = (1..n)
        .map(|_| (0..k).permutations(k).collect::<Vec<_>>())
        .collect();
    alignments
        .into_iter()
        .multi_cartesian_product()
        .any(|choice| {
            (0..k).all(|q| {
                let mut members = vec![g.parts()[0][q]];
                for (axis, perm) in choice.iter().enumerate() {
                    members.push(g.parts()[axis + 1][perm[q]]);
                }
                members
                    .iter()
                    .enumerate()
                    .all(|(a, &u)| members[a + 1..].iter().all(|&v| g.adjacent(u, v)))
            })
        })
}
