//! Friendship structure on an n-partite graph with equal part sizes:
//! tensorization to a 0/1 multimatrix, the pairwise Hall condition, and
//! decomposition into k disjoint n-cliques.

use crate::det::find_nonzero_monomial;
use crate::error::{Error, Result};
use crate::graph::PartitionedGraph;
use crate::matrix::BinaryMultimatrix;
use crate::shape::Shape;

/// k disjoint n-sets, one vertex per part, all pairs adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// sets[q] lists one vertex per part, in part order
    pub sets: Vec<Vec<usize>>,
}

/// A failed Hall check: subset of one part whose joint neighborhood in
/// another part is smaller than the subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallWitness {
    /// 1-based part number the subset is drawn from.
    pub from_part: usize,
    /// 1-based part number with the deficient neighborhood.
    pub to_part: usize,
    pub subset: Vec<usize>,
    pub neighborhood: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HallReport {
    pub holds: bool,
    pub witness: Option<HallWitness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FriendshipVerdict {
    /// Hall condition and decomposability agree on this instance.
    Consistent,
    /// Hall condition holds but no decomposition exists.
    SufficiencyViolated,
    /// A decomposition exists despite a Hall violation.
    NecessityViolated,
}

impl FriendshipVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            FriendshipVerdict::Consistent => "consistent",
            FriendshipVerdict::SufficiencyViolated => "sufficiency-violated",
            FriendshipVerdict::NecessityViolated => "necessity-violated",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FriendshipReport {
    pub hall: HallReport,
    pub decomposition: Option<Decomposition>,
    pub verdict: FriendshipVerdict,
}

fn friendship_shape(g: &PartitionedGraph) -> Result<Shape> {
    let n = g.part_count();
    let k = g.parts()[0].len();
    if let Some(bad) = g.parts().iter().position(|p| p.len() != k) {
        return Err(Error::input(format!(
            "parts must have equal sizes: part 1 has {k}, part {} has {}",
            bad + 1,
            g.parts()[bad].len()
        )));
    }
    if let Some((u, v)) = g.intra_part_edge() {
        return Err(Error::input(format!(
            "edge ({u},{v}) joins two vertices of part {}",
            g.part_of(u) + 1
        )));
    }
    Shape::new(n, k)
}

/// 0/1 multimatrix whose cell (i₁,…,iₙ) is 1 exactly when the i-th
/// vertices of the parts are pairwise adjacent.
pub fn tensorize(g: &PartitionedGraph) -> Result<BinaryMultimatrix> {
    let shape = friendship_shape(g)?;
    let mut ones: Vec<Vec<usize>> = Vec::new();
    for coord in shape.coords() {
        let chosen: Vec<usize> = coord
            .indices()
            .iter()
            .enumerate()
            .map(|(p, &i)| g.parts()[p][i - 1])
            .collect();
        let clique = chosen
            .iter()
            .enumerate()
            .all(|(a, &u)| chosen[a + 1..].iter().all(|&v| g.adjacent(u, v)));
        if clique {
            ones.push(coord.indices().to_vec());
        }
    }
    BinaryMultimatrix::from_entries(shape, ones.iter().map(|v| v.as_slice()))
}

/// Pairwise Hall condition: for every ordered pair of parts (i, j) and
/// every subset S of part i, the joint neighborhood of S inside part j
/// has at least |S| vertices. Checked per pair via maximum bipartite
/// matching; the witness on failure comes from alternating reachability
/// and is an inclusion-minimal violating subset of the worst pair.
pub fn hall_condition(g: &PartitionedGraph) -> Result<HallReport> {
    let shape = friendship_shape(g)?;
    let n = shape.n();
    let k = shape.k();

    let mut worst: Option<(usize, usize, usize, Vec<Option<usize>>)> = None;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let matching = pairwise_matching(g, i, j, k);
            let size = matching.iter().filter(|m| m.is_some()).count();
            let deficiency = k - size;
            if deficiency > 0 && worst.as_ref().is_none_or(|w| deficiency > w.2) {
                worst = Some((i, j, deficiency, matching));
            }
        }
    }

    let Some((i, j, _, match_of_right)) = worst else {
        return Ok(HallReport {
            holds: true,
            witness: None,
        });
    };

    // invert: which left vertex is matched where
    let mut match_of_left: Vec<Option<usize>> = vec![None; k];
    for (b, m) in match_of_right.iter().enumerate() {
        if let Some(a) = *m {
            match_of_left[a] = Some(b);
        }
    }
    let exposed = match_of_left
        .iter()
        .position(|m| m.is_none())
        .expect("deficient matching leaves a vertex exposed");

    // alternating reachability from the least exposed left vertex
    let mut left_reached = vec![false; k];
    let mut right_reached = vec![false; k];
    left_reached[exposed] = true;
    let mut frontier = vec![exposed];
    while let Some(a) = frontier.pop() {
        for b in 0..k {
            if right_reached[b] || !g.adjacent(g.parts()[i][a], g.parts()[j][b]) {
                continue;
            }
            right_reached[b] = true;
            if let Some(a2) = match_of_right[b] {
                if !left_reached[a2] {
                    left_reached[a2] = true;
                    frontier.push(a2);
                }
            }
        }
    }
    let subset: Vec<usize> = (0..k)
        .filter(|&a| left_reached[a])
        .map(|a| g.parts()[i][a])
        .collect();
    let neighborhood: Vec<usize> = (0..k)
        .filter(|&b| right_reached[b])
        .map(|b| g.parts()[j][b])
        .collect();
    debug_assert_eq!(neighborhood.len() + 1, subset.len());
    Ok(HallReport {
        holds: false,
        witness: Some(HallWitness {
            from_part: i + 1,
            to_part: j + 1,
            subset,
            neighborhood,
        }),
    })
}

/// Maximum matching between part i positions and part j positions by
/// augmenting paths; returns, per right position, the matched left one.
fn pairwise_matching(g: &PartitionedGraph, i: usize, j: usize, k: usize) -> Vec<Option<usize>> {
    let mut match_of_right: Vec<Option<usize>> = vec![None; k];
    for a in 0..k {
        let mut seen = vec![false; k];
        try_augment(g, i, j, k, a, &mut seen, &mut match_of_right);
    }
    match_of_right
}

fn try_augment(
    g: &PartitionedGraph,
    i: usize,
    j: usize,
    k: usize,
    a: usize,
    seen: &mut Vec<bool>,
    match_of_right: &mut Vec<Option<usize>>,
) -> bool {
    for b in 0..k {
        if seen[b] || !g.adjacent(g.parts()[i][a], g.parts()[j][b]) {
            continue;
        }
        seen[b] = true;
        let free = match match_of_right[b] {
            None => true,
            Some(a2) => try_augment(g, i, j, k, a2, seen, match_of_right),
        };
        if free {
            match_of_right[b] = Some(a);
            return true;
        }
    }
    false
}

/// Partition into k disjoint n-cliques, one vertex per part per clique,
/// or `None` when no such partition exists. Exact: driven by the
/// complete monomial search on the tensorized instance.
pub fn clique_decomposition(g: &PartitionedGraph) -> Result<Option<Decomposition>> {
    let m = tensorize(g)?;
    let shape = m.shape();
    let Some(tuple) = find_nonzero_monomial(&m) else {
        return Ok(None);
    };
    let mut sets = Vec::with_capacity(shape.k());
    for j in 1..=shape.k() {
        let mut set = Vec::with_capacity(shape.n());
        set.push(g.parts()[0][j - 1]);
        for (axis, p) in tuple.perms().iter().enumerate() {
            set.push(g.parts()[axis + 1][p.apply(j) - 1]);
        }
        sets.push(set);
    }
    let decomposition = Decomposition { sets };
    debug_assert!(verify_decomposition(g, &decomposition).is_ok());
    Ok(Some(decomposition))
}

/// Independent validity check: one vertex per part per set, every
/// vertex covered exactly once, all pairs inside a set adjacent.
pub fn verify_decomposition(g: &PartitionedGraph, d: &Decomposition) -> Result<()> {
    let n = g.part_count();
    let k = g.parts()[0].len();
    if d.sets.len() != k {
        return Err(Error::input(format!(
            "decomposition has {} sets, expected {k}",
            d.sets.len()
        )));
    }
    let mut used = vec![false; g.vertex_count() + 1];
    for set in &d.sets {
        if set.len() != n {
            return Err(Error::input(format!(
                "set has {} vertices, expected one per part ({n})",
                set.len()
            )));
        }
        for (p, &v) in set.iter().enumerate() {
            if v < 1 || v > g.vertex_count() {
                return Err(Error::input(format!("vertex {v} out of range")));
            }
            if g.part_of(v) != p {
                return Err(Error::input(format!("vertex {v} is not in part {}", p + 1)));
            }
            if used[v] {
                return Err(Error::input(format!("vertex {v} used twice")));
            }
            used[v] = true;
        }
        for (a, &u) in set.iter().enumerate() {
            for &v in &set[a + 1..] {
                if !g.adjacent(u, v) {
                    return Err(Error::input(format!(
                        "vertices {u} and {v} in one set are not adjacent"
                    )));
                }
            }
        }
    }
    // n·k distinct vertices over k sets of n: everything is covered
    Ok(())
}

/// Runs both sides of the friendship equivalence and labels the outcome.
pub fn check_friendship(g: &PartitionedGraph) -> Result<FriendshipReport> {
    let hall = hall_condition(g)?;
    let decomposition = clique_decomposition(g)?;
    let verdict = match (hall.holds, decomposition.is_some()) {
        (true, false) => FriendshipVerdict::SufficiencyViolated,
        (false, true) => FriendshipVerdict::NecessityViolated,
        _ => FriendshipVerdict::Consistent,
    };
    Ok(FriendshipReport {
        hall,
        decomposition,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Three parts of size 2 joined by pairwise perfect matchings that
    /// admit no triangle: a1–b1, a2–b2, a1–c2, a2–c1, b1–c1, b2–c2
    /// with a = {1,2}, b = {3,4}, c = {5,6}.
    pub(crate) fn matchings_without_triangle() -> PartitionedGraph {
        PartitionedGraph::new(
            vec![vec![1, 2], vec![3, 4], vec![5, 6]],
            [(1, 3), (2, 4), (1, 6), (2, 5), (3, 5), (4, 6)],
        )
        .unwrap()
    }

    fn complete_npartite(n: usize, k: usize) -> PartitionedGraph {
        let parts: Vec<Vec<usize>> = (0..n)
            .map(|p| (1..=k).map(|i| p * k + i).collect())
            .collect();
        let mut edges = Vec::new();
        for u in 1..=n * k {
            for v in u + 1..=n * k {
                if (u - 1) / k != (v - 1) / k {
                    edges.push((u, v));
                }
            }
        }
        PartitionedGraph::new(parts, edges).unwrap()
    }

    #[test]
    fn tensorize_complete_and_edgeless() {
        let m = tensorize(&complete_npartite(3, 2)).unwrap();
        assert_eq!(m.count_ones(), 8);
        let g = PartitionedGraph::new(vec![vec![1, 2], vec![3, 4]], []).unwrap();
        assert_eq!(tensorize(&g).unwrap().count_ones(), 0);
    }

    #[test]
    fn tensorize_reproduces_the_bipartite_association() {
        // girls {1,2}, boys {3,4}: 1 knows 3, 2 knows 3 and 4
        let g =
            PartitionedGraph::new(vec![vec![1, 2], vec![3, 4]], [(1, 3), (2, 3), (2, 4)]).unwrap();
        let m = tensorize(&g).unwrap();
        let s = m.shape();
        assert!(m.get(&s.coord(&[1, 1]).unwrap()));
        assert!(!m.get(&s.coord(&[1, 2]).unwrap()));
        assert!(m.get(&s.coord(&[2, 1]).unwrap()));
        assert!(m.get(&s.coord(&[2, 2]).unwrap()));
    }

    #[test]
    fn tensorize_rejects_bad_inputs() {
        let unequal = PartitionedGraph::new(vec![vec![1, 2], vec![3]], []).unwrap();
        assert!(tensorize(&unequal).is_err());
        let intra = PartitionedGraph::new(vec![vec![1, 2], vec![3, 4]], [(1, 2)]).unwrap();
        let err = tensorize(&intra).unwrap_err();
        assert!(err.to_string().contains("(1,2)"));
    }

    #[test]
    fn hall_holds_on_pairwise_matchings() {
        let report = hall_condition(&matchings_without_triangle()).unwrap();
        assert!(report.holds);
    }

    #[test]
    fn hall_witness_follows_alternating_reachability() {
        // both vertices of part 1 know only vertex 3
        let g = PartitionedGraph::new(vec![vec![1, 2], vec![3, 4]], [(1, 3), (2, 3)]).unwrap();
        let report = hall_condition(&g).unwrap();
        assert!(!report.holds);
        let w = report.witness.unwrap();
        assert_eq!((w.from_part, w.to_part), (1, 2));
        assert_eq!(w.subset, vec![1, 2]);
        assert_eq!(w.neighborhood, vec![3]);
        // minimal: each single vertex still has one neighbor
    }

    #[test]
    fn hall_witness_is_a_single_vertex_when_one_is_isolated_everywhere() {
        let g = PartitionedGraph::new(vec![vec![1, 2], vec![3, 4]], [(1, 3)]).unwrap();
        let report = hall_condition(&g).unwrap();
        let w = report.witness.unwrap();
        assert_eq!(w.subset, vec![2]);
        assert!(w.neighborhood.is_empty());
    }

    #[test]
    fn decomposition_of_complete_tripartite() {
        let g = complete_npartite(3, 2);
        let d = clique_decomposition(&g).unwrap().unwrap();
        verify_decomposition(&g, &d).unwrap();
        assert_eq!(d.sets.len(), 2);
    }

    #[test]
    fn no_decomposition_without_triangles() {
        let g = matchings_without_triangle();
        // no triangle exists at all: check all 8 transversal triples
        for &a in &[1, 2] {
            for &b in &[3, 4] {
                for &c in &[5, 6] {
                    assert!(
                        !(g.adjacent(a, b) && g.adjacent(a, c) && g.adjacent(b, c)),
                        "unexpected triangle {a},{b},{c}"
                    );
                }
            }
        }
        assert!(clique_decomposition(&g).unwrap().is_none());
    }

    #[test]
    fn bipartite_decomposition_is_a_perfect_matching() {
        let g = PartitionedGraph::new(vec![vec![1, 2], vec![3, 4]], [(1, 4), (2, 3)]).unwrap();
        let d = clique_decomposition(&g).unwrap().unwrap();
        verify_decomposition(&g, &d).unwrap();
        assert_eq!(d.sets, vec![vec![1, 4], vec![2, 3]]);
    }

    #[test]
    fn verdicts() {
        let r = check_friendship(&matchings_without_triangle()).unwrap();
        assert!(r.hall.holds);
        assert!(r.decomposition.is_none());
        assert_eq!(r.verdict, FriendshipVerdict::SufficiencyViolated);

        let r = check_friendship(&complete_npartite(3, 2)).unwrap();
        assert_eq!(r.verdict, FriendshipVerdict::Consistent);

        let r = check_friendship(&complete_npartite(2, 3)).unwrap();
        assert_eq!(r.verdict, FriendshipVerdict::Consistent);
    }
}
