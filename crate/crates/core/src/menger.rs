//! Brute-force exact minimax quantities on partitioned graphs: maximum
//! matching vs minimum vertex cover, and all-pairs separators vs
//! vertex-disjoint path systems.
//!
//! Everything here enumerates — the instances are small and exactness
//! is the point — behind a vertex-count guard. Vertices live in u64
//! masks, which caps the brute-force core at 64 vertices regardless of
//! the guard.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::PartitionedGraph;

/// Edges no two of which share a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingResult {
    pub edges: Vec<(usize, usize)>,
}

impl MatchingResult {
    pub fn size(&self) -> usize {
        self.edges.len()
    }
}

/// Vertices that together touch every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverResult {
    pub vertices: Vec<usize>,
}

impl CoverResult {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Vertices whose removal leaves no surviving connection between
/// distinct parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorCertificate {
    pub vertices: Vec<usize>,
}

impl SeparatorCertificate {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Pairwise vertex-disjoint simple paths, each joining two distinct
/// parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSystem {
    pub paths: Vec<Vec<usize>>,
}

impl PathSystem {
    pub fn size(&self) -> usize {
        self.paths.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DualityVerdict {
    Equal,
    Gap,
}

impl DualityVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            DualityVerdict::Equal => "equal",
            DualityVerdict::Gap => "gap",
        }
    }
}

/// Matching vs cover on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverMatchingReport {
    pub matching: MatchingResult,
    pub cover: CoverResult,
    pub verdict: DualityVerdict,
}

impl CoverMatchingReport {
    pub fn gap(&self) -> usize {
        self.cover.size() - self.matching.size()
    }
}

/// Separator vs disjoint paths on one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorPathReport {
    pub separator: SeparatorCertificate,
    pub paths: PathSystem,
    pub verdict: DualityVerdict,
}

impl SeparatorPathReport {
    pub fn gap(&self) -> usize {
        self.separator.size() - self.paths.size()
    }
}

fn check_guard(g: &PartitionedGraph, guard: usize) -> Result<()> {
    let vc = g.vertex_count();
    if vc > guard {
        return Err(Error::Budget {
            what: "graph vertices",
            required: vc as u128,
            limit: guard as u128,
        });
    }
    if vc > 64 {
        return Err(Error::Budget {
            what: "graph vertices (mask width of the brute-force core)",
            required: vc as u128,
            limit: 64,
        });
    }
    Ok(())
}

fn vertex_bit(v: usize) -> u64 {
    1 << (v - 1)
}

/// Exact maximum matching by backtracking over the sorted edge list.
pub fn max_matching(g: &PartitionedGraph, guard: usize) -> Result<MatchingResult> {
    check_guard(g, guard)?;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut best: Vec<(usize, usize)> = Vec::new();
    let mut current: Vec<(usize, usize)> = Vec::new();
    matching_search(g, &edges, 0, 0, &mut current, &mut best);
    debug_assert!(verify_matching(g, &best).is_ok());
    Ok(MatchingResult { edges: best })
}

fn matching_search(
    g: &PartitionedGraph,
    edges: &[(usize, usize)],
    idx: usize,
    used: u64,
    current: &mut Vec<(usize, usize)>,
    best: &mut Vec<(usize, usize)>,
) {
    let free = g.vertex_count() - used.count_ones() as usize;
    if current.len() + (free / 2).min(edges.len() - idx) <= best.len() {
        return;
    }
    if idx == edges.len() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    let (u, v) = edges[idx];
    if used & (vertex_bit(u) | vertex_bit(v)) == 0 {
        current.push((u, v));
        matching_search(
            g,
            edges,
            idx + 1,
            used | vertex_bit(u) | vertex_bit(v),
            current,
            best,
        );
        current.pop();
    }
    matching_search(g, edges, idx + 1, used, current, best);
}

/// Exact minimum vertex cover: subsets in increasing size, lexicographic
/// within a size, first hit wins.
pub fn min_vertex_cover(g: &PartitionedGraph, guard: usize) -> Result<CoverResult> {
    check_guard(g, guard)?;
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let vertices: Vec<usize> = (1..=g.vertex_count()).collect();
    for size in 0..=g.vertex_count() {
        for subset in vertices.iter().copied().combinations(size) {
            let mask: u64 = subset.iter().map(|&v| vertex_bit(v)).sum();
            if edges
                .iter()
                .all(|&(u, v)| mask & (vertex_bit(u) | vertex_bit(v)) != 0)
            {
                return Ok(CoverResult { vertices: subset });
            }
        }
    }
    unreachable!("the full vertex set covers everything")
}

/// Checks that the vertex set touches every edge.
pub fn verify_vertex_cover(g: &PartitionedGraph, vertices: &[usize]) -> Result<()> {
    for (u, v) in g.edges() {
        if !vertices.contains(&u) && !vertices.contains(&v) {
            return Err(Error::input(format!("edge ({u},{v}) is uncovered")));
        }
    }
    Ok(())
}

/// Checks that the edges exist and are pairwise vertex-disjoint.
pub fn verify_matching(g: &PartitionedGraph, edges: &[(usize, usize)]) -> Result<()> {
    let mut used = 0u64;
    for &(u, v) in edges {
        if !g.adjacent(u, v) {
            return Err(Error::input(format!("({u},{v}) is not an edge")));
        }
        let bits = vertex_bit(u) | vertex_bit(v);
        if used & bits != 0 {
            return Err(Error::input(format!("edge ({u},{v}) reuses a vertex")));
        }
        used |= bits;
    }
    Ok(())
}

/// Minimum cover vs maximum matching, with weak duality asserted.
pub fn check_cover_matching(g: &PartitionedGraph, guard: usize) -> Result<CoverMatchingReport> {
    let matching = max_matching(g, guard)?;
    let cover = min_vertex_cover(g, guard)?;
    assert!(
        matching.size() <= cover.size(),
        "weak duality violated: matching={} cover={}",
        matching.size(),
        cover.size()
    );
    let verdict = if matching.size() == cover.size() {
        DualityVerdict::Equal
    } else {
        DualityVerdict::Gap
    };
    Ok(CoverMatchingReport {
        matching,
        cover,
        verdict,
    })
}

/// True when, after deleting `removed`, no surviving component spans
/// two parts.
fn separated(g: &PartitionedGraph, removed: u64) -> bool {
    let vc = g.vertex_count();
    let mut visited = 0u64;
    for start in 1..=vc {
        if removed & vertex_bit(start) != 0 || visited & vertex_bit(start) != 0 {
            continue;
        }
        let part = g.part_of(start);
        let mut stack = vec![start];
        visited |= vertex_bit(start);
        while let Some(u) = stack.pop() {
            for v in 1..=vc {
                if g.adjacent(u, v) && removed & vertex_bit(v) == 0 && visited & vertex_bit(v) == 0
                {
                    if g.part_of(v) != part {
                        return false;
                    }
                    visited |= vertex_bit(v);
                    stack.push(v);
                }
            }
            // a neighbor already visited in another component is impossible;
            // within this component any cross-part neighbor was caught above
        }
    }
    true
}

/// Smallest vertex set whose removal separates all parts among the
/// survivors. Deleted vertices may come from the parts themselves.
pub fn min_all_pairs_separator(g: &PartitionedGraph, guard: usize) -> Result<SeparatorCertificate> {
    check_guard(g, guard)?;
    let vertices: Vec<usize> = (1..=g.vertex_count()).collect();
    for size in 0..=g.vertex_count() {
        for subset in vertices.iter().copied().combinations(size) {
            let mask: u64 = subset.iter().map(|&v| vertex_bit(v)).sum();
            if separated(g, mask) {
                return Ok(SeparatorCertificate { vertices: subset });
            }
        }
    }
    unreachable!("removing every vertex separates everything")
}

/// Re-checks a separator by reachability.
pub fn verify_separator(g: &PartitionedGraph, vertices: &[usize]) -> Result<()> {
    for &v in vertices {
        if v < 1 || v > g.vertex_count() {
            return Err(Error::input(format!("vertex {v} out of range")));
        }
    }
    let mask: u64 = vertices.iter().map(|&v| vertex_bit(v)).sum();
    if !separated(g, mask) {
        return Err(Error::input(
            "survivors of two parts remain connected".to_string(),
        ));
    }
    Ok(())
}

/// Maximum-cardinality system of pairwise vertex-disjoint simple paths
/// with endpoints in two distinct parts. Exact backtracking over
/// chordless candidate paths: any path in an optimal system can be
/// replaced by a shortest path within its own vertices, which is
/// chordless, so the restriction loses nothing.
pub fn max_disjoint_paths(g: &PartitionedGraph, guard: usize) -> Result<PathSystem> {
    check_guard(g, guard)?;
    let candidates = chordless_cross_paths(g);
    let mut best: Vec<usize> = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    path_search(g, &candidates, 0, 0, &mut current, &mut best);
    let paths = best
        .iter()
        .map(|&i| candidates[i].vertices.clone())
        .collect();
    let system = PathSystem { paths };
    debug_assert!(verify_path_system(g, &system).is_ok());
    Ok(system)
}

struct CandidatePath {
    vertices: Vec<usize>,
    mask: u64,
}

/// All chordless simple paths with endpoints in distinct parts,
/// oriented so the first vertex is the smaller endpoint, in
/// lexicographic sequence order.
fn chordless_cross_paths(g: &PartitionedGraph) -> Vec<CandidatePath> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut path = Vec::new();
    for start in 1..=g.vertex_count() {
        path.push(start);
        extend_chordless(g, &mut path, vertex_bit(start), &mut out);
        path.pop();
    }
    out.sort();
    out.into_iter()
        .map(|vertices| {
            let mask = vertices.iter().map(|&v| vertex_bit(v)).sum();
            CandidatePath { vertices, mask }
        })
        .collect()
}

fn extend_chordless(
    g: &PartitionedGraph,
    path: &mut Vec<usize>,
    mask: u64,
    out: &mut Vec<Vec<usize>>,
) {
    let last = *path.last().unwrap();
    let first = path[0];
    for w in 1..=g.vertex_count() {
        if mask & vertex_bit(w) != 0 || !g.adjacent(last, w) {
            continue;
        }
        // chordless: w may touch only the current endpoint
        if path[..path.len() - 1].iter().any(|&p| g.adjacent(p, w)) {
            continue;
        }
        path.push(w);
        if first < w && g.part_of(first) != g.part_of(w) {
            out.push(path.clone());
        }
        extend_chordless(g, path, mask | vertex_bit(w), out);
        path.pop();
    }
}

fn path_search(
    g: &PartitionedGraph,
    candidates: &[CandidatePath],
    idx: usize,
    used: u64,
    current: &mut Vec<usize>,
    best: &mut Vec<usize>,
) {
    let free = g.vertex_count() - used.count_ones() as usize;
    if current.len() + free / 2 <= best.len() {
        return;
    }
    if idx == candidates.len() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    if candidates[idx].mask & used == 0 {
        current.push(idx);
        path_search(
            g,
            candidates,
            idx + 1,
            used | candidates[idx].mask,
            current,
            best,
        );
        current.pop();
    }
    path_search(g, candidates, idx + 1, used, current, best);
}

/// Checks simplicity, adjacency, endpoints in distinct parts, and
/// pairwise disjointness.
pub fn verify_path_system(g: &PartitionedGraph, system: &PathSystem) -> Result<()> {
    let mut used = 0u64;
    for path in &system.paths {
        if path.len() < 2 {
            return Err(Error::input(
                "a path needs at least two vertices".to_string(),
            ));
        }
        let mut own = 0u64;
        for &v in path {
            if v < 1 || v > g.vertex_count() {
                return Err(Error::input(format!("vertex {v} out of range")));
            }
            if own & vertex_bit(v) != 0 {
                return Err(Error::input(format!("path revisits vertex {v}")));
            }
            own |= vertex_bit(v);
        }
        for pair in path.windows(2) {
            if !g.adjacent(pair[0], pair[1]) {
                return Err(Error::input(format!(
                    "({},{}) is not an edge",
                    pair[0], pair[1]
                )));
            }
        }
        let (first, last) = (path[0], *path.last().unwrap());
        if g.part_of(first) == g.part_of(last) {
            return Err(Error::input(format!(
                "path endpoints {first} and {last} share part {}",
                g.part_of(first) + 1
            )));
        }
        if used & own != 0 {
            return Err(Error::input("paths share a vertex".to_string()));
        }
        used |= own;
    }
    Ok(())
}

/// Minimum separator vs maximum disjoint paths, weak duality asserted:
/// every qualifying path must contain a separator vertex, and disjoint
/// paths contain distinct ones.
pub fn check_separator_paths(g: &PartitionedGraph, guard: usize) -> Result<SeparatorPathReport> {
    let separator = min_all_pairs_separator(g, guard)?;
    let paths = max_disjoint_paths(g, guard)?;
    assert!(
        paths.size() <= separator.size(),
        "weak duality violated: paths={} separator={}",
        paths.size(),
        separator.size()
    );
    let verdict = if paths.size() == separator.size() {
        DualityVerdict::Equal
    } else {
        DualityVerdict::Gap
    };
    Ok(SeparatorPathReport {
        separator,
        paths,
        verdict,
    })
}
