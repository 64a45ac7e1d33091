//! Vertex-partitioned graphs and their text format.
//!
//! Format: header `pg <nparts> <nvertices> <nedges>`, then one
//! `part <p> <v1> <v2> …` line per part and one `edge <u> <v>` line per
//! edge. Vertex ids are 1-based and each id belongs to exactly one
//! part. The order of vertices inside a part is meaningful: it is the
//! coordinate order used when the graph is tensorized.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

/// Undirected graph whose vertices are split into ordered parts.
/// Intra-part edges are representable; operations that need a proper
/// multipartite graph reject them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedGraph {
    parts: Vec<Vec<usize>>,
    edges: BTreeSet<(usize, usize)>,
    vertex_count: usize,
    /// vertex id -> 0-based part index; slot 0 unused
    part_of: Vec<usize>,
    adj: Vec<Vec<bool>>,
}

impl PartitionedGraph {
    pub fn new<I>(parts: Vec<Vec<usize>>, edges: I) -> Result<PartitionedGraph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if parts.is_empty() {
            return Err(Error::input("graph needs at least one part".to_string()));
        }
        let vertex_count: usize = parts.iter().map(Vec::len).sum();
        let mut part_of = vec![usize::MAX; vertex_count + 1];
        for (p, members) in parts.iter().enumerate() {
            for &v in members {
                if v < 1 || v > vertex_count {
                    return Err(Error::input(format!(
                        "vertex id {v} not in 1..={vertex_count}"
                    )));
                }
                if part_of[v] != usize::MAX {
                    return Err(Error::input(format!("vertex {v} listed in two parts")));
                }
                part_of[v] = p;
            }
        }
        // every id assigned exactly once, so parts partition 1..=nv
        let mut edge_set = BTreeSet::new();
        let mut adj = vec![vec![false; vertex_count + 1]; vertex_count + 1];
        for (u, v) in edges {
            if u == v {
                return Err(Error::input(format!("edge ({u},{v}) is a self-loop")));
            }
            if u < 1 || u > vertex_count || v < 1 || v > vertex_count {
                return Err(Error::input(format!(
                    "edge ({u},{v}) uses a vertex outside 1..={vertex_count}"
                )));
            }
            edge_set.insert((u.min(v), u.max(v)));
            adj[u][v] = true;
            adj[v][u] = true;
        }
        Ok(PartitionedGraph {
            parts,
            edges: edge_set,
            vertex_count,
            part_of,
            adj,
        })
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as (min, max) pairs in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u][v]
    }

    /// 0-based part index of a vertex.
    pub fn part_of(&self, v: usize) -> usize {
        self.part_of[v]
    }

    /// Some intra-part edge, if any exists.
    pub fn intra_part_edge(&self) -> Option<(usize, usize)> {
        self.edges
            .iter()
            .copied()
            .find(|&(u, v)| self.part_of[u] == self.part_of[v])
    }

    /// Copy without one edge; used by counterexample shrinking.
    pub fn without_edge(&self, u: usize, v: usize) -> PartitionedGraph {
        let key = (u.min(v), u.max(v));
        let edges: Vec<(usize, usize)> = self.edges.iter().copied().filter(|e| *e != key).collect();
        PartitionedGraph::new(self.parts.clone(), edges)
            .expect("edge removal keeps the graph valid")
    }
}

pub fn parse_graph(text: &str) -> Result<PartitionedGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (header_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header"))?;
    let tokens: Vec<&str> = header.split_whitespace().collect();
    if tokens.len() != 4 || tokens[0] != "pg" {
        return Err(Error::parse(
            header_no,
            "header must be `pg <nparts> <nvertices> <nedges>`",
        ));
    }
    let nparts: usize = tokens[1]
        .parse()
        .map_err(|_| Error::parse(header_no, format!("bad part count `{}`", tokens[1])))?;
    let nvertices: usize = tokens[2]
        .parse()
        .map_err(|_| Error::parse(header_no, format!("bad vertex count `{}`", tokens[2])))?;
    let nedges: usize = tokens[3]
        .parse()
        .map_err(|_| Error::parse(header_no, format!("bad edge count `{}`", tokens[3])))?;
    if nparts == 0 {
        return Err(Error::parse(header_no, "part count must be positive"));
    }

    let mut parts: Vec<Option<Vec<usize>>> = vec![None; nparts];
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(nedges);
    let mut seen_edges = BTreeSet::new();
    for (line_no, line) in lines {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens[0] {
            "part" => {
                if tokens.len() < 2 {
                    return Err(Error::parse(line_no, "part line needs an index"));
                }
                let p: usize = tokens[1].parse().map_err(|_| {
                    Error::parse(line_no, format!("bad part index `{}`", tokens[1]))
                })?;
                if p < 1 || p > nparts {
                    return Err(Error::parse(
                        line_no,
                        format!("part index {p} not in 1..={nparts}"),
                    ));
                }
                if parts[p - 1].is_some() {
                    return Err(Error::parse(line_no, format!("part {p} listed twice")));
                }
                let mut members = Vec::with_capacity(tokens.len() - 2);
                for t in &tokens[2..] {
                    let v: usize = t
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad vertex id `{t}`")))?;
                    members.push(v);
                }
                parts[p - 1] = Some(members);
            }
            "edge" => {
                if tokens.len() != 3 {
                    return Err(Error::parse(
                        line_no,
                        "edge line needs exactly two vertices",
                    ));
                }
                let u: usize = tokens[1]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad vertex id `{}`", tokens[1])))?;
                let v: usize = tokens[2]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad vertex id `{}`", tokens[2])))?;
                if u == v {
                    return Err(Error::parse(
                        line_no,
                        format!("edge ({u},{v}) is a self-loop"),
                    ));
                }
                if !seen_edges.insert((u.min(v), u.max(v))) {
                    return Err(Error::parse(line_no, format!("duplicate edge ({u},{v})")));
                }
                edges.push((u, v));
            }
            other => {
                return Err(Error::parse(line_no, format!("unknown record `{other}`")));
            }
        }
    }
    let parts: Vec<Vec<usize>> = parts
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| Error::input(format!("part {} is missing", i + 1))))
        .collect::<Result<_>>()?;
    let total: usize = parts.iter().map(Vec::len).sum();
    if total != nvertices {
        return Err(Error::input(format!(
            "parts list {total} vertices, header says {nvertices}"
        )));
    }
    if edges.len() != nedges {
        return Err(Error::input(format!(
            "file lists {} edges, header says {nedges}",
            edges.len()
        )));
    }
    PartitionedGraph::new(parts, edges)
}

/// Canonical text: parts in index order with their stored vertex order,
/// edges ascending as (min, max) pairs.
pub fn serialize_graph(g: &PartitionedGraph) -> String {
    let mut out = format!(
        "pg {} {} {}\n",
        g.part_count(),
        g.vertex_count(),
        g.edge_count()
    );
    for (i, members) in g.parts().iter().enumerate() {
        out.push_str(&format!("part {}", i + 1));
        for v in members {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("edge {u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn triangle() -> PartitionedGraph {
        PartitionedGraph::new(vec![vec![1], vec![2], vec![3]], [(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn builds_and_queries_a_triangle() {
        let g = triangle();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.adjacent(1, 3));
        assert_eq!(g.part_of(2), 1);
        assert!(g.intra_part_edge().is_none());
    }

    #[test]
    fn rejects_bad_structure() {
        assert!(PartitionedGraph::new(vec![vec![1], vec![1]], []).is_err());
        assert!(PartitionedGraph::new(vec![vec![1], vec![3]], []).is_err());
        assert!(PartitionedGraph::new(vec![vec![1], vec![2]], [(1, 1)]).is_err());
        assert!(PartitionedGraph::new(vec![vec![1], vec![2]], [(1, 5)]).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let text = "pg 2 4 3\npart 1 1 2\npart 2 3 4\nedge 1 3\nedge 1 4\nedge 2 4\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(serialize_graph(&g), text);
    }

    #[test]
    fn parse_preserves_part_vertex_order() {
        let text = "pg 2 4 0\npart 1 2 1\npart 2 4 3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.parts()[0], vec![2, 1]);
        assert_eq!(serialize_graph(&g), text);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_graph("pg 2 2 1\npart 1 1\npart 2 2\nedge 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 4, .. }));
        let err = parse_graph("pg 1 1 0\npart 1 1\npart 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = parse_graph("pg 1 2 0\npart 1 1\n").unwrap_err();
        assert!(matches!(err, Error::Input(_)));
    }

    #[test]
    fn duplicate_edges_are_rejected() {
        let err = parse_graph("pg 2 2 2\npart 1 1\npart 2 2\nedge 1 2\nedge 2 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 5, .. }));
    }

    #[test]
    fn without_edge_removes_exactly_one() {
        let g = triangle();
        let g2 = g.without_edge(3, 1);
        assert_eq!(g2.edge_count(), 2);
        assert!(!g2.adjacent(1, 3));
        assert!(g2.adjacent(1, 2));
    }
}
