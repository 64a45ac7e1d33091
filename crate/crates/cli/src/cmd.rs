//! File-driven subcommands: load an instance, solve, render the report.

use std::fs;
use std::path::Path;

use mmx_core::assign::{brute_force_assign, solve_axial_map, Assignment, SolveStats};
use mmx_core::det::{
    count_nonzero_monomials, find_nonzero_monomial, multideterminant, MonomialCount,
};
use mmx_core::error::{Error, Result};
use mmx_core::friendship::{
    check_friendship, clique_decomposition, hall_condition, Decomposition, FriendshipVerdict,
    HallWitness,
};
use mmx_core::graph::{parse_graph, serialize_graph, PartitionedGraph};
use mmx_core::line::{LineId, RPlaneId};
use mmx_core::matrix::{BinaryMultimatrix, CostMultimatrix};
use mmx_core::menger::{
    check_cover_matching, check_separator_paths, verify_matching, verify_path_system,
    verify_separator, verify_vertex_cover,
};
use mmx_core::minimax::{
    duality_gap, max_line_matching, max_rplane_matching, min_line_cover, min_rplane_cover,
    verify_rplane_cover, verify_rplane_matching, GapReport,
};
use mmx_core::perm::{support_of, tuple_count, PermutationTuple};
use mmx_core::shape::Coord;
use mmx_core::textio::{format_rational, parse_matrix, ParsedMatrix};

use crate::report::{digest, Report};
use crate::Limits;

/// A rendered report plus whether a violation verdict was produced
/// (the exit-3 channel).
pub type Outcome = (String, bool);

pub fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_matrix(path: &Path) -> Result<(ParsedMatrix, String)> {
    let text = read_file(path)?;
    let m = parse_matrix(&text)?;
    let canonical = m.serialize();
    Ok((m, canonical))
}

pub fn load_binary(path: &Path) -> Result<(BinaryMultimatrix, String)> {
    match load_matrix(path)? {
        (ParsedMatrix::Binary(m), canonical) => Ok((m, canonical)),
        _ => Err(Error::Input(format!(
            "{} holds a cost instance, this subcommand needs a binary one",
            path.display()
        ))),
    }
}

pub fn load_cost(path: &Path) -> Result<(CostMultimatrix, String)> {
    match load_matrix(path)? {
        (ParsedMatrix::Cost(m), canonical) => Ok((m, canonical)),
        _ => Err(Error::Input(format!(
            "{} holds a binary instance, this subcommand needs a cost one",
            path.display()
        ))),
    }
}

pub fn load_graph(path: &Path) -> Result<(PartitionedGraph, String)> {
    let text = read_file(path)?;
    let g = parse_graph(&text)?;
    let canonical = serialize_graph(&g);
    Ok((g, canonical))
}

fn instance_header(report: &mut Report, path: &Path, canonical: &str) {
    report.field("input", path.display());
    report.field("digest", digest(canonical));
}

fn shape_fields(report: &mut Report, m: &BinaryMultimatrix) {
    report.field("n", m.shape().n());
    report.field("k", m.shape().k());
}

/// Guards the tensorized size of friendship instances.
fn check_friendship_size(g: &PartitionedGraph, lim: &Limits) -> Result<()> {
    let n = g.part_count() as u32;
    let k = g.parts().iter().map(Vec::len).max().unwrap_or(0) as u128;
    let cells = k.checked_pow(n).unwrap_or(u128::MAX);
    if cells > lim.cell_budget() as u128 {
        return Err(Error::Budget {
            what: "tensorized cells",
            required: cells,
            limit: lim.cell_budget() as u128,
        });
    }
    Ok(())
}

fn tuple_lines(tuple: &PermutationTuple) -> Vec<String> {
    tuple
        .perms()
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let images: Vec<String> = p.image().iter().map(|v| v.to_string()).collect();
            format!("perm {} = {}", i + 2, images.join(","))
        })
        .collect()
}

fn cell_lines(cells: &[Coord]) -> Vec<String> {
    cells.iter().map(|c| format!("cell {c}")).collect()
}

fn line_lines(lines: &[LineId]) -> Vec<String> {
    lines.iter().map(|l| format!("line {l}")).collect()
}

fn plane_lines(planes: &[RPlaneId]) -> Vec<String> {
    planes.iter().map(|p| format!("plane {p}")).collect()
}

fn witness_lines(w: &HallWitness) -> Vec<String> {
    let join = |v: &[usize]| {
        if v.is_empty() {
            "none".to_string()
        } else {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
    };
    vec![
        format!("from_part = {}", w.from_part),
        format!("to_part = {}", w.to_part),
        format!("subset = {}", join(&w.subset)),
        format!("neighborhood = {}", join(&w.neighborhood)),
    ]
}

fn decomposition_lines(d: &Decomposition) -> Vec<String> {
    d.sets
        .iter()
        .map(|set| {
            let members: Vec<String> = set.iter().map(|v| v.to_string()).collect();
            format!("set {}", members.join(","))
        })
        .collect()
}

fn edge_lines(edges: &[(usize, usize)]) -> Vec<String> {
    edges.iter().map(|(u, v)| format!("edge {u}-{v}")).collect()
}

fn vertex_lines(vertices: &[usize]) -> Vec<String> {
    vertices.iter().map(|v| format!("vertex {v}")).collect()
}

fn path_lines(paths: &[Vec<usize>]) -> Vec<String> {
    paths
        .iter()
        .map(|p| {
            let hops: Vec<String> = p.iter().map(|v| v.to_string()).collect();
            format!("path {}", hops.join("-"))
        })
        .collect()
}

fn gap_fields(report: &mut Report, gap: &GapReport) {
    report.field("r", gap.r);
    report.field("alpha", gap.alpha);
    report.field("beta", gap.beta);
    report.field("gap", gap.gap());
    report.field("verdict", if gap.gap() == 0 { "equal" } else { "gap" });
    report.block("cover", plane_lines(&gap.cover.planes));
    report.block("matching", cell_lines(&gap.matching.cells));
}

pub fn det(path: &Path, lim: &Limits) -> Result<Outcome> {
    let (m, canonical) = load_binary(path)?;
    let value = multideterminant(&m, lim.term_budget())?;
    let mut report = Report::new("det");
    instance_header(&mut report, path, &canonical);
    shape_fields(&mut report, &m);
    report.field(
        "terms",
        tuple_count(m.shape()).expect("guarded by the term budget"),
    );
    report.field("det", value);
    report.seed(None);
    Ok((report.finish(), false))
}

pub fn monomial_find(path: &Path) -> Result<Outcome> {
    let (m, canonical) = load_binary(path)?;
    let found = find_nonzero_monomial(&m);
    let mut report = Report::new("monomial-find");
    instance_header(&mut report, path, &canonical);
    shape_fields(&mut report, &m);
    match found {
        Some(tuple) => {
            report.field("found", true);
            report.block("tuple", tuple_lines(&tuple));
            let support = support_of(m.shape(), &tuple)?;
            report.block("support", cell_lines(&support));
        }
        None => report.field("found", false),
    }
    report.seed(None);
    Ok((report.finish(), false))
}

pub fn monomial_count(path: &Path, lim: &Limits) -> Result<Outcome> {
    let (m, canonical) = load_binary(path)?;
    let count = count_nonzero_monomials(&m, lim.count_cap());
    let mut report = Report::new("monomial-count");
    instance_header(&mut report, path, &canonical);
    shape_fields(&mut report, &m);
    match count {
        MonomialCount::Exact(c) => {
            report.field("count", c);
            report.field("exact", true);
        }
        MonomialCount::AtLeast(c) => {
            report.field("count", c);
            report.field("exact", false);
        }
    }
    report.seed(None);
    Ok((report.finish(), false))
}

pub fn hall_check(path: &Path, lim: &Limits) -> Result<Outcome> {
    let (g, canonical) = load_graph(path)?;
    check_friendship_size(&g, lim)?;
    let result = hall_condition(&g)?;
    let mut report = Report::new("hall-check");
    instance_header(&mut report, path, &canonical);
    report.field("parts", g.part_count());
    report.field("k", g.parts()[0].len());
    report.field("hall", result.holds);
    if let Some(w) = &result.witness {
        report.block("violation", witness_lines(w));
    }
    report.seed(None);
    Ok((report.finish(), false))
}

pub fn decompose(path: &Path, lim: &Limits) -> Result<Outcome> {
    let (g, canonical) = load_graph(path)?;
    check_friendship_size(&g, lim)?;
    let result = clique_decomposition(&g)?;
    let mut report = Report::new("decompose");
    instance_header(&mut report, path, &canonical);
    report.field("parts", g.part_count());
    report.field("k", g.parts()[0].len());
    match result {
        Some(d) => {
            report.field("decomposable", true);
            report.block("decomposition", decomposition_lines(&d));
        }
        None => report.field("decomposable", false),
    }
    report.seed(None);
    Ok((report.finish(), false))
}

pub fn check_t21(path: &Path, lim: &Limits) -> Result<Outcome> {
    let (g, canonical) = load_graph(path)?;
    check_friendship_size(&g, lim)?;
    let result = check_friendship(&g)?;
    let mut report = Report::new("check-t21");
    instance_header(&mut report, path, &canonical);
    report.field("parts", g.part_count());
    report.field("k", g.parts()[0].len());
    report.field("hall", result.hall.holds);
    report.field("decomposable", result.decomposition.is_some());
    report.field("verdict", result.verdict.as_str());
    if let Some(w) = &result.hall.witness {
        report.block("violation", witness_lines(w));
    }
    if let Some(d) = &result.decomposition {
        report.block("decomposition", decomposition_lines(d));
    }
    report.seed(None);
    let finding = result.verdict != FriendshipVerdict::Consistent;
    Ok((report.finish(), finding))
}

pub fn line_cover(path: &Path, lim: &Limits) -> Result<Outcome> {
    let (m, canonical) = load_binary(path)?;
    let cover = min_line_cover(&m, lim.cell_budget())?;
    let mut report = Report::new("line-cover");
    instance_header(&mut report, path, &canonical);
    shape_fields(&mut report, &m);
    report.field("alpha", cover.size());
    report.block("cover", line_lines(&cover.planes));
    report.seed(None);
    Ok((report.finish(), false))
}

pub fn line_matching(path: &Path, lim: &Limits) -> Result<Outcome> {
    let (m, canonical) = load_binary(path)?;
    let matching = max_line_matching(&m, lim.cell_budget())?;
    let mut report = Report::new("line-matching");
    instance_header(&mut report, path, &canonical);
    shape_fields(&mut report, &m);
    report.field("beta", matching.size());
    report.block("matching", cell_lines(&matching.cells));
    report.seed(None);
    Ok((report.finish(), false))
}

pub fn rplane_cover(path: &Path, r: usize, lim: &Limits) -> Result<Outcome> {
    let (m, canonical) = load_binary(path)?;
    let cover = min_rplane_cover(&m, r, lim.cell_budget())?;
    verify_rplane_cover(&m, r, &cover.planes)?;
    let mut report = Report::new("rplane-cover");
    instance_header(&mut report, path, &canonical);
    shape_fields(&mut report, &m);
    report.field("r", r);
    report.field("alpha", cover.size());
    report.block("cover", plane_lines(&cover.planes));
    report.seed(None);
    Ok((report.finish(), false))
}

pub fn rplane_matching(path: &Path, r: usize, lim: &Limits) -> Result<Outcome> {
    let (m, canonical) = load_binary(path)?;
    let matching = max_rplane_matching(&m, r, lim.cell_budget())?;
    verify_rplane_matching(&m, r, &matching.cells)?;
    let mut report = Report::new("rplane-matching");
    instance_header(&mut report, path, &canonical);
    shape_fields(&mut report, &m);
    report.field("r", r);
    report.field("beta", matching.size());
    report.block("matching", cell_lines(&matching.cells));
    report.seed(None);
    Ok((report.finish(), false))
}

pub fn gap(path: &Path, r: usize, lim: &Limits) -> Result<Outcome> {
    let (m, canonical) = load_binary(path)?;
    let result = duality_gap(&m, r, lim.cell_budget())?;
    let mut report = Report::new("gap");
    instance_header(&mut report, path, &canonical);
    shape_fields(&mut report, &m);
    gap_fields(&mut report, &result);
    report.seed(None);
    Ok((report.finish(), result.gap() > 0))
}

pub fn assign(path: &Path, oracle: bool, lim: &Limits) -> Result<Outcome> {
    let (c, canonical) = load_cost(path)?;
    let (assignment, stats): (Assignment, Option<SolveStats>) = if oracle {
        (brute_force_assign(&c, lim.tuple_budget())?, None)
    } else {
        let (a, s) = solve_axial_map(&c);
        (a, Some(s))
    };
    let mut report = Report::new("assign");
    instance_header(&mut report, path, &canonical);
    report.field("n", c.shape().n());
    report.field("k", c.shape().k());
    report.field(
        "model",
        "axial: select k cells, one per index value on every axis",
    );
    report.field("optimum", format_rational(&assignment.cost));
    report.block("tuple", tuple_lines(&assignment.tuple));
    let support = support_of(c.shape(), &assignment.tuple)?;
    let cells: Vec<String> = support
        .iter()
        .map(|cell| format!("cell {cell} cost={}", format_rational(c.get(cell))))
        .collect();
    report.block("cells", cells);
    report.field("oracle", oracle);
    if let Some(s) = stats {
        report.field("nodes", s.nodes);
        report.field("root_bound", format_rational(&s.root_bound));
    }
    report.seed(None);
    Ok((report.finish(), false))
}

pub fn cover_match(path: &Path, lim: &Limits) -> Result<Outcome> {
    let (g, canonical) = load_graph(path)?;
    let result = check_cover_matching(&g, lim.guard)?;
    verify_matching(&g, &result.matching.edges)?;
    verify_vertex_cover(&g, &result.cover.vertices)?;
    let mut report = Report::new("cover-match");
    instance_header(&mut report, path, &canonical);
    report.field("parts", g.part_count());
    report.field("matching", result.matching.size());
    report.field("cover", result.cover.size());
    report.block("matching_edges", edge_lines(&result.matching.edges));
    report.block("cover_vertices", vertex_lines(&result.cover.vertices));
    report.seed(None);
    Ok((report.finish(), false))
}

pub fn menger(path: &Path, lim: &Limits) -> Result<Outcome> {
    let (g, canonical) = load_graph(path)?;
    let result = check_separator_paths(&g, lim.guard)?;
    verify_separator(&g, &result.separator.vertices)?;
    verify_path_system(&g, &result.paths)?;
    let mut report = Report::new("menger");
    instance_header(&mut report, path, &canonical);
    report.field("parts", g.part_count());
    report.field("separator", result.separator.size());
    report.field("paths", result.paths.size());
    report.block(
        "separator_vertices",
        vertex_lines(&result.separator.vertices),
    );
    report.block("path_system", path_lines(&result.paths.paths));
    report.seed(None);
    Ok((report.finish(), false))
}

pub fn check_t43(path: &Path, lim: &Limits) -> Result<Outcome> {
    let (g, canonical) = load_graph(path)?;
    let result = check_cover_matching(&g, lim.guard)?;
    verify_matching(&g, &result.matching.edges)?;
    verify_vertex_cover(&g, &result.cover.vertices)?;
    let mut report = Report::new("check-t43");
    instance_header(&mut report, path, &canonical);
    report.field("parts", g.part_count());
    report.field("matching", result.matching.size());
    report.field("cover", result.cover.size());
    report.field("gap", result.gap());
    report.field("verdict", result.verdict.as_str());
    report.block("matching_edges", edge_lines(&result.matching.edges));
    report.block("cover_vertices", vertex_lines(&result.cover.vertices));
    report.seed(None);
    Ok((report.finish(), result.gap() > 0))
}

pub fn check_t51(path: &Path, lim: &Limits) -> Result<Outcome> {
    let (g, canonical) = load_graph(path)?;
    let result = check_separator_paths(&g, lim.guard)?;
    verify_separator(&g, &result.separator.vertices)?;
    verify_path_system(&g, &result.paths)?;
    let mut report = Report::new("check-t51");
    instance_header(&mut report, path, &canonical);
    report.field("parts", g.part_count());
    report.field("separator", result.separator.size());
    report.field("paths", result.paths.size());
    report.field("gap", result.gap());
    report.field("verdict", result.verdict.as_str());
    report.block(
        "separator_vertices",
        vertex_lines(&result.separator.vertices),
    );
    report.block("path_system", path_lines(&result.paths.paths));
    report.seed(None);
    Ok((report.finish(), result.gap() > 0))
}

/// Shared by gap-scan and hunt: write one artifact file.
pub fn write_artifact(dir: &Path, name: &str, contents: &str) -> Result<String> {
    fs::create_dir_all(dir)
        .map_err(|e| Error::Input(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    fs::write(&path, contents)
        .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(path.display().to_string())
}
