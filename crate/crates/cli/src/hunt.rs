//! Instance generation, the duality-gap scanner, and the counterexample
//! hunter.
//!
//! Hunts stream seeded random instances through a claim's checker,
//! persist every violating instance, and optionally shrink each finding
//! to a local minimum: greedy removal of single 1s/edges in canonical
//! order while the violation persists.

use clap::ValueEnum;
use rayon::prelude::*;

use mmx_core::error::{Error, Result};
use mmx_core::friendship::{check_friendship, FriendshipVerdict};
use mmx_core::gen::{
    check_density, instance_rng, random_cost_multimatrix, random_multimatrix,
    random_partitioned_graph,
};
use mmx_core::graph::{serialize_graph, PartitionedGraph};
use mmx_core::matrix::BinaryMultimatrix;
use mmx_core::menger::{check_cover_matching, check_separator_paths};
use mmx_core::minimax::{duality_gap, gap_scan, ScanMode};
use mmx_core::shape::Shape;
use mmx_core::textio::{serialize_binary, serialize_cost};

use crate::cmd::{write_artifact, Outcome};
use crate::report::Report;
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Claim {
    T21,
    T41,
    T42,
    T43,
    T51,
}

impl Claim {
    fn as_str(&self) -> &'static str {
        match self {
            Claim::T21 => "t21",
            Claim::T41 => "t41",
            Claim::T42 => "t42",
            Claim::T43 => "t43",
            Claim::T51 => "t51",
        }
    }
}

pub fn gen_multimatrix(n: usize, k: usize, density: f64, lim: &Limits) -> Result<Outcome> {
    check_density(density)?;
    let shape = Shape::new(n, k)?;
    let mut rng = instance_rng(lim.seed, 0);
    let m = random_multimatrix(shape, density, &mut rng);
    let text = serialize_binary(&m);
    if let Some(dir) = lim.out_dir.as_deref() {
        write_artifact(
            dir,
            &format!("multimatrix-n{n}-k{k}-d{density}-s{}.mm", lim.seed),
            &text,
        )?;
    }
    Ok((text, false))
}

pub fn gen_costmatrix(n: usize, k: usize, lo: i64, hi: i64, lim: &Limits) -> Result<Outcome> {
    let shape = Shape::new(n, k)?;
    let mut rng = instance_rng(lim.seed, 0);
    let m = random_cost_multimatrix(shape, lo, hi, &mut rng)?;
    let text = serialize_cost(&m);
    if let Some(dir) = lim.out_dir.as_deref() {
        write_artifact(
            dir,
            &format!("costmatrix-n{n}-k{k}-lo{lo}-hi{hi}-s{}.cmm", lim.seed),
            &text,
        )?;
    }
    Ok((text, false))
}

pub fn gen_graph(parts: &[usize], density: f64, intra: bool, lim: &Limits) -> Result<Outcome> {
    let mut rng = instance_rng(lim.seed, 0);
    let g = random_partitioned_graph(parts, density, intra, &mut rng)?;
    let text = serialize_graph(&g);
    if let Some(dir) = lim.out_dir.as_deref() {
        let sizes: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
        write_artifact(
            dir,
            &format!("graph-p{}-d{density}-s{}.pg", sizes.join("x"), lim.seed),
            &text,
        )?;
    }
    Ok((text, false))
}

pub fn gap_scan_cmd(
    n: usize,
    k: usize,
    r: usize,
    mode: Mode,
    count: u64,
    lim: &Limits,
) -> Result<Outcome> {
    let shape = Shape::new(n, k)?;
    let scan_mode = match mode {
        Mode::Exhaustive => ScanMode::Exhaustive,
        Mode::Random => ScanMode::Random {
            count,
            seed: lim.seed,
        },
    };
    let scan = gap_scan(shape, r, scan_mode, lim.cell_budget(), lim.scan_budget())?;

    let mut report = Report::new("gap-scan");
    report.field("shape", shape);
    report.field("r", r);
    report.field(
        "mode",
        match mode {
            Mode::Exhaustive => "exhaustive",
            Mode::Random => "random",
        },
    );
    report.field("instances", scan.instances);
    let histogram: Vec<String> = scan
        .histogram
        .iter()
        .map(|(gap, count)| format!("gap {gap} = {count}"))
        .collect();
    report.block("histogram", histogram);
    report.field("counterexamples", scan.counterexamples.len());

    let mut artifacts = Vec::new();
    for finding in &scan.counterexamples {
        let tag = match mode {
            Mode::Exhaustive => format!("exhaustive-i{:06}", finding.index),
            Mode::Random => format!("random-s{}-i{:06}", lim.seed, finding.index),
        };
        let name = format!("gap-{shape}-r{r}-{tag}.mm");
        let path = write_artifact(
            lim.artifact_dir(),
            &name,
            &serialize_binary(&finding.matrix),
        )?;
        artifacts.push(format!(
            "index={} alpha={} beta={} file={path}",
            finding.index, finding.report.alpha, finding.report.beta
        ));
    }
    if !scan.counterexamples.is_empty() {
        report.block("artifacts", artifacts);
    }
    report.seed(match mode {
        Mode::Exhaustive => None,
        Mode::Random => Some(lim.seed),
    });
    let finding = !scan.counterexamples.is_empty();
    Ok((report.finish(), finding))
}

pub struct HuntSpec {
    pub claim: Claim,
    pub n: usize,
    pub k: usize,
    pub r: usize,
    pub parts: Vec<usize>,
    pub density: f64,
    pub count: u64,
    pub shrink: bool,
}

struct Finding {
    index: u64,
    label: String,
    artifact: String,
    extension: &'static str,
}

pub fn hunt_cmd(spec: &HuntSpec, lim: &Limits) -> Result<Outcome> {
    check_density(spec.density)?;
    validate_spec(spec, lim)?;

    let findings: Vec<Option<Finding>> = (0..spec.count)
        .into_par_iter()
        .map(|index| hunt_one(spec, lim, index))
        .collect::<Result<_>>()?;

    let mut report = Report::new("hunt");
    report.field("claim", spec.claim.as_str());
    match spec.claim {
        Claim::T21 | Claim::T41 => {
            report.field("n", spec.n);
            report.field("k", spec.k);
        }
        Claim::T42 => {
            report.field("n", spec.n);
            report.field("k", spec.k);
            report.field("r", spec.r);
        }
        Claim::T43 | Claim::T51 => {
            let sizes: Vec<String> = spec.parts.iter().map(|p| p.to_string()).collect();
            report.field("parts", sizes.join(","));
        }
    }
    report.field("density", spec.density);
    report.field("instances", spec.count);
    report.field("shrink", spec.shrink);

    let hits: Vec<Finding> = findings.into_iter().flatten().collect();
    report.field("findings", hits.len());
    let mut lines = Vec::new();
    for f in &hits {
        let name = format!(
            "{}-s{}-i{:06}.{}",
            spec.claim.as_str(),
            lim.seed,
            f.index,
            f.extension
        );
        let path = write_artifact(lim.artifact_dir(), &name, &f.artifact)?;
        lines.push(format!("index={} {} file={path}", f.index, f.label));
    }
    if !hits.is_empty() {
        report.block("artifacts", lines);
    }
    report.seed(Some(lim.seed));
    Ok((report.finish(), !hits.is_empty()))
}

fn validate_spec(spec: &HuntSpec, lim: &Limits) -> Result<()> {
    match spec.claim {
        Claim::T21 | Claim::T41 | Claim::T42 => {
            let shape = Shape::new(spec.n, spec.k)?;
            if shape.cell_count() > lim.cell_budget() {
                return Err(Error::Budget {
                    what: "instance cells",
                    required: shape.cell_count() as u128,
                    limit: lim.cell_budget() as u128,
                });
            }
            if spec.claim == Claim::T42 && (spec.r < 1 || spec.r > spec.n) {
                return Err(Error::Input(format!(
                    "r = {} not in 1..={}",
                    spec.r, spec.n
                )));
            }
            Ok(())
        }
        Claim::T43 | Claim::T51 => {
            if spec.parts.is_empty() {
                return Err(Error::Input(
                    "hunts over graphs need --parts sizes".to_string(),
                ));
            }
            let total: usize = spec.parts.iter().sum();
            if total > lim.guard {
                return Err(Error::Budget {
                    what: "graph vertices",
                    required: total as u128,
                    limit: lim.guard as u128,
                });
            }
            Ok(())
        }
    }
}

fn hunt_one(spec: &HuntSpec, lim: &Limits, index: u64) -> Result<Option<Finding>> {
    let mut rng = instance_rng(lim.seed, index);
    match spec.claim {
        Claim::T21 => {
            let sizes = vec![spec.k; spec.n];
            let g = random_partitioned_graph(&sizes, spec.density, false, &mut rng)?;
            let verdict = check_friendship(&g)?.verdict;
            if verdict == FriendshipVerdict::Consistent {
                return Ok(None);
            }
            let g = maybe_shrink_graph(g, spec.shrink, |g| {
                Ok(check_friendship(g)?.verdict != FriendshipVerdict::Consistent)
            })?;
            let verdict = check_friendship(&g)?.verdict;
            Ok(Some(Finding {
                index,
                label: format!("verdict={}", verdict.as_str()),
                artifact: serialize_graph(&g),
                extension: "pg",
            }))
        }
        Claim::T41 | Claim::T42 => {
            let r = if spec.claim == Claim::T41 { 1 } else { spec.r };
            let shape = Shape::new(spec.n, spec.k)?;
            let m = random_multimatrix(shape, spec.density, &mut rng);
            let cell_budget = lim.cell_budget();
            let report = duality_gap(&m, r, cell_budget)?;
            if report.gap() == 0 {
                return Ok(None);
            }
            let m = maybe_shrink_matrix(m, spec.shrink, |m| {
                Ok(duality_gap(m, r, cell_budget)?.gap() > 0)
            })?;
            let report = duality_gap(&m, r, cell_budget)?;
            Ok(Some(Finding {
                index,
                label: format!("alpha={} beta={}", report.alpha, report.beta),
                artifact: serialize_binary(&m),
                extension: "mm",
            }))
        }
        Claim::T43 => {
            let g = random_partitioned_graph(&spec.parts, spec.density, false, &mut rng)?;
            let guard = lim.guard;
            let report = check_cover_matching(&g, guard)?;
            if report.gap() == 0 {
                return Ok(None);
            }
            let g = maybe_shrink_graph(g, spec.shrink, |g| {
                Ok(check_cover_matching(g, guard)?.gap() > 0)
            })?;
            let report = check_cover_matching(&g, guard)?;
            Ok(Some(Finding {
                index,
                label: format!(
                    "cover={} matching={}",
                    report.cover.size(),
                    report.matching.size()
                ),
                artifact: serialize_graph(&g),
                extension: "pg",
            }))
        }
        Claim::T51 => {
            let g = random_partitioned_graph(&spec.parts, spec.density, true, &mut rng)?;
            let guard = lim.guard;
            let report = check_separator_paths(&g, guard)?;
            if report.gap() == 0 {
                return Ok(None);
            }
            let g = maybe_shrink_graph(g, spec.shrink, |g| {
                Ok(check_separator_paths(g, guard)?.gap() > 0)
            })?;
            let report = check_separator_paths(&g, guard)?;
            Ok(Some(Finding {
                index,
                label: format!(
                    "separator={} paths={}",
                    report.separator.size(),
                    report.paths.size()
                ),
                artifact: serialize_graph(&g),
                extension: "pg",
            }))
        }
    }
}

/// Greedy edge removal in canonical order while the violation persists;
/// the result is locally minimal.
fn maybe_shrink_graph<F>(g: PartitionedGraph, shrink: bool, violates: F) -> Result<PartitionedGraph>
where
    F: Fn(&PartitionedGraph) -> Result<bool>,
{
    if !shrink {
        return Ok(g);
    }
    let mut current = g;
    'outer: loop {
        let edges: Vec<(usize, usize)> = current.edges().collect();
        for (u, v) in edges {
            let candidate = current.without_edge(u, v);
            if violates(&candidate)? {
                current = candidate;
                continue 'outer;
            }
        }
        return Ok(current);
    }
}

/// Greedy 1-removal in dense order while the violation persists.
fn maybe_shrink_matrix<F>(
    m: BinaryMultimatrix,
    shrink: bool,
    violates: F,
) -> Result<BinaryMultimatrix>
where
    F: Fn(&BinaryMultimatrix) -> Result<bool>,
{
    if !shrink {
        return Ok(m);
    }
    let mut current = m;
    'outer: loop {
        let ones: Vec<_> = current.ones().collect();
        for one in ones {
            let candidate = current.with_cell(&one, false);
            if violates(&candidate)? {
                current = candidate;
                continue 'outer;
            }
        }
        return Ok(current);
    }
}
