//! Exact minimum line/r-plane covers and maximum independent sets of
//! 1-cells, with verifiable certificates.
//!
//! Cover: fewest planes containing every 1. Matching: most 1s with no
//! two in a common plane. Both solved by branch and bound — covers by
//! include/exclude on the most-covering plane with a greedy upper bound
//! and an independent-set lower bound, matchings on the conflict graph
//! with a clique-family bound. Certificates are the lexicographically
//! least optimal sets in the documented enumeration orders, recovered
//! by prefix-fixing against a decision search.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::gen::random_multimatrix;
use crate::line::{cells_on_rplane, check_r, rplanes_of, same_rplane, LineId, RPlaneId};
use crate::matrix::BinaryMultimatrix;
use crate::shape::{Coord, Shape};

/// Planes that jointly contain every 1 of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCertificate<P> {
    pub planes: Vec<P>,
}

impl<P> CoverCertificate<P> {
    pub fn size(&self) -> usize {
        self.planes.len()
    }
}

/// 1-cells no two of which share a plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingCertificate {
    pub cells: Vec<Coord>,
}

impl MatchingCertificate {
    pub fn size(&self) -> usize {
        self.cells.len()
    }
}

/// Both optima and their certificates for one instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub r: usize,
    pub alpha: usize,
    pub beta: usize,
    pub cover: CoverCertificate<RPlaneId>,
    pub matching: MatchingCertificate,
}

impl GapReport {
    /// α − β; never negative.
    pub fn gap(&self) -> usize {
        self.alpha - self.beta
    }
}

fn check_cell_budget(shape: Shape, cell_budget: usize) -> Result<()> {
    if shape.cell_count() > cell_budget {
        return Err(Error::Budget {
            what: "instance cells",
            required: shape.cell_count() as u128,
            limit: cell_budget as u128,
        });
    }
    Ok(())
}

/// Minimum number of lines containing all 1s, with the least such line
/// set in line enumeration order.
pub fn min_line_cover(
    m: &BinaryMultimatrix,
    cell_budget: usize,
) -> Result<CoverCertificate<LineId>> {
    let cover = min_rplane_cover(m, 1, cell_budget)?;
    let shape = m.shape();
    let lines = cover
        .planes
        .into_iter()
        .map(|p| p.as_line(shape).expect("r=1 planes are lines"))
        .collect();
    Ok(CoverCertificate { planes: lines })
}

/// Maximum number of 1s with no two in the same line.
pub fn max_line_matching(m: &BinaryMultimatrix, cell_budget: usize) -> Result<MatchingCertificate> {
    max_rplane_matching(m, 1, cell_budget)
}

/// Minimum number of r-planes (free-axis sets may mix) containing all 1s.
pub fn min_rplane_cover(
    m: &BinaryMultimatrix,
    r: usize,
    cell_budget: usize,
) -> Result<CoverCertificate<RPlaneId>> {
    let shape = m.shape();
    check_r(shape, r)?;
    check_cell_budget(shape, cell_budget)?;
    let engine = Engine::new(m, r)?;
    let indices = engine.lex_min_cover();
    let planes: Vec<RPlaneId> = indices
        .iter()
        .map(|&i| engine.plane_ids[i].clone())
        .collect();
    debug_assert!(verify_rplane_cover(m, r, &planes).is_ok());
    Ok(CoverCertificate { planes })
}

/// Maximum number of 1s with no two in the same r-plane.
pub fn max_rplane_matching(
    m: &BinaryMultimatrix,
    r: usize,
    cell_budget: usize,
) -> Result<MatchingCertificate> {
    let shape = m.shape();
    check_r(shape, r)?;
    check_cell_budget(shape, cell_budget)?;
    let engine = Engine::new(m, r)?;
    let indices = engine.lex_min_matching();
    let cells: Vec<Coord> = indices.iter().map(|&i| engine.ones[i].clone()).collect();
    debug_assert!(verify_rplane_matching(m, r, &cells).is_ok());
    Ok(MatchingCertificate { cells })
}

/// Solves both sides and reports α, β and the certificates. Weak
/// duality (α ≥ β) is asserted on every solve.
pub fn duality_gap(m: &BinaryMultimatrix, r: usize, cell_budget: usize) -> Result<GapReport> {
    let cover = min_rplane_cover(m, r, cell_budget)?;
    let matching = max_rplane_matching(m, r, cell_budget)?;
    let alpha = cover.size();
    let beta = matching.size();
    assert!(
        alpha >= beta,
        "weak duality violated: alpha={alpha} beta={beta}"
    );
    Ok(GapReport {
        r,
        alpha,
        beta,
        cover,
        matching,
    })
}

/// Checks that every 1 of `m` lies in at least one listed plane.
pub fn verify_rplane_cover(m: &BinaryMultimatrix, r: usize, planes: &[RPlaneId]) -> Result<()> {
    let shape = m.shape();
    let mut covered = vec![false; shape.cell_count()];
    for plane in planes {
        if plane.r() != r {
            return Err(Error::input(format!(
                "plane {plane} has {} free axes, cover is for r = {r}",
                plane.r()
            )));
        }
        for cell in cells_on_rplane(shape, plane)? {
            covered[shape.linear_index(&cell)] = true;
        }
    }
    for one in m.ones() {
        if !covered[shape.linear_index(&one)] {
            return Err(Error::input(format!("cell ({one}) is a 1 left uncovered")));
        }
    }
    Ok(())
}

/// Checks that the cells are 1s and pairwise avoid a common r-plane.
pub fn verify_rplane_matching(m: &BinaryMultimatrix, r: usize, cells: &[Coord]) -> Result<()> {
    let shape = m.shape();
    for cell in cells {
        if !shape.contains(cell) {
            return Err(Error::input(format!("cell ({cell}) is out of range")));
        }
        if !m.get(cell) {
            return Err(Error::input(format!("cell ({cell}) is not a 1")));
        }
    }
    for (a, p) in cells.iter().enumerate() {
        for q in &cells[a + 1..] {
            if p == q {
                return Err(Error::input(format!("cell ({p}) listed twice")));
            }
            if same_rplane(shape, r, p, q)? {
                return Err(Error::input(format!(
                    "cells ({p}) and ({q}) share an {r}-plane"
                )));
            }
        }
    }
    Ok(())
}

/// Shared state for one instance and one r: 1-cells, candidate planes
/// as bitsets over the 1-cells, and the pairwise conflict relation.
struct Engine {
    ones: Vec<Coord>,
    plane_ids: Vec<RPlaneId>,
    plane_bits: Vec<BitSet>,
    conflict: Vec<BitSet>,
    /// per free-axis family, the family-plane id of each 1-cell
    families: Vec<Vec<usize>>,
    family_id_bound: usize,
    full: BitSet,
}

impl Engine {
    fn new(m: &BinaryMultimatrix, r: usize) -> Result<Engine> {
        let shape = m.shape();
        let ones: Vec<Coord> = m.ones().collect();
        let position: BTreeMap<usize, usize> = ones
            .iter()
            .enumerate()
            .map(|(pos, c)| (shape.linear_index(c), pos))
            .collect();

        let plane_ids = rplanes_of(shape, r)?;
        let mut plane_bits = Vec::with_capacity(plane_ids.len());
        for plane in &plane_ids {
            let mut bits = BitSet::new(ones.len());
            for cell in cells_on_rplane(shape, plane)? {
                if let Some(&pos) = position.get(&shape.linear_index(&cell)) {
                    bits.insert(pos);
                }
            }
            plane_bits.push(bits);
        }

        let mut conflict = vec![BitSet::new(ones.len()); ones.len()];
        for a in 0..ones.len() {
            for b in a + 1..ones.len() {
                if same_rplane(shape, r, &ones[a], &ones[b])? {
                    conflict[a].insert(b);
                    conflict[b].insert(a);
                }
            }
        }

        // clique families: all free-axis combinations; two cells with the
        // same fixed-coordinate key inside a family share that plane
        let free_sets: Vec<Vec<usize>> = {
            use itertools::Itertools;
            (1..=shape.n()).combinations(r).collect()
        };
        let family_id_bound = shape.k().pow((shape.n() - r) as u32);
        let families = free_sets
            .iter()
            .map(|free| {
                ones.iter()
                    .map(|c| {
                        let mut id = 0;
                        for (axis, &v) in c.indices().iter().enumerate() {
                            if !free.contains(&(axis + 1)) {
                                id = id * shape.k() + (v - 1);
                            }
                        }
                        id
                    })
                    .collect()
            })
            .collect();

        let mut full = BitSet::new(ones.len());
        for i in 0..ones.len() {
            full.insert(i);
        }
        Ok(Engine {
            ones,
            plane_ids,
            plane_bits,
            conflict,
            families,
            family_id_bound,
            full,
        })
    }

    // ---- cover side ----

    /// Greedy cover size; also a valid incumbent for the search.
    fn greedy_cover(&self) -> usize {
        let mut covered = BitSet::new(self.ones.len());
        let mut size = 0;
        while covered != self.full {
            let best = (0..self.plane_bits.len())
                .max_by_key(|&p| (self.plane_bits[p].count_minus(&covered), usize::MAX - p))
                .expect("every cell lies in some plane");
            covered.union_with(&self.plane_bits[best]);
            size += 1;
        }
        size
    }

    /// Independent 1-cells among `uncovered` found greedily; any cover
    /// needs at least one plane per such cell.
    fn cover_lower_bound(&self, covered: &BitSet) -> usize {
        let mut blocked = covered.clone();
        let mut count = 0;
        for i in 0..self.ones.len() {
            if !blocked.contains(i) {
                count += 1;
                blocked.insert(i);
                blocked.union_with(&self.conflict[i]);
            }
        }
        count
    }

    fn min_cover_size(&self) -> usize {
        if self.ones.is_empty() {
            return 0;
        }
        let mut best = self.greedy_cover();
        let banned = BitSet::new(self.plane_bits.len());
        self.cover_search(&BitSet::new(self.ones.len()), 0, &banned, &mut best);
        best
    }

    fn cover_search(&self, covered: &BitSet, count: usize, banned: &BitSet, best: &mut usize) {
        if covered == &self.full {
            *best = (*best).min(count);
            return;
        }
        if count + self.cover_lower_bound(covered).max(1) >= *best {
            return;
        }
        let Some(pick) = self.most_covering(covered, banned) else {
            return;
        };
        // include
        let mut with = covered.clone();
        with.union_with(&self.plane_bits[pick]);
        self.cover_search(&with, count + 1, banned, best);
        // exclude
        let mut banned2 = banned.clone();
        banned2.insert(pick);
        if self.starves(covered, &banned2, pick) {
            return;
        }
        self.cover_search(covered, count, &banned2, best);
    }

    /// Decision variant: can the rest be covered with at most `budget`
    /// planes drawn from indices >= `start` minus `banned`?
    fn can_cover(&self, covered: &BitSet, start: usize, budget: usize) -> bool {
        if covered == &self.full {
            return true;
        }
        let mut banned = BitSet::new(self.plane_bits.len());
        for p in 0..start {
            banned.insert(p);
        }
        self.cover_decide(covered, 0, &banned, budget)
    }

    fn cover_decide(&self, covered: &BitSet, count: usize, banned: &BitSet, budget: usize) -> bool {
        if covered == &self.full {
            return true;
        }
        if count + self.cover_lower_bound(covered).max(1) > budget {
            return false;
        }
        let Some(pick) = self.most_covering(covered, banned) else {
            return false;
        };
        let mut with = covered.clone();
        with.union_with(&self.plane_bits[pick]);
        if self.cover_decide(&with, count + 1, banned, budget) {
            return true;
        }
        let mut banned2 = banned.clone();
        banned2.insert(pick);
        if self.starves(covered, &banned2, pick) {
            return false;
        }
        self.cover_decide(covered, count, &banned2, budget)
    }

    fn most_covering(&self, covered: &BitSet, banned: &BitSet) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        for p in 0..self.plane_bits.len() {
            if banned.contains(p) {
                continue;
            }
            let gain = self.plane_bits[p].count_minus(covered);
            if gain > 0 && best.is_none_or(|(g, _)| gain > g) {
                best = Some((gain, p));
            }
        }
        best.map(|(_, p)| p)
    }

    /// True when banning `pick` leaves one of its uncovered cells with
    /// no remaining plane.
    fn starves(&self, covered: &BitSet, banned: &BitSet, pick: usize) -> bool {
        self.plane_bits[pick].iter().any(|cell| {
            !covered.contains(cell)
                && !(0..self.plane_bits.len())
                    .any(|p| !banned.contains(p) && self.plane_bits[p].contains(cell))
        })
    }

    /// Lexicographically least minimum cover, as plane indices.
    fn lex_min_cover(&self) -> Vec<usize> {
        if self.ones.is_empty() {
            return Vec::new();
        }
        let alpha = self.min_cover_size();
        let mut chosen = Vec::with_capacity(alpha);
        let mut covered = BitSet::new(self.ones.len());
        let mut start = 0;
        while covered != self.full {
            let (p, with) = self
                .next_cover_element(&covered, start, alpha - chosen.len() - 1)
                .expect("optimal cover extraction lost its witness");
            chosen.push(p);
            covered = with;
            start = p + 1;
        }
        assert_eq!(chosen.len(), alpha);
        chosen
    }

    /// Least plane index >= `start` that gains coverage and still leaves
    /// a cover of `remaining` later planes.
    fn next_cover_element(
        &self,
        covered: &BitSet,
        start: usize,
        remaining: usize,
    ) -> Option<(usize, BitSet)> {
        for p in start..self.plane_bits.len() {
            if self.plane_bits[p].count_minus(covered) == 0 {
                continue;
            }
            let mut with = covered.clone();
            with.union_with(&self.plane_bits[p]);
            if self.can_cover(&with, p + 1, remaining) {
                return Some((p, with));
            }
        }
        None
    }

    // ---- matching side ----

    /// Clique-cover bound: within one family every plane is a clique,
    /// so an independent set has at most one cell per distinct plane.
    fn matching_upper_bound(&self, available: &BitSet) -> usize {
        let mut bound = usize::MAX;
        for family in &self.families {
            let mut seen = vec![false; self.family_id_bound];
            let mut distinct = 0;
            for i in available.iter() {
                if !seen[family[i]] {
                    seen[family[i]] = true;
                    distinct += 1;
                }
            }
            bound = bound.min(distinct);
        }
        bound.min(available.count())
    }

    fn greedy_matching(&self) -> usize {
        let mut blocked = BitSet::new(self.ones.len());
        let mut count = 0;
        for i in 0..self.ones.len() {
            if !blocked.contains(i) {
                count += 1;
                blocked.insert(i);
                blocked.union_with(&self.conflict[i]);
            }
        }
        count
    }

    fn max_matching_size(&self) -> usize {
        if self.ones.is_empty() {
            return 0;
        }
        let mut best = self.greedy_matching();
        self.matching_search(&self.full, 0, &mut best);
        best
    }

    fn matching_search(&self, available: &BitSet, count: usize, best: &mut usize) {
        let Some(v) = available.iter().next() else {
            *best = (*best).max(count);
            return;
        };
        if count + self.matching_upper_bound(available) <= *best {
            return;
        }
        // include v
        let mut without = available.clone();
        let mut v_only = BitSet::new(self.ones.len());
        v_only.insert(v);
        without.subtract(&v_only);
        let mut included = without.clone();
        included.subtract(&self.conflict[v]);
        self.matching_search(&included, count + 1, best);
        // exclude v
        self.matching_search(&without, count, best);
    }

    fn can_match(&self, available: &BitSet, need: usize) -> bool {
        if need == 0 {
            return true;
        }
        if self.matching_upper_bound(available) < need {
            return false;
        }
        let Some(v) = available.iter().next() else {
            return false;
        };
        let mut without = available.clone();
        let mut v_only = BitSet::new(self.ones.len());
        v_only.insert(v);
        without.subtract(&v_only);
        let mut included = without.clone();
        included.subtract(&self.conflict[v]);
        if self.can_match(&included, need - 1) {
            return true;
        }
        self.can_match(&without, need)
    }

    /// Lexicographically least maximum matching, as 1-cell positions.
    fn lex_min_matching(&self) -> Vec<usize> {
        if self.ones.is_empty() {
            return Vec::new();
        }
        let beta = self.max_matching_size();
        let mut chosen = Vec::with_capacity(beta);
        let mut available = self.full.clone();
        let mut start = 0;
        while chosen.len() < beta {
            let (i, rest) = self
                .next_matching_element(&available, start, beta - chosen.len() - 1)
                .expect("optimal matching extraction lost its witness");
            chosen.push(i);
            available = rest;
            start = i + 1;
        }
        chosen
    }

    /// Least available cell >= `start` that still admits `need` further
    /// independent cells after it.
    fn next_matching_element(
        &self,
        available: &BitSet,
        start: usize,
        need: usize,
    ) -> Option<(usize, BitSet)> {
        for i in start..self.ones.len() {
            if !available.contains(i) {
                continue;
            }
            let mut rest = available.clone();
            let mut head = BitSet::new(self.ones.len());
            for j in 0..=i {
                head.insert(j);
            }
            rest.subtract(&head);
            rest.subtract(&self.conflict[i]);
            if self.can_match(&rest, need) {
                return Some((i, rest));
            }
        }
        None
    }
}

/// How [`gap_scan`] draws instances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanMode {
    /// Every 0/1 instance of the shape; requires 2^(k^n) within budget.
    Exhaustive,
    /// `count` seeded instances with density 1/2.
    Random { count: u64, seed: u64 },
}

/// One instance whose duality gap was positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanFinding {
    pub index: u64,
    pub matrix: BinaryMultimatrix,
    pub report: GapReport,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapScanReport {
    pub shape: Shape,
    pub r: usize,
    pub instances: u64,
    /// gap value -> number of instances
    pub histogram: BTreeMap<usize, u64>,
    pub counterexamples: Vec<ScanFinding>,
}

/// Measures the duality gap over a family of instances. Deterministic
/// given the mode (random draws use one stream per instance index);
/// instances run in parallel and merge in index order.
pub fn gap_scan(
    shape: Shape,
    r: usize,
    mode: ScanMode,
    cell_budget: usize,
    scan_budget: u64,
) -> Result<GapScanReport> {
    check_r(shape, r)?;
    check_cell_budget(shape, cell_budget)?;
    let count = match mode {
        ScanMode::Exhaustive => {
            let cells = shape.cell_count();
            let required = if cells < 64 {
                1u128 << cells
            } else {
                u128::MAX
            };
            if required > scan_budget as u128 {
                return Err(Error::Budget {
                    what: "exhaustive scan instances",
                    required,
                    limit: scan_budget as u128,
                });
            }
            required as u64
        }
        ScanMode::Random { count, .. } => {
            if count as u128 > scan_budget as u128 {
                return Err(Error::Budget {
                    what: "scan instances",
                    required: count as u128,
                    limit: scan_budget as u128,
                });
            }
            count
        }
    };

    let results: Vec<(u64, GapReport, BinaryMultimatrix)> = (0..count)
        .into_par_iter()
        .map(|index| {
            let m = scan_instance(shape, mode, index);
            duality_gap(&m, r, cell_budget).map(|report| (index, report, m))
        })
        .collect::<Result<_>>()?;

    let mut histogram = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for (index, report, matrix) in results {
        *histogram.entry(report.gap()).or_insert(0u64) += 1;
        if report.gap() > 0 {
            counterexamples.push(ScanFinding {
                index,
                matrix,
                report,
            });
        }
    }
    Ok(GapScanReport {
        shape,
        r,
        instances: count,
        histogram,
        counterexamples,
    })
}

fn scan_instance(shape: Shape, mode: ScanMode, index: u64) -> BinaryMultimatrix {
    match mode {
        ScanMode::Exhaustive => {
            let cells: Vec<bool> = (0..shape.cell_count())
                .map(|j| index >> j & 1 == 1)
                .collect();
            BinaryMultimatrix::from_dense(shape, cells).expect("dense data sized by shape")
        }
        ScanMode::Random { seed, .. } => {
            let mut rng = crate::gen::instance_rng(seed, index);
            random_multimatrix(shape, 0.5, &mut rng)
        }
    }
}
