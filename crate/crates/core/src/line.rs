//! Lines and axis-aligned r-planes of a multimatrix.
//!
//! A line leaves one axis free and pins the other n−1 indices; an
//! r-plane leaves `r` axes free. A shape has `n·k^(n−1)` lines and
//! `C(n,r)·k^(n−r)` r-planes. Enumeration order is fixed: ascending
//! free-axis (set), then fixed indices in lexicographic order.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::shape::{Coord, Shape};

/// One free axis plus pinned values for the remaining axes
/// (in ascending axis order). Identifies `k` cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LineId {
    axis: usize,
    fixed: Vec<usize>,
}

impl LineId {
    pub fn new(shape: Shape, axis: usize, fixed: Vec<usize>) -> Result<LineId> {
        if axis < 1 || axis > shape.n() {
            return Err(Error::input(format!(
                "line axis {axis} not in 1..={}",
                shape.n()
            )));
        }
        if fixed.len() != shape.n() - 1 {
            return Err(Error::input(format!(
                "line needs {} fixed indices, got {}",
                shape.n() - 1,
                fixed.len()
            )));
        }
        if let Some(&bad) = fixed.iter().find(|&&v| v < 1 || v > shape.k()) {
            return Err(Error::input(format!(
                "line fixed index {bad} not in 1..={}",
                shape.k()
            )));
        }
        Ok(LineId { axis, fixed })
    }

    /// The line along `axis` passing through `coord`.
    pub fn through(shape: Shape, coord: &Coord, axis: usize) -> Result<LineId> {
        let fixed = coord
            .indices()
            .iter()
            .enumerate()
            .filter(|(i, _)| i + 1 != axis)
            .map(|(_, &v)| v)
            .collect();
        LineId::new(shape, axis, fixed)
    }

    /// 1-based free axis.
    pub fn axis(&self) -> usize {
        self.axis
    }

    /// Pinned index values for the non-free axes, ascending axis order.
    pub fn fixed(&self) -> &[usize] {
        self.fixed.as_slice()
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axis={} fixed={}", self.axis, join(&self.fixed))
    }
}

/// A set of `r` free axes plus pinned values for the remaining axes.
/// Identifies `k^r` cells. With r = 1 this is a [`LineId`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RPlaneId {
    free: Vec<usize>,
    fixed: Vec<usize>,
}

impl RPlaneId {
    pub fn new(shape: Shape, mut free: Vec<usize>, fixed: Vec<usize>) -> Result<RPlaneId> {
        free.sort_unstable();
        let r = free.len();
        if r < 1 || r > shape.n() {
            return Err(Error::input(format!(
                "plane needs between 1 and {} free axes, got {r}",
                shape.n()
            )));
        }
        if free.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::input("plane free axes must be distinct".to_string()));
        }
        if let Some(&bad) = free.iter().find(|&&a| a < 1 || a > shape.n()) {
            return Err(Error::input(format!(
                "plane free axis {bad} not in 1..={}",
                shape.n()
            )));
        }
        if fixed.len() != shape.n() - r {
            return Err(Error::input(format!(
                "plane needs {} fixed indices, got {}",
                shape.n() - r,
                fixed.len()
            )));
        }
        if let Some(&bad) = fixed.iter().find(|&&v| v < 1 || v > shape.k()) {
            return Err(Error::input(format!(
                "plane fixed index {bad} not in 1..={}",
                shape.k()
            )));
        }
        Ok(RPlaneId { free, fixed })
    }

    /// The plane with the given free axes passing through `coord`.
    pub fn through(shape: Shape, coord: &Coord, free: Vec<usize>) -> Result<RPlaneId> {
        let fixed = coord
            .indices()
            .iter()
            .enumerate()
            .filter(|(i, _)| !free.contains(&(i + 1)))
            .map(|(_, &v)| v)
            .collect();
        RPlaneId::new(shape, free, fixed)
    }

    /// Free axes, sorted ascending.
    pub fn free_axes(&self) -> &[usize] {
        &self.free
    }

    /// Pinned values for the non-free axes, ascending axis order.
    pub fn fixed(&self) -> &[usize] {
        &self.fixed
    }

    pub fn r(&self) -> usize {
        self.free.len()
    }

    /// Reads this plane back as a line when r = 1.
    pub fn as_line(&self, shape: Shape) -> Option<LineId> {
        if self.free.len() == 1 {
            LineId::new(shape, self.free[0], self.fixed.clone()).ok()
        } else {
            None
        }
    }
}

impl From<LineId> for RPlaneId {
    fn from(line: LineId) -> RPlaneId {
        RPlaneId {
            free: vec![line.axis],
            fixed: line.fixed,
        }
    }
}

impl fmt::Display for RPlaneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "free={} fixed={}", join(&self.free), join(&self.fixed))
    }
}

fn join(values: &[usize]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// All `n·k^(n−1)` lines, ascending axis then lexicographic fixed indices.
pub fn lines_of(shape: Shape) -> Vec<LineId> {
    let mut out = Vec::new();
    for axis in 1..=shape.n() {
        for fixed in fixed_tuples(shape.k(), shape.n() - 1) {
            out.push(LineId { axis, fixed });
        }
    }
    out
}

/// All `C(n,r)·k^(n−r)` r-planes, ascending free-axis set then
/// lexicographic fixed indices.
pub fn rplanes_of(shape: Shape, r: usize) -> Result<Vec<RPlaneId>> {
    check_r(shape, r)?;
    let mut out = Vec::new();
    for free in (1..=shape.n()).combinations(r) {
        for fixed in fixed_tuples(shape.k(), shape.n() - r) {
            out.push(RPlaneId {
                free: free.clone(),
                fixed,
            });
        }
    }
    Ok(out)
}

fn fixed_tuples(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=k).map(move |v| {
                    let mut next = prefix.clone();
                    next.push(v);
                    next
                })
            })
            .collect();
    }
    out
}

/// The `k` cells of a line, ascending along the free axis.
pub fn cells_on_line(shape: Shape, line: &LineId) -> Result<Vec<Coord>> {
    // revalidate so callers can hand in ids built for other shapes
    let line = LineId::new(shape, line.axis, line.fixed.clone())?;
    let mut out = Vec::with_capacity(shape.k());
    for v in 1..=shape.k() {
        let mut indices = Vec::with_capacity(shape.n());
        let mut fixed_it = line.fixed.iter();
        for axis in 1..=shape.n() {
            if axis == line.axis {
                indices.push(v);
            } else {
                indices.push(*fixed_it.next().unwrap());
            }
        }
        out.push(shape.coord(&indices)?);
    }
    Ok(out)
}

/// The `k^r` cells of an r-plane, lexicographic.
pub fn cells_on_rplane(shape: Shape, plane: &RPlaneId) -> Result<Vec<Coord>> {
    let plane = RPlaneId::new(shape, plane.free.clone(), plane.fixed.clone())?;
    let mut out = Vec::new();
    for combo in fixed_tuples(shape.k(), plane.free.len()) {
        let mut indices = Vec::with_capacity(shape.n());
        let mut free_it = combo.iter();
        let mut fixed_it = plane.fixed.iter();
        for axis in 1..=shape.n() {
            if plane.free.contains(&axis) {
                indices.push(*free_it.next().unwrap());
            } else {
                indices.push(*fixed_it.next().unwrap());
            }
        }
        out.push(shape.coord(&indices)?);
    }
    out.sort();
    Ok(out)
}

/// True when the two cells are distinct and share a line, i.e. agree in
/// exactly n−1 positions.
pub fn same_line(shape: Shape, p: &Coord, q: &Coord) -> bool {
    assert!(
        shape.contains(p) && shape.contains(q),
        "coordinates must fit the shape"
    );
    p != q && p.agreement(q) == shape.n() - 1
}

/// True when the two cells are distinct and share some r-plane, i.e.
/// agree in at least n−r positions.
pub fn same_rplane(shape: Shape, r: usize, p: &Coord, q: &Coord) -> Result<bool> {
    check_r(shape, r)?;
    assert!(
        shape.contains(p) && shape.contains(q),
        "coordinates must fit the shape"
    );
    Ok(p != q && p.agreement(q) >= shape.n() - r)
}

pub(crate) fn check_r(shape: Shape, r: usize) -> Result<()> {
    if r < 1 || r > shape.n() {
        return Err(Error::input(format!("r = {r} not in 1..={}", shape.n())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(n: usize, k: usize) -> Shape {
        Shape::new(n, k).unwrap()
    }

    #[test]
    fn line_counts_match_formula() {
        assert_eq!(lines_of(shape(2, 4)).len(), 8);
        assert_eq!(lines_of(shape(3, 2)).len(), 12);
        assert_eq!(lines_of(shape(2, 1)).len(), 2);
        for n in 2..=4 {
            for k in 1..=4 {
                let s = shape(n, k);
                assert_eq!(lines_of(s).len(), n * k.pow(n as u32 - 1));
            }
        }
    }

    #[test]
    fn rplane_counts_match_formula() {
        let binom =
            |n: usize, r: usize| -> usize { (1..=r).fold(1, |acc, i| acc * (n - i + 1) / i) };
        for n in 2..=4 {
            for k in 1..=3 {
                let s = shape(n, k);
                for r in 1..=n {
                    let planes = rplanes_of(s, r).unwrap();
                    assert_eq!(planes.len(), binom(n, r) * k.pow((n - r) as u32));
                }
            }
        }
        assert!(rplanes_of(shape(3, 2), 0).is_err());
        assert!(rplanes_of(shape(3, 2), 4).is_err());
    }

    #[test]
    fn cells_on_line_walks_the_free_axis() {
        let s = shape(2, 2);
        let row = LineId::new(s, 2, vec![1]).unwrap();
        let cells = cells_on_line(s, &row).unwrap();
        assert_eq!(
            cells,
            vec![s.coord(&[1, 1]).unwrap(), s.coord(&[1, 2]).unwrap()]
        );

        let s3 = shape(3, 2);
        let line = LineId::new(s3, 1, vec![1, 1]).unwrap();
        let cells = cells_on_line(s3, &line).unwrap();
        assert_eq!(
            cells,
            vec![s3.coord(&[1, 1, 1]).unwrap(), s3.coord(&[2, 1, 1]).unwrap()]
        );

        let s1 = shape(2, 1);
        for line in lines_of(s1) {
            assert_eq!(cells_on_line(s1, &line).unwrap().len(), 1);
        }
    }

    #[test]
    fn invalid_line_is_an_input_error() {
        let s = shape(2, 2);
        assert!(LineId::new(s, 3, vec![1]).is_err());
        assert!(LineId::new(s, 1, vec![5]).is_err());
        let other = LineId::new(shape(2, 4), 1, vec![4]).unwrap();
        assert!(cells_on_line(s, &other).is_err());
    }

    #[test]
    fn same_line_is_exact_agreement_in_all_but_one() {
        let s = shape(3, 2);
        let a = s.coord(&[1, 1, 1]).unwrap();
        let b = s.coord(&[1, 1, 2]).unwrap();
        let c = s.coord(&[1, 2, 2]).unwrap();
        assert!(same_line(s, &a, &b));
        assert!(!same_line(s, &a, &c));
        assert!(!same_line(s, &a, &a));
    }

    #[test]
    fn same_rplane_extremes() {
        let s = shape(3, 2);
        let a = s.coord(&[1, 1, 1]).unwrap();
        let b = s.coord(&[2, 2, 2]).unwrap();
        // whole array is the single 3-plane
        assert!(same_rplane(s, 3, &a, &b).unwrap());
        // full disagreement is not enough for a 2-plane
        assert!(!same_rplane(s, 2, &a, &b).unwrap());
        assert!(same_rplane(s, 5, &a, &b).is_err());
    }

    #[test]
    fn every_cell_lies_on_n_lines() {
        for n in 2..=4 {
            for k in 1..=3 {
                let s = shape(n, k);
                let lines = lines_of(s);
                for coord in s.coords() {
                    let through = lines
                        .iter()
                        .filter(|l| cells_on_line(s, l).unwrap().contains(&coord))
                        .count();
                    assert_eq!(through, n);
                }
            }
        }
    }

    #[test]
    fn same_line_matches_joint_line_membership() {
        // cross-check the positional definition against enumeration,
        // shapes up to 81 cells
        for (n, k) in [(2, 3), (3, 2), (3, 3), (4, 3)] {
            let s = shape(n, k);
            let lines = lines_of(s);
            let cells: Vec<Coord> = s.coords().collect();
            for p in &cells {
                for q in &cells {
                    if p >= q {
                        continue;
                    }
                    let joint = lines.iter().any(|l| {
                        let on = cells_on_line(s, l).unwrap();
                        on.contains(p) && on.contains(q)
                    });
                    assert_eq!(same_line(s, p, q), joint, "{p} vs {q} in {s}");
                }
            }
        }
    }

    #[test]
    fn same_rplane_matches_joint_plane_membership_at_r1() {
        let s = shape(3, 2);
        let cells: Vec<Coord> = s.coords().collect();
        let mut pairs = 0;
        for p in &cells {
            for q in &cells {
                if p >= q {
                    continue;
                }
                pairs += 1;
                assert_eq!(same_rplane(s, 1, p, q).unwrap(), same_line(s, p, q));
            }
        }
        assert_eq!(pairs, 28);
    }
}
