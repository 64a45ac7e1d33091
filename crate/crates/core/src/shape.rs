use std::fmt;

use crate::error::{Error, Result};

/// Hard limit on cell count so constructors fail before trying to
/// allocate something absurd.
pub const MAX_CELLS: u128 = 1 << 26;

/// Dimensions of a cubic multimatrix: `n` axes, each of extent `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shape {
    n: usize,
    k: usize,
}

impl Shape {
    pub fn new(n: usize, k: usize) -> Result<Shape> {
        if n < 2 {
            return Err(Error::input(format!(
                "dimension count n must be >= 2, got {n}"
            )));
        }
        if k < 1 {
            return Err(Error::input(format!("axis extent k must be >= 1, got {k}")));
        }
        let cells = (k as u128).checked_pow(n as u32);
        match cells {
            Some(c) if c <= MAX_CELLS => Ok(Shape { n, k }),
            _ => Err(Error::input(format!(
                "shape {n}^{k} has more than {MAX_CELLS} cells"
            ))),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Total number of cells, `k^n`.
    pub fn cell_count(&self) -> usize {
        self.k.pow(self.n as u32)
    }

    /// Builds a validated coordinate for this shape.
    pub fn coord(&self, indices: &[usize]) -> Result<Coord> {
        if indices.len() != self.n {
            return Err(Error::input(format!(
                "coordinate ({}) has {} indices, shape needs {}",
                join(indices),
                indices.len(),
                self.n
            )));
        }
        for &c in indices {
            if c < 1 || c > self.k {
                return Err(Error::input(format!(
                    "coordinate ({}) is out of range: index {} not in 1..={}",
                    join(indices),
                    c,
                    self.k
                )));
            }
        }
        Ok(Coord(indices.to_vec()))
    }

    /// True when `coord` has the right arity and every index is in range.
    pub fn contains(&self, coord: &Coord) -> bool {
        coord.0.len() == self.n && coord.0.iter().all(|&c| c >= 1 && c <= self.k)
    }

    /// Position of a cell in the fixed dense order: lexicographic with the
    /// last index varying fastest.
    pub fn linear_index(&self, coord: &Coord) -> usize {
        debug_assert!(self.contains(coord));
        let mut idx = 0;
        for &c in &coord.0 {
            idx = idx * self.k + (c - 1);
        }
        idx
    }

    /// Inverse of [`linear_index`](Self::linear_index).
    pub fn coord_at(&self, mut idx: usize) -> Coord {
        debug_assert!(idx < self.cell_count());
        let mut indices = vec![0; self.n];
        for slot in indices.iter_mut().rev() {
            *slot = idx % self.k + 1;
            idx /= self.k;
        }
        Coord(indices)
    }

    /// All coordinates in dense order.
    pub fn coords(&self) -> impl Iterator<Item = Coord> + '_ {
        (0..self.cell_count()).map(|i| self.coord_at(i))
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for _ in 0..self.n {
            if !first {
                write!(f, "x")?;
            }
            write!(f, "{}", self.k)?;
            first = false;
        }
        Ok(())
    }
}

/// 1-based cell address of a multimatrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coord(Vec<usize>);

impl Coord {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Number of positions where the two coordinates hold the same index.
    pub fn agreement(&self, other: &Coord) -> usize {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0.iter().zip(&other.0).filter(|(a, b)| a == b).count()
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", join(&self.0))
    }
}

fn join(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
