use num::BigRational;
use num::Zero;

use crate::error::{Error, Result};
use crate::shape::{Coord, Shape};

/// n-dimensional 0/1 array with `k` cells per axis.
///
/// Immutable after construction; "updates" go through [`with_cell`]
/// which returns a modified copy.
///
/// [`with_cell`]: BinaryMultimatrix::with_cell
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMultimatrix {
    shape: Shape,
    cells: Vec<bool>,
}

impl BinaryMultimatrix {
    pub fn zeros(shape: Shape) -> BinaryMultimatrix {
        BinaryMultimatrix {
            shape,
            cells: vec![false; shape.cell_count()],
        }
    }

    /// Matrix that is 1 exactly on the given coordinates.
    pub fn from_entries<'a, I>(shape: Shape, ones: I) -> Result<BinaryMultimatrix>
    where
        I: IntoIterator<Item = &'a [usize]>,
    {
        let mut m = BinaryMultimatrix::zeros(shape);
        for indices in ones {
            let coord = shape.coord(indices)?;
            m.cells[shape.linear_index(&coord)] = true;
        }
        Ok(m)
    }

    /// Matrix from `k^n` values in dense order.
    pub fn from_dense(shape: Shape, values: Vec<bool>) -> Result<BinaryMultimatrix> {
        if values.len() != shape.cell_count() {
            return Err(Error::input(format!(
                "dense data has {} values, shape {} needs {}",
                values.len(),
                shape,
                shape.cell_count()
            )));
        }
        Ok(BinaryMultimatrix {
            shape,
            cells: values,
        })
    }

    pub fn all_ones(shape: Shape) -> BinaryMultimatrix {
        BinaryMultimatrix {
            shape,
            cells: vec![true; shape.cell_count()],
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn get(&self, coord: &Coord) -> bool {
        self.cells[self.shape.linear_index(coord)]
    }

    pub(crate) fn get_linear(&self, idx: usize) -> bool {
        self.cells[idx]
    }

    /// Copy with one cell changed.
    pub fn with_cell(&self, coord: &Coord, value: bool) -> BinaryMultimatrix {
        let mut next = self.clone();
        next.cells[self.shape.linear_index(coord)] = value;
        next
    }

    /// Coordinates of the 1-cells in dense order.
    pub fn ones(&self) -> impl Iterator<Item = Coord> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &v)| v)
            .map(|(i, _)| self.shape.coord_at(i))
    }

    pub fn count_ones(&self) -> usize {
        self.cells.iter().filter(|&&v| v).count()
    }

    pub fn is_empty(&self) -> bool {
        self.count_ones() == 0
    }
}

/// n-dimensional array of exact rational costs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostMultimatrix {
    shape: Shape,
    cells: Vec<BigRational>,
}

impl CostMultimatrix {
    pub fn zeros(shape: Shape) -> CostMultimatrix {
        CostMultimatrix {
            shape,
            cells: vec![BigRational::zero(); shape.cell_count()],
        }
    }

    pub fn from_dense(shape: Shape, values: Vec<BigRational>) -> Result<CostMultimatrix> {
        if values.len() != shape.cell_count() {
            return Err(Error::input(format!(
                "dense data has {} values, shape {} needs {}",
                values.len(),
                shape,
                shape.cell_count()
            )));
        }
        Ok(CostMultimatrix {
            shape,
            cells: values,
        })
    }

    /// Costs from sparse entries; unlisted cells are zero.
    pub fn from_entries<'a, I>(shape: Shape, entries: I) -> Result<CostMultimatrix>
    where
        I: IntoIterator<Item = (&'a [usize], BigRational)>,
    {
        let mut m = CostMultimatrix::zeros(shape);
        for (indices, value) in entries {
            let coord = shape.coord(indices)?;
            m.cells[shape.linear_index(&coord)] = value;
        }
        Ok(m)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn get(&self, coord: &Coord) -> &BigRational {
        &self.cells[self.shape.linear_index(coord)]
    }

    pub(crate) fn get_linear(&self, idx: usize) -> &BigRational {
        &self.cells[idx]
    }

    pub(crate) fn set_linear(&mut self, idx: usize, value: BigRational) {
        self.cells[idx] = value;
    }

    pub fn values(&self) -> &[BigRational] {
        &self.cells
    }

    pub fn count_nonzero(&self) -> usize {
        self.cells.iter().filter(|v| !v.is_zero()).count()
    }
}
