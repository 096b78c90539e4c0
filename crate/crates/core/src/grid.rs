//! Uniform Cartesian grids and cell-centred fields with ghost layers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gas::{StateVec, MAX_VARS};

/// Ghost layers per side: the five-point MP5 stencil plus the BVD neighbour
/// reach needs three.
pub const GHOST: usize = 3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Grid {
    pub ndim: usize,
    /// Physical cell counts; unused axes hold 1.
    pub dims: [usize; 3],
    pub spacing: [f64; 3],
    /// Coordinate of the centre of cell (0, 0, 0).
    pub origin: [f64; 3],
    pub ghost: usize,
}

impl Grid {
    /// Grid covering `[lo, hi]` per active axis with cell counts `dims`.
    pub fn new(ndim: usize, dims: [usize; 3], lo: [f64; 3], hi: [f64; 3]) -> Result<Self> {
        if !(1..=3).contains(&ndim) {
            return Err(Error::Config(format!("ndim must be 1..3, got {ndim}")));
        }
        let mut d = [1usize; 3];
        let mut spacing = [1.0; 3];
        let mut origin = [0.0; 3];
        for a in 0..ndim {
            if dims[a] == 0 {
                return Err(Error::Config(format!("axis {a} has zero cells")));
            }
            if !(hi[a] > lo[a]) {
                return Err(Error::Config(format!("axis {a} has empty extent")));
            }
            d[a] = dims[a];
            spacing[a] = (hi[a] - lo[a]) / dims[a] as f64;
            origin[a] = lo[a] + 0.5 * spacing[a];
        }
        Ok(Grid {
            ndim,
            dims: d,
            spacing,
            origin,
            ghost: GHOST,
        })
    }

    pub fn uniform_1d(n: usize, lo: f64, hi: f64) -> Result<Self> {
        Grid::new(1, [n, 1, 1], [lo, 0.0, 0.0], [hi, 1.0, 1.0])
    }

    pub fn validate(&self) -> Result<()> {
        if self.ghost < GHOST {
            return Err(Error::Config(format!("ghost width {} < {GHOST}", self.ghost)));
        }
        for a in 0..self.ndim {
            if self.dims[a] == 0 || !(self.spacing[a] > 0.0) {
                return Err(Error::Config(format!("axis {a} is degenerate")));
            }
        }
        Ok(())
    }

    /// Ghost width along an axis (zero on inactive axes).
    #[inline]
    pub fn ghost_on(&self, axis: usize) -> usize {
        if axis < self.ndim {
            self.ghost
        } else {
            0
        }
    }

    /// Storage extent along an axis, ghosts included.
    #[inline]
    pub fn extent(&self, axis: usize) -> usize {
        self.dims[axis] + 2 * self.ghost_on(axis)
    }

    pub fn total_cells(&self) -> usize {
        self.extent(0) * self.extent(1) * self.extent(2)
    }

    pub fn interior_cells(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn cell_volume(&self) -> f64 {
        (0..self.ndim).map(|a| self.spacing[a]).product()
    }

    /// Flat cell index of signed interior coordinates (ghosts are negative or
    /// `>= dims`).
    #[inline]
    pub fn index(&self, i: isize, j: isize, k: isize) -> usize {
        let gi = (i + self.ghost_on(0) as isize) as usize;
        let gj = (j + self.ghost_on(1) as isize) as usize;
        let gk = (k + self.ghost_on(2) as isize) as usize;
        (gk * self.extent(1) + gj) * self.extent(0) + gi
    }

    /// Distance in flat cells between neighbours along `axis`.
    #[inline]
    pub fn stride(&self, axis: usize) -> usize {
        match axis {
            0 => 1,
            1 => self.extent(0),
            _ => self.extent(0) * self.extent(1),
        }
    }

    #[inline]
    pub fn center(&self, ijk: [isize; 3]) -> [f64; 3] {
        let mut x = [0.0; 3];
        for a in 0..self.ndim {
            x[a] = self.origin[a] + ijk[a] as f64 * self.spacing[a];
        }
        x
    }

    /// Signed coordinate ranges covering every stored cell.
    pub fn full_range(&self, axis: usize) -> std::ops::Range<isize> {
        let g = self.ghost_on(axis) as isize;
        -g..self.dims[axis] as isize + g
    }

    /// Iterates over interior cells in storage order (`i` fastest).
    pub fn interior(&self) -> impl Iterator<Item = [isize; 3]> + '_ {
        let [nx, ny, nz] = self.dims;
        (0..nz as isize).flat_map(move |k| {
            (0..ny as isize).flat_map(move |j| (0..nx as isize).map(move |i| [i, j, k]))
        })
    }
}

/// Cell-centred field stored cell-major: the `nvars` values of a cell are
/// contiguous.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    pub grid: Grid,
    pub nvars: usize,
    pub data: Vec<f64>,
}

impl Field {
    pub fn new(grid: Grid, nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        let n = grid.total_cells() * nvars;
        Field {
            grid,
            nvars,
            data: vec![0.0; n],
        }
    }

    /// Field whose interior cells hold `f(x)` at each cell centre.
    pub fn from_fn(grid: Grid, nvars: usize, mut f: impl FnMut([f64; 3]) -> StateVec) -> Self {
        let mut out = Field::new(grid, nvars);
        let cells: Vec<_> = out.grid.interior().collect();
        for ijk in cells {
            let s = f(out.grid.center(ijk));
            out.set(ijk, &s);
        }
        out
    }

    #[inline]
    pub fn cell(&self, ijk: [isize; 3]) -> &[f64] {
        let c = self.grid.index(ijk[0], ijk[1], ijk[2]) * self.nvars;
        &self.data[c..c + self.nvars]
    }

    #[inline]
    pub fn cell_mut(&mut self, ijk: [isize; 3]) -> &mut [f64] {
        let c = self.grid.index(ijk[0], ijk[1], ijk[2]) * self.nvars;
        &mut self.data[c..c + self.nvars]
    }

    #[inline]
    pub fn state(&self, ijk: [isize; 3]) -> StateVec {
        self.state_at(self.grid.index(ijk[0], ijk[1], ijk[2]))
    }

    #[inline]
    pub fn state_at(&self, flat: usize) -> StateVec {
        let mut s = [0.0; MAX_VARS];
        let c = flat * self.nvars;
        s[..self.nvars].copy_from_slice(&self.data[c..c + self.nvars]);
        s
    }

    #[inline]
    pub fn set(&mut self, ijk: [isize; 3], s: &StateVec) {
        let n = self.nvars;
        self.cell_mut(ijk).copy_from_slice(&s[..n]);
    }

    #[inline]
    pub fn set_at(&mut self, flat: usize, s: &StateVec) {
        let c = flat * self.nvars;
        self.data[c..c + self.nvars].copy_from_slice(&s[..self.nvars]);
    }

    /// Sum of each variable over interior cells (not scaled by cell volume).
    pub fn interior_sum(&self) -> StateVec {
        let mut acc = [0.0; MAX_VARS];
        for ijk in self.grid.interior() {
            let c = self.cell(ijk);
            for (a, x) in acc.iter_mut().zip(c) {
                *a += x;
            }
        }
        acc
    }

    /// Values of one variable along an interior line through `at` in the
    /// direction `axis`.
    pub fn line(&self, axis: usize, at: [isize; 3], var: usize) -> Vec<f64> {
        (0..self.grid.dims[axis] as isize)
            .map(|m| {
                let mut ijk = at;
                ijk[axis] = m;
                self.cell(ijk)[var]
            })
            .collect()
    }

    pub fn same_shape(&self, other: &Field) -> bool {
        self.grid == other.grid && self.nvars == other.nvars
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn storage_length() {
        let g = Grid::new(2, [4, 5, 1], [0.0; 3], [1.0; 3]).unwrap();
        let f = Field::new(g, 5);
        assert_eq!(f.data.len(), (4 + 6) * (5 + 6) * 5);
    }

    #[test]
    fn centres_and_spacing() {
        let g = Grid::uniform_1d(10, 0.0, 1.0).unwrap();
        assert!((g.spacing[0] - 0.1).abs() < 1e-15);
        assert!((g.center([0, 0, 0])[0] - 0.05).abs() < 1e-15);
        assert!((g.center([-1, 0, 0])[0] + 0.05).abs() < 1e-15);
    }

    #[test]
    fn strides_are_consistent() {
        let g = Grid::new(3, [3, 4, 5], [0.0; 3], [1.0; 3]).unwrap();
        let base = g.index(1, 2, 3);
        assert_eq!(g.index(2, 2, 3) - base, g.stride(0));
        assert_eq!(g.index(1, 3, 3) - base, g.stride(1));
        assert_eq!(g.index(1, 2, 4) - base, g.stride(2));
        assert_eq!(g.index(-3, -3, -3), 0);
    }

    #[test]
    fn rejects_empty_axis() {
        assert!(Grid::new(2, [4, 0, 1], [0.0; 3], [1.0; 3]).is_err());
        assert!(Grid::new(1, [4, 1, 1], [1.0, 0.0, 0.0], [1.0; 3]).is_err());
    }
}
