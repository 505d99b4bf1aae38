//! Uniform cell-averaged grids.
//!
//! A [`Grid1D`] stores its interior cells followed by `ghost` cells on each
//! side; ghosts are refreshed from the boundary condition with
//! [`Grid1D::fill_ghosts`]. A [`Grid2D`] stores only interior cells and hands
//! out rows and columns as [`Grid1D`] lines for dimensional sweeps.

use alloc::vec::Vec;

use crate::thermo::{prim_from_cons, ConsState, GasModel};
use crate::{Error, Result};

/// Ghost cells per side; covers the widest stencil (WENO5).
pub const GHOST: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    /// Zero-gradient: ghosts copy the nearest interior cell.
    Transmissive,
    /// Mirror states and negate the normal velocity.
    Reflective,
    Periodic,
}

impl core::str::FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "transmissive" | "outflow" => Ok(Boundary::Transmissive),
            "reflective" | "wall" => Ok(Boundary::Reflective),
            "periodic" => Ok(Boundary::Periodic),
            other => Err(Error::InvalidConfig(alloc::format!(
                "unknown boundary `{other}` (valid: transmissive, reflective, periodic)"
            ))),
        }
    }
}

impl Boundary {
    pub fn name(&self) -> &'static str {
        match self {
            Boundary::Transmissive => "transmissive",
            Boundary::Reflective => "reflective",
            Boundary::Periodic => "periodic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grid1D<const D: usize> {
    cells: Vec<ConsState<D>>,
    n: usize,
    ghost: usize,
    x_min: f64,
    dx: f64,
    bc: Boundary,
    /// Momentum component normal to the line.
    axis: usize,
}

impl<const D: usize> Grid1D<D> {
    /// Grid along the first coordinate with ghosts already filled.
    pub fn new(x_min: f64, dx: f64, interior: Vec<ConsState<D>>, bc: Boundary) -> Result<Self> {
        Self::along(x_min, dx, interior, bc, 0)
    }

    pub(crate) fn along(
        x_min: f64,
        dx: f64,
        interior: Vec<ConsState<D>>,
        bc: Boundary,
        axis: usize,
    ) -> Result<Self> {
        let n = interior.len();
        if n < 4 {
            return Err(Error::InvalidConfig(alloc::format!("grid needs at least 4 cells, got {n}")));
        }
        if !(dx > 0.0) || !dx.is_finite() {
            return Err(Error::InvalidConfig(alloc::format!("cell width must be positive, got {dx}")));
        }
        let mut cells = Vec::with_capacity(n + 2 * GHOST);
        cells.extend(core::iter::repeat_n(ConsState::ZERO, GHOST));
        cells.extend(interior);
        cells.extend(core::iter::repeat_n(ConsState::ZERO, GHOST));
        let mut grid = Self {
            cells,
            n,
            ghost: GHOST,
            x_min,
            dx,
            bc,
            axis,
        };
        grid.fill_ghosts();
        Ok(grid)
    }

    pub fn n_cells(&self) -> usize {
        self.n
    }

    pub fn ghost(&self) -> usize {
        self.ghost
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn bc(&self) -> Boundary {
        self.bc
    }

    pub fn axis(&self) -> usize {
        self.axis
    }

    pub fn cell_center(&self, i: usize) -> f64 {
        self.x_min + (i as f64 + 0.5) * self.dx
    }

    pub fn length(&self) -> f64 {
        self.n as f64 * self.dx
    }

    pub fn interior(&self) -> &[ConsState<D>] {
        &self.cells[self.ghost..self.ghost + self.n]
    }

    /// All cells including ghosts; interior cell `i` sits at `i + ghost`.
    pub fn with_ghosts(&self) -> &[ConsState<D>] {
        &self.cells
    }

    /// Same geometry and boundary, new interior values; ghosts are refilled.
    pub fn with_interior(&self, interior: Vec<ConsState<D>>) -> Self {
        debug_assert_eq!(interior.len(), self.n);
        let mut next = self.clone();
        next.cells[self.ghost..self.ghost + self.n].copy_from_slice(&interior);
        next.fill_ghosts();
        next
    }

    pub fn same_geometry(&self, other: &Self) -> bool {
        self.n == other.n && self.dx == other.dx && self.x_min == other.x_min && self.axis == other.axis
    }

    pub fn fill_ghosts(&mut self) {
        let (g, n) = (self.ghost, self.n);
        for k in 0..g {
            let (left, right) = match self.bc {
                Boundary::Transmissive => (self.cells[g], self.cells[g + n - 1]),
                Boundary::Reflective => (
                    self.cells[g + k].reflected(self.axis),
                    self.cells[g + n - 1 - k].reflected(self.axis),
                ),
                Boundary::Periodic => (self.cells[g + n - 1 - k], self.cells[g + k]),
            };
            self.cells[g - 1 - k] = left;
            self.cells[g + n + k] = right;
        }
    }

    /// Checks every interior cell, reporting the first invalid one.
    pub fn validate(&self, gas: &GasModel) -> Result<()> {
        for (i, u) in self.interior().iter().enumerate() {
            prim_from_cons(gas, u).map_err(|e| e.in_cell(i))?;
        }
        Ok(())
    }

    /// Mirror image `x → −x` with negated normal velocity.
    pub fn mirrored(&self) -> Self {
        let interior = self.interior().iter().rev().map(|u| u.reflected(self.axis)).collect();
        Self::along(self.x_min, self.dx, interior, self.bc, self.axis).expect("geometry already validated")
    }
}

/// Interior cells of a 2D Cartesian grid, stored row-major (`x` fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D {
    cells: Vec<ConsState<2>>,
    nx: usize,
    ny: usize,
    x_min: f64,
    y_min: f64,
    dx: f64,
    dy: f64,
    bc_x: Boundary,
    bc_y: Boundary,
}

impl Grid2D {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        nx: usize,
        ny: usize,
        (x_min, y_min): (f64, f64),
        (dx, dy): (f64, f64),
        cells: Vec<ConsState<2>>,
        bc_x: Boundary,
        bc_y: Boundary,
    ) -> Result<Self> {
        if nx < 4 || ny < 4 {
            return Err(Error::InvalidConfig(alloc::format!(
                "2D grid needs at least 4x4 cells, got {nx}x{ny}"
            )));
        }
        if !(dx > 0.0 && dy > 0.0) || !dx.is_finite() || !dy.is_finite() {
            return Err(Error::InvalidConfig("cell sizes must be positive".into()));
        }
        if cells.len() != nx * ny {
            return Err(Error::GeometryMismatch);
        }
        Ok(Self {
            cells,
            nx,
            ny,
            x_min,
            y_min,
            dx,
            dy,
            bc_x,
            bc_y,
        })
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn dy(&self) -> f64 {
        self.dy
    }

    pub fn origin(&self) -> (f64, f64) {
        (self.x_min, self.y_min)
    }

    pub fn bc(&self) -> (Boundary, Boundary) {
        (self.bc_x, self.bc_y)
    }

    pub fn cells(&self) -> &[ConsState<2>] {
        &self.cells
    }

    pub fn at(&self, i: usize, j: usize) -> &ConsState<2> {
        &self.cells[j * self.nx + i]
    }

    pub fn cell_center(&self, i: usize, j: usize) -> (f64, f64) {
        (
            self.x_min + (i as f64 + 0.5) * self.dx,
            self.y_min + (j as f64 + 0.5) * self.dy,
        )
    }

    pub fn same_geometry(&self, other: &Self) -> bool {
        self.nx == other.nx
            && self.ny == other.ny
            && self.dx == other.dx
            && self.dy == other.dy
            && self.x_min == other.x_min
            && self.y_min == other.y_min
    }

    /// Row `j` as a line along `x`.
    pub fn row(&self, j: usize) -> Result<Grid1D<2>> {
        let interior = self.cells[j * self.nx..(j + 1) * self.nx].to_vec();
        Grid1D::along(self.x_min, self.dx, interior, self.bc_x, 0)
    }

    /// Column `i` as a line along `y`.
    pub fn column(&self, i: usize) -> Result<Grid1D<2>> {
        let interior = (0..self.ny).map(|j| self.cells[j * self.nx + i]).collect();
        Grid1D::along(self.y_min, self.dy, interior, self.bc_y, 1)
    }

    pub fn set_row(&mut self, j: usize, line: &[ConsState<2>]) {
        self.cells[j * self.nx..(j + 1) * self.nx].copy_from_slice(line);
    }

    pub fn set_column(&mut self, i: usize, line: &[ConsState<2>]) {
        for (j, u) in line.iter().enumerate() {
            self.cells[j * self.nx + i] = *u;
        }
    }

    /// Exchanges the roles of `x` and `y`, including the momentum components.
    pub fn transposed(&self) -> Self {
        let mut cells = Vec::with_capacity(self.cells.len());
        for i in 0..self.nx {
            for j in 0..self.ny {
                let u = self.at(i, j);
                cells.push(ConsState::new(u.rho, [u.m[1], u.m[0]], u.energy));
            }
        }
        Self {
            cells,
            nx: self.ny,
            ny: self.nx,
            x_min: self.y_min,
            y_min: self.x_min,
            dx: self.dy,
            dy: self.dx,
            bc_x: self.bc_y,
            bc_y: self.bc_x,
        }
    }

    pub fn validate(&self, gas: &GasModel) -> Result<()> {
        for (k, u) in self.cells.iter().enumerate() {
            prim_from_cons(gas, u).map_err(|e| e.in_cell(k))?;
        }
        Ok(())
    }
}
