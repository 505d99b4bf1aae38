//! Shock-capturing finite-volume solvers for the compressible and isentropic
//! Euler equations of gas dynamics.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only numerics:
//!
//! * [`thermo`]: polytropic gas model, primitive/conservative conversions.
//! * [`flux`]: physical fluxes, characteristic speeds, numerical hyperbolicity check.
//! * [`riemann`]: exact and HLL Riemann solvers, Rankine–Hugoniot residual,
//!   entropy admissibility of jumps.
//! * [`grid`]: uniform 1D/2D grids with ghost cells and boundary conditions.
//! * [`schemes`]: Lax–Friedrichs, Godunov, Richtmyer, MacCormack,
//!   von Neumann–Richtmyer viscosity, MUSCL and WENO5 in conservation form.
//! * [`multid`]: Strang dimensional splitting on Cartesian grids.
//! * [`diagnostics`]: conserved totals, discrete entropy production, error
//!   norms, convergence orders, shock location.
//! * [`problems`]: the catalog of benchmark initial-value problems.
//! * [`solver`]: the time loop that ties a field, a scheme and a report together.
//!
//! File formats and the command-line runner live in the companion
//! `gasdyn-cli` crate.
#![no_std]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
mod math;

pub mod diagnostics;
pub mod flux;
pub mod grid;
pub mod multid;
pub mod problems;
pub mod riemann;
pub mod schemes;
pub mod solver;
pub mod thermo;

pub use error::{Error, Result};
pub use grid::{Boundary, Grid1D, Grid2D};
pub use thermo::{ConsState, GasModel, Mode, PrimState};
