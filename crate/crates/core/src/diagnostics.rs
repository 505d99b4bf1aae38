//! Verification instruments: conserved totals, discrete entropy production,
//! error norms, convergence orders and shock location.
//!
//! All totals use [`pairwise_sum`], whose summation tree depends only on the
//! number of terms, so reported digits never depend on evaluation order
//! elsewhere.

use alloc::vec::Vec;

use crate::grid::{Boundary, Grid1D, Grid2D};
use crate::math::log2;
use crate::thermo::{entropy_unchecked, prim_from_cons, ConsState, GasModel, Mode};
use crate::{Error, Result};

/// Sum over a fixed binary tree (sequential below 8 terms).
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 8 {
        return values.iter().fold(0.0, |a, b| a + b);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

fn component_totals<const D: usize>(cells: &[ConsState<D>], ncomp: usize, volume: f64) -> Vec<f64> {
    let mut column = Vec::with_capacity(cells.len());
    (0..ncomp)
        .map(|k| {
            column.clear();
            column.extend(cells.iter().map(|u| u.get(k)));
            pairwise_sum(&column) * volume
        })
        .collect()
}

/// A cell field the diagnostics can integrate over.
pub trait Field: Clone {
    /// Conserved totals `Σ u · volume`, one per active component.
    fn conserved_totals(&self, g: &GasModel) -> Vec<f64>;
    /// `Σ ρ S · volume`.
    fn entropy_total(&self, g: &GasModel) -> Result<f64>;
    fn is_periodic(&self) -> bool;
    fn same_geometry(&self, other: &Self) -> bool;
    fn max_wave_speed(&self, g: &GasModel) -> Result<f64>;
}

fn entropy_density<const D: usize>(g: &GasModel, cells: &[ConsState<D>]) -> Result<Vec<f64>> {
    g.require(Mode::FullEuler)?;
    cells
        .iter()
        .enumerate()
        .map(|(i, u)| {
            let w = prim_from_cons(g, u).map_err(|e| e.in_cell(i))?;
            Ok(w.rho * entropy_unchecked(g, w.rho, w.p))
        })
        .collect()
}

impl<const D: usize> Field for Grid1D<D> {
    fn conserved_totals(&self, g: &GasModel) -> Vec<f64> {
        component_totals(self.interior(), g.n_components(D), self.dx())
    }

    fn entropy_total(&self, g: &GasModel) -> Result<f64> {
        Ok(pairwise_sum(&entropy_density(g, self.interior())?) * self.dx())
    }

    fn is_periodic(&self) -> bool {
        self.bc() == Boundary::Periodic
    }

    fn same_geometry(&self, other: &Self) -> bool {
        Grid1D::same_geometry(self, other)
    }

    fn max_wave_speed(&self, g: &GasModel) -> Result<f64> {
        crate::flux::max_wave_speed(g, self.interior())
    }
}

impl Field for Grid2D {
    fn conserved_totals(&self, g: &GasModel) -> Vec<f64> {
        component_totals(self.cells(), g.n_components(2), self.dx() * self.dy())
    }

    fn entropy_total(&self, g: &GasModel) -> Result<f64> {
        Ok(pairwise_sum(&entropy_density(g, self.cells())?) * self.dx() * self.dy())
    }

    fn is_periodic(&self) -> bool {
        self.bc() == (Boundary::Periodic, Boundary::Periodic)
    }

    fn same_geometry(&self, other: &Self) -> bool {
        Grid2D::same_geometry(self, other)
    }

    fn max_wave_speed(&self, g: &GasModel) -> Result<f64> {
        crate::flux::max_wave_speed(g, self.cells())
    }
}

pub fn conserved_totals<F: Field>(g: &GasModel, grid: &F) -> Vec<f64> {
    grid.conserved_totals(g)
}

/// `[Σ ρS dV](after) − [Σ ρS dV](before)` on a periodic domain, where
/// boundary entropy fluxes cancel and the difference is pure production.
pub fn entropy_production<F: Field>(g: &GasModel, before: &F, after: &F) -> Result<f64> {
    if !before.same_geometry(after) {
        return Err(Error::GeometryMismatch);
    }
    if !before.is_periodic() || !after.is_periodic() {
        return Err(Error::NonPeriodic);
    }
    Ok(after.entropy_total(g)? - before.entropy_total(g)?)
}

/// Largest relative change of any conserved total, measured against
/// `max(|total|, Σ|u| dV)` so that zero totals (e.g. momentum) are handled.
pub fn conservation_drift<const D: usize>(g: &GasModel, initial: &Grid1D<D>, current: &Grid1D<D>) -> f64 {
    let t0 = initial.conserved_totals(g);
    let t1 = current.conserved_totals(g);
    let ncomp = t0.len();
    let scale: Vec<f64> = (0..ncomp)
        .map(|k| {
            let abs: Vec<f64> = initial.interior().iter().map(|u| u.get(k).abs()).collect();
            (pairwise_sum(&abs) * initial.dx()).max(t0[k].abs())
        })
        .collect();
    (0..ncomp)
        .map(|k| if scale[k] > 0.0 { (t1[k] - t0[k]).abs() / scale[k] } else { (t1[k] - t0[k]).abs() })
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorNorms {
    pub l1: f64,
    pub linf: f64,
}

/// Per-component `L1 = Σ|u_i − ref_i| dx` and `L∞ = max|u_i − ref_i|`.
pub fn error_norms<const D: usize>(
    g: &GasModel,
    grid: &Grid1D<D>,
    reference: &[ConsState<D>],
) -> Result<Vec<ErrorNorms>> {
    if reference.len() != grid.n_cells() {
        return Err(Error::GeometryMismatch);
    }
    let mut diff = Vec::with_capacity(reference.len());
    Ok((0..g.n_components(D))
        .map(|k| {
            diff.clear();
            diff.extend(grid.interior().iter().zip(reference).map(|(u, r)| (u.get(k) - r.get(k)).abs()));
            ErrorNorms {
                l1: pairwise_sum(&diff) * grid.dx(),
                linf: diff.iter().fold(0.0, |a: f64, b| a.max(*b)),
            }
        })
        .collect())
}

/// Scalar version of [`error_norms`].
pub fn error_norms_scalar(dx: f64, values: &[f64], reference: &[f64]) -> Result<ErrorNorms> {
    if values.len() != reference.len() {
        return Err(Error::GeometryMismatch);
    }
    let diff: Vec<f64> = values.iter().zip(reference).map(|(a, b)| (a - b).abs()).collect();
    Ok(ErrorNorms {
        l1: pairwise_sum(&diff) * dx,
        linf: diff.iter().fold(0.0, |a: f64, b| a.max(*b)),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceFit {
    /// Least-squares slope of `log(error)` against `log(dx)`.
    pub order: f64,
    /// False when the errors do not decrease with every refinement.
    pub monotone: bool,
}

pub fn convergence_order(errors: &[(f64, f64)]) -> Result<ConvergenceFit> {
    if errors.len() < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            got: errors.len(),
        });
    }
    if errors.iter().any(|(dx, e)| !(*dx > 0.0) || !(*e > 0.0)) {
        return Err(Error::InvalidConfig("convergence data needs positive dx and errors".into()));
    }
    let pts: Vec<(f64, f64)> = errors.iter().map(|(dx, e)| (log2(*dx), log2(*e))).collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidConfig("convergence data needs distinct dx".into()));
    }
    let mut sorted = errors.to_vec();
    sorted.sort_by(|a, b| b.0.total_cmp(&a.0));
    let monotone = sorted.windows(2).all(|w| w[1].1 < w[0].1);
    Ok(ConvergenceFit {
        order: sxy / sxx,
        monotone,
    })
}

/// Default relative density jump that flags a face as steep.
pub const SHOCK_THRESHOLD: f64 = 0.1;

/// Positions of steep density fronts: runs of consecutive interior faces
/// with `|Δρ| / min(ρ_i, ρ_{i+1}) > threshold`, each reported at the midpoint
/// of its run.
pub fn shock_locator<const D: usize>(grid: &Grid1D<D>, threshold: f64) -> Vec<f64> {
    let cells = grid.interior();
    let face_x = |i: usize| grid.x_min() + (i + 1) as f64 * grid.dx();
    let mut out = Vec::new();
    let mut run: Option<(usize, usize)> = None;
    for i in 0..cells.len() - 1 {
        let (a, b) = (cells[i].rho, cells[i + 1].rho);
        let steep = (b - a).abs() / a.min(b) > threshold;
        run = match (run, steep) {
            (None, true) => Some((i, i)),
            (Some((s, _)), true) => Some((s, i)),
            (Some((s, e)), false) => {
                out.push(0.5 * (face_x(s) + face_x(e)));
                None
            }
            (None, false) => None,
        };
    }
    if let Some((s, e)) = run {
        out.push(0.5 * (face_x(s) + face_x(e)));
    }
    out
}

/// Per-step record of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub step: usize,
    pub time: f64,
    pub dt: f64,
    pub totals: Vec<f64>,
    /// `Σ ρS dV`; `None` in isentropic mode.
    pub entropy_total: Option<f64>,
    /// Entropy produced during this step; `None` when not evaluated
    /// (non-periodic domain or isentropic mode).
    pub entropy_production: Option<f64>,
    pub max_wave_speed: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunReport {
    /// Names of the conserved totals, e.g. `["mass", "momentum_x", "energy"]`.
    pub component_names: Vec<&'static str>,
    /// Step 0 holds the initial state with `dt = 0`.
    pub steps: Vec<StepRecord>,
    /// Final density error norms when a reference solution is attached.
    pub density_error: Option<ErrorNorms>,
}

impl RunReport {
    pub fn component_names(mode: Mode, dim: usize) -> Vec<&'static str> {
        let mut names = alloc::vec!["mass"];
        names.extend(["momentum_x", "momentum_y", "momentum_z"].iter().take(dim));
        if mode == Mode::FullEuler {
            names.push("energy");
        }
        names
    }

    pub fn final_time(&self) -> f64 {
        self.steps.last().map_or(0.0, |s| s.time)
    }

    /// Sum of the per-step entropy productions, if they were evaluated.
    pub fn total_entropy_production(&self) -> Option<f64> {
        self.steps.iter().skip(1).map(|s| s.entropy_production).sum()
    }
}
