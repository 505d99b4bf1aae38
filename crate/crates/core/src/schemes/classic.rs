use alloc::vec::Vec;

use super::{conservative_update, RiemannFlux};
use crate::flux::{flux_along, physical_flux};
use crate::grid::Grid1D;
use crate::thermo::{ConsState, GasModel, Mode, PrimState, VACUUM_THRESHOLD};
use crate::{Error, Result};

/// Maps a face index to the indices (with ghosts) of its left and right cells.
#[inline]
fn face_cells<const D: usize>(grid: &Grid1D<D>, f: usize) -> (usize, usize) {
    (grid.ghost() + f - 1, grid.ghost() + f)
}

fn cell_fluxes<const D: usize>(g: &GasModel, grid: &Grid1D<D>, range: core::ops::Range<usize>) -> Result<Vec<ConsState<D>>> {
    let all = grid.with_ghosts();
    range
        .map(|k| physical_flux(g, &all[k], grid.axis()).map_err(|e| e.in_cell(k.wrapping_sub(grid.ghost()))))
        .collect()
}

/// `F = ½(f_i + f_{i+1}) − (dx/2dt)(u_{i+1} − u_i)`.
pub fn step_lax_friedrichs<const D: usize>(g: &GasModel, grid: &Grid1D<D>, dt: f64) -> Result<Grid1D<D>> {
    let n = grid.n_cells();
    let gh = grid.ghost();
    let all = grid.with_ghosts();
    let f = cell_fluxes(g, grid, gh - 1..gh + n + 1)?;
    let damping = grid.dx() / (2.0 * dt);
    let faces: Vec<_> = (0..=n)
        .map(|k| {
            let (l, r) = face_cells(grid, k);
            (f[k] + f[k + 1]) * 0.5 - (all[r] - all[l]) * damping
        })
        .collect();
    conservative_update(g, grid, dt, &faces)
}

/// First-order Godunov update with exact or HLL interface fluxes.
pub fn step_godunov<const D: usize>(
    g: &GasModel,
    grid: &Grid1D<D>,
    dt: f64,
    flux_kind: RiemannFlux,
) -> Result<Grid1D<D>> {
    let all = grid.with_ghosts();
    let faces = (0..=grid.n_cells())
        .map(|k| {
            let (l, r) = face_cells(grid, k);
            flux_kind.eval(g, &all[l], &all[r], grid.axis()).map_err(|e| e.in_cell(k))
        })
        .collect::<Result<Vec<_>>>()?;
    conservative_update(g, grid, dt, &faces)
}

/// Two-step Lax–Wendroff: half-step face states, then fluxes of those states.
pub fn step_richtmyer<const D: usize>(g: &GasModel, grid: &Grid1D<D>, dt: f64) -> Result<Grid1D<D>> {
    let n = grid.n_cells();
    let gh = grid.ghost();
    let all = grid.with_ghosts();
    let f = cell_fluxes(g, grid, gh - 1..gh + n + 1)?;
    let half = dt / (2.0 * grid.dx());
    let faces = (0..=n)
        .map(|k| {
            let (l, r) = face_cells(grid, k);
            let mid = (all[l] + all[r]) * 0.5 - (f[k + 1] - f[k]) * half;
            physical_flux(g, &mid, grid.axis()).map_err(|e| e.in_cell(k))
        })
        .collect::<Result<Vec<_>>>()?;
    conservative_update(g, grid, dt, &faces)
}

/// Flux of an intermediate predictor state. Near strong jumps the one-sided
/// predictor can carry a transiently negative pressure; the flux is still
/// well defined and only the corrected state has to be physical.
fn predictor_flux<const D: usize>(g: &GasModel, u: &ConsState<D>, axis: usize) -> Result<ConsState<D>> {
    if !(u.rho > VACUUM_THRESHOLD) || !u.energy.is_finite() || u.m.iter().any(|m| !m.is_finite()) {
        return Err(Error::InvalidState {
            reason: "predicted density is not above the vacuum threshold",
            rho: u.rho,
            p: f64::NAN,
        });
    }
    let v = u.m.map(|m| m / u.rho);
    let p = match g.mode() {
        Mode::FullEuler => (g.gamma() - 1.0) * (u.energy - u.kinetic_energy()),
        Mode::Isentropic => g.barotropic_pressure(u.rho),
    };
    Ok(flux_along(g, &PrimState::new(u.rho, v, p), u, axis))
}

/// Forward-difference predictor, backward-difference corrector. The
/// equivalent face flux is `F_{i+½} = ½(f(u_{i+1}) + f(u*_i))`.
pub fn step_maccormack<const D: usize>(g: &GasModel, grid: &Grid1D<D>, dt: f64) -> Result<Grid1D<D>> {
    let n = grid.n_cells();
    let gh = grid.ghost();
    let all = grid.with_ghosts();
    // fluxes of cells -1..=n
    let f = cell_fluxes(g, grid, gh - 1..gh + n + 1)?;
    let ratio = dt / grid.dx();
    let faces = (0..=n)
        .map(|k| {
            let (l, _) = face_cells(grid, k);
            let predicted = all[l] - (f[k + 1] - f[k]) * ratio;
            let fp = predictor_flux(g, &predicted, grid.axis()).map_err(|e| e.in_cell(k))?;
            Ok((f[k + 1] + fp) * 0.5)
        })
        .collect::<Result<Vec<_>>>()?;
    conservative_update(g, grid, dt, &faces)
}

/// Quadratic von Neumann–Richtmyer viscosity `q_i = C² ρ_i (Δv_i)²` with
/// `Δv_i = min(v_{i+1} − v_{i−1}, 0)/2`, for every cell including ghosts
/// except the outermost layer (which gets 0).
fn viscosity_with_ghosts<const D: usize>(grid: &Grid1D<D>, coeff: f64) -> Vec<f64> {
    let all = grid.with_ghosts();
    let axis = grid.axis();
    let vel = |u: &ConsState<D>| u.m[axis] / u.rho;
    let mut q = alloc::vec![0.0; all.len()];
    for k in 1..all.len() - 1 {
        let dv = 0.5 * (vel(&all[k + 1]) - vel(&all[k - 1])).min(0.0);
        q[k] = coeff * coeff * all[k].rho * dv * dv;
    }
    q
}

/// Artificial viscosity of the interior cells.
pub fn artificial_viscosity<const D: usize>(g: &GasModel, grid: &Grid1D<D>, coeff: f64) -> Result<Vec<f64>> {
    grid.validate(g)?;
    let q = viscosity_with_ghosts(grid, coeff);
    Ok(q[grid.ghost()..grid.ghost() + grid.n_cells()].to_vec())
}

#[inline]
fn viscous_flux<const D: usize>(g: &GasModel, u: &ConsState<D>, q: f64, axis: usize) -> Result<ConsState<D>> {
    let mut f = physical_flux(g, u, axis)?;
    f.m[axis] += q;
    if g.mode() == Mode::FullEuler {
        f.energy += q * u.m[axis] / u.rho;
    }
    Ok(f)
}

/// Central two-step (Richtmyer) update of the Euler equations with the
/// pressure replaced by `p + q` in the momentum and energy fluxes.
pub fn step_vnr_viscosity<const D: usize>(
    g: &GasModel,
    grid: &Grid1D<D>,
    dt: f64,
    coeff: f64,
) -> Result<Grid1D<D>> {
    let n = grid.n_cells();
    let gh = grid.ghost();
    let axis = grid.axis();
    let all = grid.with_ghosts();
    let q = viscosity_with_ghosts(grid, coeff);
    let f = (gh - 1..gh + n + 1)
        .map(|k| viscous_flux(g, &all[k], q[k], axis).map_err(|e| e.in_cell(k.wrapping_sub(gh))))
        .collect::<Result<Vec<_>>>()?;
    let half = dt / (2.0 * grid.dx());
    let faces = (0..=n)
        .map(|k| {
            let (l, r) = face_cells(grid, k);
            let mid = (all[l] + all[r]) * 0.5 - (f[k + 1] - f[k]) * half;
            viscous_flux(g, &mid, 0.5 * (q[l] + q[r]), axis).map_err(|e| e.in_cell(k))
        })
        .collect::<Result<Vec<_>>>()?;
    conservative_update(g, grid, dt, &faces)
}
