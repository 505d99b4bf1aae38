use alloc::vec::Vec;
use core::ops::{Add, Mul};

use crate::grid::Grid1D;
use crate::thermo::{prim_from_cons, ConsState, GasModel};
use crate::Result;

/// Shu–Osher stages: stage `k` is `a·uⁿ + b·(u⁽ᵏ⁻¹⁾ + dt·L(u⁽ᵏ⁻¹⁾))`.
pub const SSP_RK3_STAGES: [(f64, f64); 3] = [(0.0, 1.0), (0.75, 0.25), (1.0 / 3.0, 2.0 / 3.0)];

/// Third-order strong-stability-preserving Runge–Kutta step for `u' = L(u)`.
pub fn ssp_rk3<T, E>(
    u: &[T],
    dt: f64,
    mut op: impl FnMut(&[T]) -> core::result::Result<Vec<T>, E>,
) -> core::result::Result<Vec<T>, E>
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
{
    let mut stage = u.to_vec();
    for (k, (a, b)) in SSP_RK3_STAGES.into_iter().enumerate() {
        let rhs = op(&stage)?;
        stage = stage
            .iter()
            .zip(&rhs)
            .zip(u)
            .map(|((s, l), un)| {
                let euler = *s + *l * dt;
                if k == 0 {
                    euler
                } else {
                    *un * a + euler * b
                }
            })
            .collect();
    }
    Ok(stage)
}

/// [`ssp_rk3`] on a grid: `spatial_operator` sees each stage with refreshed
/// ghost cells and returns `L` on the interior.
pub fn ssp_rk3_step<const D: usize>(
    g: &GasModel,
    grid: &Grid1D<D>,
    dt: f64,
    spatial_operator: impl Fn(&GasModel, &Grid1D<D>) -> Result<Vec<ConsState<D>>>,
) -> Result<Grid1D<D>> {
    let next = ssp_rk3(grid.interior(), dt, |stage| {
        spatial_operator(g, &grid.with_interior(stage.to_vec()))
    })?;
    for (i, u) in next.iter().enumerate() {
        prim_from_cons(g, u).map_err(|e| e.in_cell(i))?;
    }
    Ok(grid.with_interior(next))
}
