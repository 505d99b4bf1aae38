//! Interface reconstructions for the high-order schemes.

use alloc::format;
use alloc::vec::Vec;
use core::str::FromStr;

use super::{flux_divergence, RiemannFlux};
use crate::grid::Grid1D;
use crate::thermo::{cons_from_prim, prim_from_cons, ConsState, GasModel, PrimState};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Limiter {
    Minmod,
    VanLeer,
}

impl Limiter {
    /// Limited slope from the backward and forward differences.
    #[inline]
    pub fn slope(&self, back: f64, fwd: f64) -> f64 {
        if back * fwd <= 0.0 {
            return 0.0;
        }
        match self {
            Limiter::Minmod => {
                if back > 0.0 {
                    back.min(fwd)
                } else {
                    back.max(fwd)
                }
            }
            Limiter::VanLeer => 2.0 * back * fwd / (back + fwd),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Limiter::Minmod => "minmod",
            Limiter::VanLeer => "vanleer",
        }
    }
}

impl FromStr for Limiter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "minmod" => Ok(Limiter::Minmod),
            "vanleer" => Ok(Limiter::VanLeer),
            _ => Err(Error::InvalidConfig(format!("unknown limiter `{s}` (valid: minmod, vanleer)"))),
        }
    }
}

// Primitive variables as a flat array: ρ, v_1..v_D, p.
fn prim_get<const D: usize>(w: &PrimState<D>, k: usize) -> f64 {
    if k == 0 {
        w.rho
    } else if k <= D {
        w.v[k - 1]
    } else {
        w.p
    }
}

fn prim_set<const D: usize>(w: &mut PrimState<D>, k: usize, value: f64) {
    if k == 0 {
        w.rho = value;
    } else if k <= D {
        w.v[k - 1] = value;
    } else {
        w.p = value;
    }
}

/// Piecewise-linear reconstruction of the primitive variables with limited
/// slopes. Returns `(left, right)` states at faces `0..=n`.
pub fn reconstruct_muscl<const D: usize>(
    g: &GasModel,
    grid: &Grid1D<D>,
    limiter: Limiter,
) -> Result<Vec<(PrimState<D>, PrimState<D>)>> {
    let n = grid.n_cells();
    let gh = grid.ghost();
    let all = grid.with_ghosts();
    // cells -2..=n+1
    let lo = gh - 2;
    let prims = all[lo..gh + n + 2]
        .iter()
        .enumerate()
        .map(|(k, u)| prim_from_cons(g, u).map_err(|e| e.in_cell((k + lo).wrapping_sub(gh))))
        .collect::<Result<Vec<_>>>()?;
    // reconstructed edges of cells -1..=n; index j ↔ prims[j + 1]
    let mut minus = Vec::with_capacity(n + 2);
    let mut plus = Vec::with_capacity(n + 2);
    for j in 1..prims.len() - 1 {
        let mut lo_edge = prims[j];
        let mut hi_edge = prims[j];
        for k in 0..D + 2 {
            let c = prim_get(&prims[j], k);
            let s = limiter.slope(c - prim_get(&prims[j - 1], k), prim_get(&prims[j + 1], k) - c);
            prim_set(&mut lo_edge, k, c - 0.5 * s);
            prim_set(&mut hi_edge, k, c + 0.5 * s);
        }
        minus.push(lo_edge);
        plus.push(hi_edge);
    }
    // face f: left = upper edge of cell f-1, right = lower edge of cell f
    Ok((0..=n).map(|f| (plus[f], minus[f + 1])).collect())
}

/// Optimal linear weights of the three WENO5 substencils.
pub const WENO5_IDEAL_WEIGHTS: [f64; 3] = [0.1, 0.6, 0.3];

#[inline]
fn weno5_candidates(v: &[f64; 5]) -> [f64; 3] {
    [
        (2.0 * v[0] - 7.0 * v[1] + 11.0 * v[2]) / 6.0,
        (-v[1] + 5.0 * v[2] + 2.0 * v[3]) / 6.0,
        (2.0 * v[2] + 5.0 * v[3] - v[4]) / 6.0,
    ]
}

/// Nonlinear WENO-JS weights for the value at the right edge of the centre
/// cell of the stencil `v = (v_{i−2}, …, v_{i+2})`.
#[inline]
pub fn weno5_weights(v: &[f64; 5], eps: f64) -> [f64; 3] {
    let sq = |x: f64| x * x;
    let beta = [
        13.0 / 12.0 * sq(v[0] - 2.0 * v[1] + v[2]) + 0.25 * sq(v[0] - 4.0 * v[1] + 3.0 * v[2]),
        13.0 / 12.0 * sq(v[1] - 2.0 * v[2] + v[3]) + 0.25 * sq(v[1] - v[3]),
        13.0 / 12.0 * sq(v[2] - 2.0 * v[3] + v[4]) + 0.25 * sq(3.0 * v[2] - 4.0 * v[3] + v[4]),
    ];
    let alpha = [0, 1, 2].map(|k| WENO5_IDEAL_WEIGHTS[k] / sq(eps + beta[k]));
    let sum = alpha[0] + alpha[1] + alpha[2];
    alpha.map(|a| a / sum)
}

/// WENO5 value at `x_{i+½}` from the left-biased stencil.
#[inline]
pub fn weno5_face(v: &[f64; 5], eps: f64) -> f64 {
    let w = weno5_weights(v, eps);
    let q = weno5_candidates(v);
    w[0] * q[0] + w[1] * q[1] + w[2] * q[2]
}

/// The fifth-order linear scheme WENO5 reduces to with ideal weights.
pub fn weno5_linear_face(v: &[f64; 5]) -> f64 {
    let q = weno5_candidates(v);
    WENO5_IDEAL_WEIGHTS[0] * q[0] + WENO5_IDEAL_WEIGHTS[1] * q[1] + WENO5_IDEAL_WEIGHTS[2] * q[2]
}

/// Component-wise WENO5 reconstruction of the conserved variables; returns
/// `(left, right)` states at faces `0..=n`.
pub fn reconstruct_weno5<const D: usize>(
    g: &GasModel,
    grid: &Grid1D<D>,
    eps: f64,
) -> Result<Vec<(ConsState<D>, ConsState<D>)>> {
    let n = grid.n_cells();
    let gh = grid.ghost();
    let all = grid.with_ghosts();
    let ncomp = g.n_components(D);
    let mut out = Vec::with_capacity(n + 1);
    for f in 0..=n {
        // cell f-1 is at all[gh + f - 1]
        let c = gh + f - 1;
        let mut left = ConsState::ZERO;
        let mut right = ConsState::ZERO;
        for k in 0..ncomp {
            let vl = [
                all[c - 2].get(k),
                all[c - 1].get(k),
                all[c].get(k),
                all[c + 1].get(k),
                all[c + 2].get(k),
            ];
            let vr = [
                all[c + 3].get(k),
                all[c + 2].get(k),
                all[c + 1].get(k),
                all[c].get(k),
                all[c - 1].get(k),
            ];
            left.set(k, weno5_face(&vl, eps));
            right.set(k, weno5_face(&vr, eps));
        }
        prim_from_cons(g, &left).map_err(|e| e.in_cell(f))?;
        prim_from_cons(g, &right).map_err(|e| e.in_cell(f))?;
        out.push((left, right));
    }
    Ok(out)
}

/// Semi-discrete MUSCL operator `L(u) = −(F_{i+½} − F_{i−½})/dx`.
pub fn muscl_operator<const D: usize>(
    g: &GasModel,
    grid: &Grid1D<D>,
    limiter: Limiter,
    flux: RiemannFlux,
) -> Result<Vec<ConsState<D>>> {
    let faces = reconstruct_muscl(g, grid, limiter)?
        .iter()
        .enumerate()
        .map(|(f, (wl, wr))| {
            let ul = cons_from_prim(g, wl).map_err(|e| e.in_cell(f))?;
            let ur = cons_from_prim(g, wr).map_err(|e| e.in_cell(f))?;
            flux.eval(g, &ul, &ur, grid.axis()).map_err(|e| e.in_cell(f))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(flux_divergence(grid, &faces))
}

/// Semi-discrete WENO5 operator.
pub fn weno_operator<const D: usize>(
    g: &GasModel,
    grid: &Grid1D<D>,
    eps: f64,
    flux: RiemannFlux,
) -> Result<Vec<ConsState<D>>> {
    let faces = reconstruct_weno5(g, grid, eps)?
        .iter()
        .enumerate()
        .map(|(f, (ul, ur))| flux.eval(g, ul, ur, grid.axis()).map_err(|e| e.in_cell(f)))
        .collect::<Result<Vec<_>>>()?;
    Ok(flux_divergence(grid, &faces))
}
