//! Conservation-form 1D schemes.
//!
//! Every scheme computes one numerical flux per face and updates
//! `u_i ← u_i − (dt/dx)(F_{i+½} − F_{i−½})`, so discrete totals telescope
//! and captured discontinuities obey the Rankine–Hugoniot relations.
//! MUSCL and WENO5 provide spatial operators advanced by [`ssp_rk3_step`];
//! the other schemes use their native one- or two-step updates.
//!
//! Faces are indexed `0..=n`: face `f` separates interior cells `f−1` and `f`.

mod classic;
mod reconstruct;
mod rk;

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::str::FromStr;

pub use classic::{
    artificial_viscosity, step_godunov, step_lax_friedrichs, step_maccormack, step_richtmyer, step_vnr_viscosity,
};
pub use reconstruct::{
    muscl_operator, reconstruct_muscl, reconstruct_weno5, weno5_face, weno5_linear_face, weno5_weights,
    weno_operator, Limiter, WENO5_IDEAL_WEIGHTS,
};
pub use rk::{ssp_rk3, ssp_rk3_step, SSP_RK3_STAGES};

use crate::flux::max_wave_speed;
use crate::grid::Grid1D;
use crate::riemann::{godunov_flux_along, hll_flux_along};
use crate::thermo::{prim_from_cons, ConsState, GasModel};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    LaxFriedrichs,
    Godunov,
    GodunovHll,
    Richtmyer,
    MacCormack,
    VnrViscosity,
    Muscl,
    Weno5,
}

impl Scheme {
    pub const ALL: [Scheme; 8] = [
        Scheme::LaxFriedrichs,
        Scheme::Godunov,
        Scheme::GodunovHll,
        Scheme::Richtmyer,
        Scheme::MacCormack,
        Scheme::VnrViscosity,
        Scheme::Muscl,
        Scheme::Weno5,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Scheme::LaxFriedrichs => "lax-friedrichs",
            Scheme::Godunov => "godunov",
            Scheme::GodunovHll => "godunov-hll",
            Scheme::Richtmyer => "richtmyer",
            Scheme::MacCormack => "maccormack",
            Scheme::VnrViscosity => "vnr",
            Scheme::Muscl => "muscl",
            Scheme::Weno5 => "weno5",
        }
    }

    pub fn valid_names() -> String {
        Self::ALL.iter().map(|s| s.name()).collect::<Vec<_>>().join(", ")
    }

    pub fn default_cfl(&self) -> f64 {
        match self {
            Scheme::LaxFriedrichs | Scheme::Godunov | Scheme::GodunovHll => 0.9,
            Scheme::Richtmyer | Scheme::MacCormack => 0.8,
            Scheme::VnrViscosity => 0.45,
            Scheme::Muscl | Scheme::Weno5 => 0.8,
        }
    }

    /// Whether the scheme advances through [`ssp_rk3_step`].
    pub fn is_high_order(&self) -> bool {
        matches!(self, Scheme::Muscl | Scheme::Weno5)
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.to_ascii_lowercase().replace('_', "-");
        let scheme = match key.as_str() {
            "lax-friedrichs" | "lxf" | "laxfriedrichs" => Scheme::LaxFriedrichs,
            "godunov" | "godunov-exact" => Scheme::Godunov,
            "godunov-hll" | "hll" => Scheme::GodunovHll,
            "richtmyer" | "lax-wendroff" => Scheme::Richtmyer,
            "maccormack" | "maccormick" => Scheme::MacCormack,
            "vnr" | "vnr-viscosity" | "von-neumann-richtmyer" => Scheme::VnrViscosity,
            "muscl" => Scheme::Muscl,
            "weno5" | "weno" => Scheme::Weno5,
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "unknown scheme `{s}` (valid: {})",
                    Self::valid_names()
                )))
            }
        };
        Ok(scheme)
    }
}

/// Interface flux used by the reconstruction schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RiemannFlux {
    Exact,
    Hll,
}

impl RiemannFlux {
    #[inline]
    pub fn eval<const D: usize>(
        &self,
        g: &GasModel,
        ul: &ConsState<D>,
        ur: &ConsState<D>,
        axis: usize,
    ) -> Result<ConsState<D>> {
        match self {
            RiemannFlux::Exact => godunov_flux_along(g, ul, ur, axis),
            RiemannFlux::Hll => hll_flux_along(g, ul, ur, axis),
        }
    }
}

/// Time step scaling `dt = cfl·dx/s_max · (dx/reference_dx)^(exponent−1)`,
/// i.e. `dt ∝ dx^exponent` under refinement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DtPower {
    pub reference_dx: f64,
    pub exponent: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeConfig {
    pub scheme: Scheme,
    pub cfl: f64,
    pub limiter: Limiter,
    pub q_visc_coeff: f64,
    pub weno_eps: f64,
    pub interface_flux: RiemannFlux,
    pub dt_power: Option<DtPower>,
}

impl SchemeConfig {
    pub fn new(scheme: Scheme) -> Self {
        Self {
            scheme,
            cfl: scheme.default_cfl(),
            limiter: Limiter::VanLeer,
            q_visc_coeff: 2.0,
            weno_eps: 1e-6,
            interface_flux: RiemannFlux::Hll,
            dt_power: None,
        }
    }

    pub fn with_cfl(mut self, cfl: f64) -> Self {
        self.cfl = cfl;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > 0.0 && self.cfl < 1.0) {
            return Err(Error::InvalidConfig(format!("cfl must lie in (0, 1), got {}", self.cfl)));
        }
        if !(self.q_visc_coeff >= 0.0) || !self.q_visc_coeff.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "artificial viscosity coefficient must be >= 0, got {}",
                self.q_visc_coeff
            )));
        }
        if !(self.weno_eps > 0.0) {
            return Err(Error::InvalidConfig(format!("weno epsilon must be > 0, got {}", self.weno_eps)));
        }
        if let Some(p) = self.dt_power {
            if !(p.reference_dx > 0.0) || !(p.exponent >= 1.0) {
                return Err(Error::InvalidConfig("dt power needs reference_dx > 0 and exponent >= 1".into()));
            }
        }
        Ok(())
    }

    /// Applies the configured CFL number and refinement power to a cell
    /// width and maximum signal speed.
    pub fn time_step(&self, dx: f64, max_speed: f64) -> f64 {
        let mut dt = self.cfl * dx / max_speed;
        if let Some(p) = self.dt_power {
            dt *= crate::math::powf(dx / p.reference_dx, p.exponent - 1.0);
        }
        dt
    }
}

/// `dt = cfl · dx / max_wave_speed`.
pub fn cfl_dt<const D: usize>(g: &GasModel, grid: &Grid1D<D>, cfg: &SchemeConfig) -> Result<f64> {
    let smax = max_wave_speed(g, grid.interior())?;
    let dt = cfg.time_step(grid.dx(), smax);
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidConfig(format!("time step is not positive: {dt}")));
    }
    Ok(dt)
}

/// One step of the configured scheme.
pub fn step<const D: usize>(g: &GasModel, grid: &Grid1D<D>, dt: f64, cfg: &SchemeConfig) -> Result<Grid1D<D>> {
    match cfg.scheme {
        Scheme::LaxFriedrichs => step_lax_friedrichs(g, grid, dt),
        Scheme::Godunov => step_godunov(g, grid, dt, RiemannFlux::Exact),
        Scheme::GodunovHll => step_godunov(g, grid, dt, RiemannFlux::Hll),
        Scheme::Richtmyer => step_richtmyer(g, grid, dt),
        Scheme::MacCormack => step_maccormack(g, grid, dt),
        Scheme::VnrViscosity => step_vnr_viscosity(g, grid, dt, cfg.q_visc_coeff),
        Scheme::Muscl => ssp_rk3_step(g, grid, dt, |g, gr| {
            muscl_operator(g, gr, cfg.limiter, cfg.interface_flux)
        }),
        Scheme::Weno5 => ssp_rk3_step(g, grid, dt, |g, gr| {
            weno_operator(g, gr, cfg.weno_eps, cfg.interface_flux)
        }),
    }
}

/// `u_i − (dt/dx)(F_{i+1} − F_i)` over the interior, validating every cell.
pub(crate) fn conservative_update<const D: usize>(
    g: &GasModel,
    grid: &Grid1D<D>,
    dt: f64,
    faces: &[ConsState<D>],
) -> Result<Grid1D<D>> {
    let ratio = dt / grid.dx();
    let mut next = Vec::with_capacity(grid.n_cells());
    for (i, u) in grid.interior().iter().enumerate() {
        let v = *u - (faces[i + 1] - faces[i]) * ratio;
        prim_from_cons(g, &v).map_err(|e| e.in_cell(i))?;
        next.push(v);
    }
    Ok(grid.with_interior(next))
}

/// `−(F_{i+1} − F_i)/dx` over the interior.
pub(crate) fn flux_divergence<const D: usize>(grid: &Grid1D<D>, faces: &[ConsState<D>]) -> Vec<ConsState<D>> {
    let inv = -1.0 / grid.dx();
    (0..grid.n_cells()).map(|i| (faces[i + 1] - faces[i]) * inv).collect()
}
