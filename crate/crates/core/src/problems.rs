//! Benchmark initial-value problems.
//!
//! The catalog holds community-standard shock tubes, a smooth entropy wave
//! and four-quadrant 2D data. Initial grids carry exact cell averages of the
//! conserved variables; reference solutions come from the in-crate exact
//! Riemann solver or, for the entropy wave, from exact advection.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::grid::{Boundary, Grid1D, Grid2D};
use crate::math::cos;
use crate::riemann::{sample, solve_exact, RiemannSolution};
use crate::thermo::{cons_from_prim, ConsState, GasModel, PrimState};
use crate::{Error, Result};

/// Names accepted by [`build`].
pub const CATALOG: [&str; 7] = [
    "sod",
    "lax",
    "double_rarefaction",
    "entropy_wave",
    "quadrant_2d",
    "isentropic_sod",
    "sod_mirrored",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceKind {
    /// Self-similar solution of a single 1D Riemann problem.
    ExactRiemann,
    /// Closed-form smooth solution (the advected entropy wave).
    Analytic,
    /// Only refinement against finer runs is available.
    SelfConvergence,
    None,
}

/// Piecewise-constant 1D block on `[from, to)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Block {
    pub from: f64,
    pub to: f64,
    pub state: PrimState<1>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialData {
    /// Blocks covering the domain, sorted and contiguous.
    Blocks(Vec<Block>),
    /// `ρ = rho0 + amplitude·sin(2π·periods·(x − x_min)/L)` with uniform `u`, `p`.
    EntropyWave {
        rho0: f64,
        amplitude: f64,
        periods: u32,
        u: f64,
        p: f64,
    },
    /// Constant states per quadrant around `split`, ordered
    /// `[lower-left, lower-right, upper-left, upper-right]`.
    Quadrants {
        split: (f64, f64),
        states: [PrimState<2>; 4],
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub name: String,
    pub gas: GasModel,
    /// `x` extent.
    pub x_range: (f64, f64),
    /// `y` extent of 2D problems.
    pub y_range: Option<(f64, f64)>,
    pub t_final: f64,
    pub initial: InitialData,
    pub bc: (Boundary, Boundary),
    pub reference: ReferenceKind,
}

impl ProblemSpec {
    pub fn dimension(&self) -> usize {
        if self.y_range.is_some() {
            2
        } else {
            1
        }
    }

    /// Two-state shock tube with a jump at `x0`; the reference is the exact
    /// Riemann solution.
    pub fn riemann(
        name: &str,
        gas: GasModel,
        x_range: (f64, f64),
        x0: f64,
        left: PrimState<1>,
        right: PrimState<1>,
        t_final: f64,
    ) -> Result<Self> {
        let spec = Self {
            name: name.to_string(),
            gas,
            x_range,
            y_range: None,
            t_final,
            initial: InitialData::Blocks(alloc::vec![
                Block { from: x_range.0, to: x0, state: left },
                Block { from: x0, to: x_range.1, state: right },
            ]),
            bc: (Boundary::Transmissive, Boundary::Transmissive),
            reference: ReferenceKind::ExactRiemann,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Arbitrary piecewise-constant data. Exactly two blocks under a
    /// transmissive boundary get the exact Riemann reference.
    pub fn blocks(name: &str, gas: GasModel, blocks: Vec<Block>, t_final: f64, bc: Boundary) -> Result<Self> {
        let (first, last) = match (blocks.first(), blocks.last()) {
            (Some(f), Some(l)) => (f.from, l.to),
            _ => return Err(Error::InvalidConfig("a problem needs at least one block".into())),
        };
        let reference = if blocks.len() == 2 && bc == Boundary::Transmissive {
            ReferenceKind::ExactRiemann
        } else {
            ReferenceKind::None
        };
        let spec = Self {
            name: name.to_string(),
            gas,
            x_range: (first, last),
            y_range: None,
            t_final,
            initial: InitialData::Blocks(blocks),
            bc: (bc, bc),
            reference,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Periodic entropy wave on `x_range`; over any time the exact solution
    /// is the initial profile translated by `u·t`.
    #[allow(clippy::too_many_arguments)]
    pub fn entropy_wave(
        name: &str,
        gas: GasModel,
        x_range: (f64, f64),
        rho0: f64,
        amplitude: f64,
        periods: u32,
        u: f64,
        p: f64,
        t_final: f64,
    ) -> Result<Self> {
        let spec = Self {
            name: name.to_string(),
            gas,
            x_range,
            y_range: None,
            t_final,
            initial: InitialData::EntropyWave {
                rho0,
                amplitude,
                periods,
                u,
                p,
            },
            bc: (Boundary::Periodic, Boundary::Periodic),
            reference: ReferenceKind::Analytic,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_final > 0.0) || !self.t_final.is_finite() {
            return Err(Error::InvalidConfig(alloc::format!(
                "final time must be positive, got {}",
                self.t_final
            )));
        }
        let extent_ok = |(a, b): (f64, f64)| a.is_finite() && b.is_finite() && b > a;
        if !extent_ok(self.x_range) || !self.y_range.is_none_or(extent_ok) {
            return Err(Error::InvalidConfig("domain extents must be finite and increasing".into()));
        }
        match &self.initial {
            InitialData::Blocks(blocks) => {
                if self.y_range.is_some() {
                    return Err(Error::InvalidConfig("block data is one-dimensional".into()));
                }
                let mut edge = self.x_range.0;
                for b in blocks {
                    if b.from != edge || !(b.to > b.from) {
                        return Err(Error::InvalidConfig("blocks must be contiguous and ordered".into()));
                    }
                    b.state.validate()?;
                    cons_from_prim(&self.gas, &b.state)?;
                    edge = b.to;
                }
                if edge != self.x_range.1 {
                    return Err(Error::InvalidConfig("blocks must cover the domain".into()));
                }
            }
            InitialData::EntropyWave {
                rho0, amplitude, p, u, ..
            } => {
                if !(amplitude.abs() < *rho0) || !u.is_finite() {
                    return Err(Error::InvalidConfig("entropy wave density must stay positive".into()));
                }
                PrimState::new_1d(rho0 - amplitude.abs(), *u, *p).validate()?;
            }
            InitialData::Quadrants { split, states } => {
                let (x, y) = (self.x_range, self.y_range.ok_or(Error::GeometryMismatch)?);
                if !(split.0 > x.0 && split.0 < x.1 && split.1 > y.0 && split.1 < y.1) {
                    return Err(Error::InvalidConfig("quadrant split must lie inside the domain".into()));
                }
                for s in states {
                    s.validate()?;
                }
            }
        }
        Ok(())
    }

    fn uniform_dx(&self, n: usize) -> f64 {
        (self.x_range.1 - self.x_range.0) / n as f64
    }

    /// Exact cell average of the conserved variables over `[a, b]` of a 1D
    /// problem.
    fn cell_average(&self, a: f64, b: f64) -> Result<ConsState<1>> {
        let g = &self.gas;
        match &self.initial {
            InitialData::Blocks(blocks) => {
                let mut acc = ConsState::ZERO;
                for blk in blocks {
                    let overlap = b.min(blk.to) - a.max(blk.from);
                    if overlap > 0.0 {
                        acc += cons_from_prim(g, &blk.state)? * (overlap / (b - a));
                    }
                }
                Ok(acc)
            }
            InitialData::EntropyWave {
                rho0,
                amplitude,
                periods,
                u,
                p,
            } => {
                let rho = *rho0 + amplitude * self.mean_sine(*periods, a, b);
                let w = PrimState::new_1d(rho, *u, *p);
                // ρu and ½ρu² are linear in ρ, p is uniform: the average of
                // the conserved state is the state of the average density
                cons_from_prim(g, &w)
            }
            InitialData::Quadrants { .. } => Err(Error::GeometryMismatch),
        }
    }

    /// Mean of `sin(2π·periods·(x − x_min)/L)` over `[a, b]`.
    fn mean_sine(&self, periods: u32, a: f64, b: f64) -> f64 {
        let k = 2.0 * PI * periods as f64 / (self.x_range.1 - self.x_range.0);
        let x0 = self.x_range.0;
        (cos(k * (a - x0)) - cos(k * (b - x0))) / (k * (b - a))
    }

    /// Initial 1D grid of `n` cells.
    pub fn grid_1d(&self, n: usize) -> Result<Grid1D<1>> {
        if self.dimension() != 1 {
            return Err(Error::GeometryMismatch);
        }
        let dx = self.uniform_dx(n);
        let x0 = self.x_range.0;
        let cells = (0..n)
            .map(|i| self.cell_average(x0 + i as f64 * dx, x0 + (i + 1) as f64 * dx))
            .collect::<Result<Vec<_>>>()?;
        Grid1D::new(x0, dx, cells, self.bc.0)
    }

    /// Initial 2D grid of `nx × ny` cells.
    pub fn grid_2d(&self, nx: usize, ny: usize) -> Result<Grid2D> {
        let (InitialData::Quadrants { split, states }, Some(y_range)) = (&self.initial, self.y_range) else {
            return Err(Error::GeometryMismatch);
        };
        let dx = self.uniform_dx(nx);
        let dy = (y_range.1 - y_range.0) / ny as f64;
        let (x0, y0) = (self.x_range.0, y_range.0);
        let conserved = states
            .iter()
            .map(|s| cons_from_prim(&self.gas, s))
            .collect::<Result<Vec<_>>>()?;
        let mut cells = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            let (ya, yb) = (y0 + j as f64 * dy, y0 + (j + 1) as f64 * dy);
            let below = ((split.1.min(yb) - ya) / dy).clamp(0.0, 1.0);
            for i in 0..nx {
                let (xa, xb) = (x0 + i as f64 * dx, x0 + (i + 1) as f64 * dx);
                let left = ((split.0.min(xb) - xa) / dx).clamp(0.0, 1.0);
                let weights = [
                    left * below,
                    (1.0 - left) * below,
                    left * (1.0 - below),
                    (1.0 - left) * (1.0 - below),
                ];
                let mut u = ConsState::ZERO;
                for (w, c) in weights.iter().zip(&conserved) {
                    if *w > 0.0 {
                        u += *c * *w;
                    }
                }
                cells.push(u);
            }
        }
        Grid2D::new(nx, ny, (x0, y0), (dx, dy), cells, self.bc.0, self.bc.1)
    }

    fn riemann_pair(&self) -> Result<(f64, PrimState<1>, PrimState<1>)> {
        match (&self.initial, self.reference) {
            (InitialData::Blocks(b), ReferenceKind::ExactRiemann) if b.len() == 2 => {
                Ok((b[0].to, b[0].state, b[1].state))
            }
            _ => Err(Error::NoReference(self.name.clone())),
        }
    }

    /// Exact solution of a Riemann-type problem.
    pub fn riemann_solution(&self) -> Result<RiemannSolution> {
        let (_, l, r) = self.riemann_pair()?;
        solve_exact(&self.gas, &l, &r)
    }

    /// Exact primitive state at `(x, t)`.
    pub fn sample_reference(&self, x: f64, t: f64) -> Result<PrimState<1>> {
        match (&self.initial, self.reference) {
            (InitialData::EntropyWave { rho0, amplitude, periods, u, p }, ReferenceKind::Analytic) => {
                let k = 2.0 * PI * *periods as f64 / (self.x_range.1 - self.x_range.0);
                let rho = rho0 + amplitude * crate::math::sin(k * (x - u * t - self.x_range.0));
                Ok(PrimState::new_1d(rho, *u, *p))
            }
            (_, ReferenceKind::ExactRiemann) => {
                let (x0, l, r) = self.riemann_pair()?;
                if t <= 0.0 {
                    return Ok(if x < x0 { l } else { r });
                }
                let sol = solve_exact(&self.gas, &l, &r)?;
                Ok(sample(&sol, &self.gas, &l, &r, (x - x0) / t))
            }
            _ => Err(Error::NoReference(self.name.clone())),
        }
    }

    /// Reference on an `n`-cell grid at time `t`: exact cell averages for the
    /// entropy wave, cell-centre samples for Riemann problems.
    pub fn reference_cells(&self, n: usize, t: f64) -> Result<Vec<ConsState<1>>> {
        let dx = self.uniform_dx(n);
        let x0 = self.x_range.0;
        match (&self.initial, self.reference) {
            (InitialData::EntropyWave { u, .. }, ReferenceKind::Analytic) => (0..n)
                .map(|i| {
                    let shift = u * t;
                    self.cell_average(x0 + i as f64 * dx - shift, x0 + (i + 1) as f64 * dx - shift)
                })
                .collect(),
            (_, ReferenceKind::ExactRiemann) => {
                let (xj, l, r) = self.riemann_pair()?;
                let sol = solve_exact(&self.gas, &l, &r)?;
                (0..n)
                    .map(|i| {
                        let x = x0 + (i as f64 + 0.5) * dx;
                        let w = if t <= 0.0 {
                            if x < xj {
                                l
                            } else {
                                r
                            }
                        } else {
                            sample(&sol, &self.gas, &l, &r, (x - xj) / t)
                        };
                        cons_from_prim(&self.gas, &w)
                    })
                    .collect()
            }
            _ => Err(Error::NoReference(self.name.clone())),
        }
    }
}

/// Copies a 1D line into every row of an `ny`-row 2D grid.
pub fn extrude(line: &Grid1D<1>, ny: usize, (y_min, dy): (f64, f64), bc_y: Boundary) -> Result<Grid2D> {
    let n = line.n_cells();
    let mut cells = Vec::with_capacity(n * ny);
    for _ in 0..ny {
        cells.extend(line.interior().iter().map(|u| ConsState::new(u.rho, [u.m[0], 0.0], u.energy)));
    }
    Grid2D::new(n, ny, (line.x_min(), y_min), (line.dx(), dy), cells, line.bc(), bc_y)
}

/// Looks up a catalog problem by name.
pub fn build(name: &str) -> Result<ProblemSpec> {
    let air = GasModel::polytropic(1.4)?;
    let sod_l = PrimState::new_1d(1.0, 0.0, 1.0);
    let sod_r = PrimState::new_1d(0.125, 0.0, 0.1);
    match name {
        "sod" => ProblemSpec::riemann(name, air, (0.0, 1.0), 0.5, sod_l, sod_r, 0.2),
        "lax" => ProblemSpec::riemann(
            name,
            air,
            (0.0, 1.0),
            0.5,
            PrimState::new_1d(0.445, 0.698, 3.528),
            PrimState::new_1d(0.5, 0.0, 0.571),
            0.13,
        ),
        "double_rarefaction" => ProblemSpec::riemann(
            name,
            air,
            (0.0, 1.0),
            0.5,
            PrimState::new_1d(1.0, -2.0, 0.4),
            PrimState::new_1d(1.0, 2.0, 0.4),
            0.15,
        ),
        "entropy_wave" => ProblemSpec::entropy_wave(name, air, (0.0, 1.0), 1.0, 0.2, 1, 1.0, 1.0, 1.0),
        "isentropic_sod" => {
            let gas = GasModel::isentropic(2.0, 1.0)?;
            let l = PrimState::new_1d(1.0, 0.0, gas.kappa0());
            let r = PrimState::new_1d(0.5, 0.0, gas.kappa0() * 0.25);
            let mut spec = ProblemSpec::riemann(name, gas, (0.0, 1.0), 0.5, l, r, 0.1)?;
            spec.reference = ReferenceKind::SelfConvergence;
            Ok(spec)
        }
        "sod_mirrored" => ProblemSpec::blocks(
            name,
            air,
            alloc::vec![
                Block { from: 0.0, to: 0.25, state: sod_r },
                Block { from: 0.25, to: 0.75, state: sod_l },
                Block { from: 0.75, to: 1.0, state: sod_r },
            ],
            0.1,
            Boundary::Periodic,
        ),
        "quadrant_2d" => {
            let hi = PrimState::new(1.0, [0.0, 0.0], 1.0);
            let lo = PrimState::new(0.125, [0.0, 0.0], 0.1);
            let spec = ProblemSpec {
                name: name.to_string(),
                gas: air,
                x_range: (0.0, 1.0),
                y_range: Some((0.0, 1.0)),
                t_final: 0.15,
                initial: InitialData::Quadrants {
                    split: (0.5, 0.5),
                    states: [hi, lo, lo, hi],
                },
                bc: (Boundary::Transmissive, Boundary::Transmissive),
                reference: ReferenceKind::SelfConvergence,
            };
            spec.validate()?;
            Ok(spec)
        }
        _ => Err(Error::UnknownProblem(name.to_string())),
    }
}

/// Every catalog problem.
pub fn catalog() -> Vec<ProblemSpec> {
    CATALOG.iter().filter_map(|n| build(n).ok()).collect()
}
