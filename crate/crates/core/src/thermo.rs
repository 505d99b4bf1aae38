//! Polytropic gas thermodynamics.
//!
//! States come in two representations: [`PrimState`] (density, velocity,
//! pressure) and [`ConsState`] (density, momentum, total energy density).
//! Both are generic over the spatial dimension `D`.
//!
//! For a polytropic gas `p = R ρ θ`, `e = c_v θ`, `γ = 1 + R/c_v` and
//! `p = κ ρ^γ exp(S/c_v)`. In isentropic mode the pressure is the barotropic
//! law `p = κ₀ ρ^γ` and the energy slot of a [`ConsState`] is unused (zero).

use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::math::{exp, ln, powf, sqrt};
use crate::{Error, Result};

/// Densities and pressures at or below this value are treated as vacuum and
/// rejected.
pub const VACUUM_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    FullEuler,
    Isentropic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasModel {
    gamma: f64,
    gas_constant: f64,
    cv: f64,
    kappa: f64,
    kappa0: f64,
    mode: Mode,
}

impl GasModel {
    /// Builds a fully specified model. `gamma` must agree with `1 + R/c_v`.
    pub fn new(
        gamma: f64,
        gas_constant: f64,
        cv: f64,
        kappa: f64,
        kappa0: f64,
        mode: Mode,
    ) -> Result<Self> {
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(Error::InvalidModel("gamma must be a finite number > 1"));
        }
        for (v, msg) in [
            (gas_constant, "R must be positive"),
            (cv, "c_v must be positive"),
            (kappa, "kappa must be positive"),
            (kappa0, "kappa0 must be positive"),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::InvalidModel(msg));
            }
        }
        let implied = 1.0 + gas_constant / cv;
        if ((implied - gamma) / gamma).abs() > 1e-12 {
            return Err(Error::InvalidModel("gamma must equal 1 + R/c_v"));
        }
        Ok(Self {
            gamma,
            gas_constant,
            cv,
            kappa,
            kappa0,
            mode,
        })
    }

    /// Full Euler model from `gamma` alone: `R = 1`, `c_v = 1/(γ−1)`, `κ = 1`.
    pub fn polytropic(gamma: f64) -> Result<Self> {
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(Error::InvalidModel("gamma must be a finite number > 1"));
        }
        Self::new(gamma, 1.0, 1.0 / (gamma - 1.0), 1.0, 1.0, Mode::FullEuler)
    }

    /// Isentropic model `p = κ₀ ρ^γ`.
    pub fn isentropic(gamma: f64, kappa0: f64) -> Result<Self> {
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(Error::InvalidModel("gamma must be a finite number > 1"));
        }
        Self::new(gamma, 1.0, 1.0 / (gamma - 1.0), 1.0, kappa0, Mode::Isentropic)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn gas_constant(&self) -> f64 {
        self.gas_constant
    }

    pub fn cv(&self) -> f64 {
        self.cv
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn kappa0(&self) -> f64 {
        self.kappa0
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Number of conserved components in `D` dimensions.
    pub fn n_components(&self, dim: usize) -> usize {
        match self.mode {
            Mode::FullEuler => dim + 2,
            Mode::Isentropic => dim + 1,
        }
    }

    pub(crate) fn require(&self, expected: Mode) -> Result<()> {
        if self.mode == expected {
            Ok(())
        } else {
            Err(Error::ModeError { expected })
        }
    }

    /// Barotropic pressure, unchecked.
    #[inline]
    pub(crate) fn barotropic_pressure(&self, rho: f64) -> f64 {
        self.kappa0 * powf(rho, self.gamma)
    }
}

#[inline]
pub(crate) fn dot<const D: usize>(a: &[f64; D], b: &[f64; D]) -> f64 {
    a.iter().zip(b).fold(0.0, |s, (x, y)| s + x * y)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimState<const D: usize> {
    pub rho: f64,
    pub v: [f64; D],
    pub p: f64,
}

impl<const D: usize> PrimState<D> {
    pub const fn new(rho: f64, v: [f64; D], p: f64) -> Self {
        Self { rho, v, p }
    }

    /// Rejects vacuum and non-finite values.
    pub fn validate(&self) -> Result<()> {
        let bad = |reason| {
            Err(Error::InvalidState {
                reason,
                rho: self.rho,
                p: self.p,
            })
        };
        if !(self.rho > VACUUM_THRESHOLD) || !self.rho.is_finite() {
            return bad("density is not above the vacuum threshold");
        }
        if !(self.p > VACUUM_THRESHOLD) || !self.p.is_finite() {
            return bad("pressure is not above the vacuum threshold");
        }
        if self.v.iter().any(|v| !v.is_finite()) {
            return bad("velocity is not finite");
        }
        Ok(())
    }

    /// Same state with the velocity mirrored along `axis`.
    pub fn reflected(mut self, axis: usize) -> Self {
        self.v[axis] = -self.v[axis];
        self
    }
}

impl PrimState<1> {
    pub const fn new_1d(rho: f64, u: f64, p: f64) -> Self {
        Self { rho, v: [u], p }
    }
}

/// Conservative state `(ρ, m, ρE)`. Also used as the carrier of flux vectors,
/// which share its layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConsState<const D: usize> {
    pub rho: f64,
    pub m: [f64; D],
    pub energy: f64,
}

impl<const D: usize> ConsState<D> {
    pub const ZERO: Self = Self {
        rho: 0.0,
        m: [0.0; D],
        energy: 0.0,
    };

    pub const fn new(rho: f64, m: [f64; D], energy: f64) -> Self {
        Self { rho, m, energy }
    }

    /// `|m|² / (2ρ)`.
    #[inline]
    pub fn kinetic_energy(&self) -> f64 {
        0.5 * dot(&self.m, &self.m) / self.rho
    }

    /// Components in the order `(ρ, m₁..m_D, ρE)`; the energy is dropped in
    /// isentropic mode.
    pub fn components(&self, mode: Mode) -> alloc::vec::Vec<f64> {
        let mut out = alloc::vec::Vec::with_capacity(D + 2);
        out.push(self.rho);
        out.extend_from_slice(&self.m);
        if mode == Mode::FullEuler {
            out.push(self.energy);
        }
        out
    }

    /// Inverse of [`ConsState::components`].
    pub fn from_components(mode: Mode, c: &[f64]) -> Self {
        let mut m = [0.0; D];
        m.copy_from_slice(&c[1..=D]);
        let energy = match mode {
            Mode::FullEuler => c[D + 1],
            Mode::Isentropic => 0.0,
        };
        Self { rho: c[0], m, energy }
    }

    /// Component `k` in the `(ρ, m, ρE)` ordering.
    #[inline]
    pub fn get(&self, k: usize) -> f64 {
        if k == 0 {
            self.rho
        } else if k <= D {
            self.m[k - 1]
        } else {
            self.energy
        }
    }

    #[inline]
    pub fn set(&mut self, k: usize, value: f64) {
        if k == 0 {
            self.rho = value;
        } else if k <= D {
            self.m[k - 1] = value;
        } else {
            self.energy = value;
        }
    }

    #[inline]
    pub(crate) fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            rho: f(self.rho),
            m: self.m.map(&f),
            energy: f(self.energy),
        }
    }

    #[inline]
    pub(crate) fn zip(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut m = [0.0; D];
        for (k, out) in m.iter_mut().enumerate() {
            *out = f(self.m[k], other.m[k]);
        }
        Self {
            rho: f(self.rho, other.rho),
            m,
            energy: f(self.energy, other.energy),
        }
    }

    /// Largest absolute component.
    pub fn max_abs(&self) -> f64 {
        self.m
            .iter()
            .fold(self.rho.abs().max(self.energy.abs()), |a, b| a.max(b.abs()))
    }

    pub fn reflected(mut self, axis: usize) -> Self {
        self.m[axis] = -self.m[axis];
        self
    }
}

impl<const D: usize> Add for ConsState<D> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        self.zip(&rhs, |a, b| a + b)
    }
}

impl<const D: usize> AddAssign for ConsState<D> {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const D: usize> Sub for ConsState<D> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self.zip(&rhs, |a, b| a - b)
    }
}

impl<const D: usize> Mul<f64> for ConsState<D> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: f64) -> Self {
        self.map(|a| a * rhs)
    }
}

impl<const D: usize> Neg for ConsState<D> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        self.map(|a| -a)
    }
}

pub fn cons_from_prim<const D: usize>(g: &GasModel, w: &PrimState<D>) -> Result<ConsState<D>> {
    match g.mode {
        Mode::FullEuler => w.validate()?,
        Mode::Isentropic => PrimState::new(w.rho, w.v, 1.0).validate()?,
    }
    let m = w.v.map(|v| w.rho * v);
    let energy = match g.mode {
        Mode::FullEuler => w.p / (g.gamma - 1.0) + 0.5 * w.rho * dot(&w.v, &w.v),
        Mode::Isentropic => 0.0,
    };
    Ok(ConsState { rho: w.rho, m, energy })
}

pub fn prim_from_cons<const D: usize>(g: &GasModel, u: &ConsState<D>) -> Result<PrimState<D>> {
    if !(u.rho > VACUUM_THRESHOLD) || !u.rho.is_finite() {
        return Err(Error::InvalidState {
            reason: "density is not above the vacuum threshold",
            rho: u.rho,
            p: f64::NAN,
        });
    }
    let v = u.m.map(|m| m / u.rho);
    let p = match g.mode {
        Mode::FullEuler => (g.gamma - 1.0) * (u.energy - u.kinetic_energy()),
        Mode::Isentropic => g.barotropic_pressure(u.rho),
    };
    let w = PrimState { rho: u.rho, v, p };
    w.validate()?;
    Ok(w)
}

pub fn sound_speed<const D: usize>(g: &GasModel, w: &PrimState<D>) -> Result<f64> {
    w.validate()?;
    Ok(sound_speed_unchecked(g, w))
}

#[inline]
pub(crate) fn sound_speed_unchecked<const D: usize>(g: &GasModel, w: &PrimState<D>) -> f64 {
    sqrt(g.gamma * w.p / w.rho)
}

/// Specific entropy `S = c_v ln(p / (κ ρ^γ))`.
pub fn entropy<const D: usize>(g: &GasModel, w: &PrimState<D>) -> Result<f64> {
    g.require(Mode::FullEuler)?;
    w.validate()?;
    Ok(entropy_unchecked(g, w.rho, w.p))
}

#[inline]
pub(crate) fn entropy_unchecked(g: &GasModel, rho: f64, p: f64) -> f64 {
    g.cv * ln(p / (g.kappa * powf(rho, g.gamma)))
}

/// Pressure from the `(ρ, S)` constitutive law `p = κ ρ^γ exp(S/c_v)`.
pub fn pressure_from_entropy(g: &GasModel, rho: f64, s: f64) -> f64 {
    g.kappa * powf(rho, g.gamma) * exp(s / g.cv)
}

/// Specific internal energy from `(ρ, S)`: `κ/(γ−1) ρ^(γ−1) exp(S/c_v)`.
pub fn internal_energy_from_entropy(g: &GasModel, rho: f64, s: f64) -> f64 {
    g.kappa / (g.gamma - 1.0) * powf(rho, g.gamma - 1.0) * exp(s / g.cv)
}

/// Specific internal energy `p / ((γ−1) ρ)`.
pub fn internal_energy<const D: usize>(g: &GasModel, w: &PrimState<D>) -> Result<f64> {
    w.validate()?;
    Ok(w.p / ((g.gamma - 1.0) * w.rho))
}

/// Temperature `θ = p / (R ρ)`.
pub fn temperature<const D: usize>(g: &GasModel, w: &PrimState<D>) -> Result<f64> {
    g.require(Mode::FullEuler)?;
    w.validate()?;
    Ok(w.p / (g.gas_constant * w.rho))
}

/// Barotropic pressure `κ₀ ρ^γ`.
pub fn pressure_isentropic(g: &GasModel, rho: f64) -> Result<f64> {
    g.require(Mode::Isentropic)?;
    if !(rho > VACUUM_THRESHOLD) || !rho.is_finite() {
        return Err(Error::InvalidState {
            reason: "density is not above the vacuum threshold",
            rho,
            p: f64::NAN,
        });
    }
    Ok(g.barotropic_pressure(rho))
}
