//! Physical fluxes and characteristic structure of the Euler systems.

use alloc::vec::Vec;
use core::ops::Deref;

use nalgebra::DMatrix;

use crate::math::sqrt;
use crate::thermo::{dot, prim_from_cons, sound_speed_unchecked, ConsState, GasModel, Mode, PrimState};
use crate::{Error, Result};

/// Unit vector `ξ` selecting a flux direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Direction<const D: usize> {
    xi: [f64; D],
}

impl<const D: usize> Direction<D> {
    pub fn new(xi: [f64; D]) -> Result<Self> {
        let norm = sqrt(dot(&xi, &xi));
        if (norm - 1.0).abs() > 1e-14 {
            return Err(Error::InvalidConfig(alloc::format!(
                "direction must be a unit vector, |xi| = {norm}"
            )));
        }
        Ok(Self { xi })
    }

    /// Normalizes an arbitrary nonzero vector.
    pub fn normalized(v: [f64; D]) -> Result<Self> {
        let norm = sqrt(dot(&v, &v));
        if !(norm > 0.0) || !norm.is_finite() {
            return Err(Error::InvalidConfig("direction vector must be nonzero".into()));
        }
        Ok(Self { xi: v.map(|c| c / norm) })
    }

    /// Coordinate direction `e_k`.
    pub fn axis(k: usize) -> Self {
        let mut xi = [0.0; D];
        xi[k] = 1.0;
        Self { xi }
    }

    pub fn xi(&self) -> &[f64; D] {
        &self.xi
    }
}

/// Vector of the `m` active conserved quantities (`m = d+2` full Euler,
/// `d+1` isentropic).
#[derive(Debug, Clone, PartialEq)]
pub struct StateVec(pub Vec<f64>);

impl Deref for StateVec {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl StateVec {
    pub fn from_cons<const D: usize>(mode: Mode, u: &ConsState<D>) -> Self {
        Self(u.components(mode))
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0f64, |a, b| a.max(b.abs()))
    }
}

/// Flux of a validated state along `axis`, as a [`ConsState`]-shaped vector.
#[inline]
pub(crate) fn flux_along<const D: usize>(
    g: &GasModel,
    w: &PrimState<D>,
    u: &ConsState<D>,
    axis: usize,
) -> ConsState<D> {
    let vn = w.v[axis];
    let mut m = u.m.map(|mj| vn * mj);
    m[axis] += w.p;
    let energy = match g.mode() {
        Mode::FullEuler => vn * (u.energy + w.p),
        Mode::Isentropic => 0.0,
    };
    ConsState { rho: u.m[axis], m, energy }
}

/// Validating flux along a coordinate axis; the hot path of every scheme.
#[inline]
pub fn physical_flux<const D: usize>(g: &GasModel, u: &ConsState<D>, axis: usize) -> Result<ConsState<D>> {
    let w = prim_from_cons(g, u)?;
    Ok(flux_along(g, &w, u, axis))
}

fn flux_in_direction<const D: usize>(g: &GasModel, u: &ConsState<D>, dir: &Direction<D>) -> Result<ConsState<D>> {
    let w = prim_from_cons(g, u)?;
    let vn = dot(&w.v, &dir.xi);
    let mut m = [0.0; D];
    for (j, mj) in m.iter_mut().enumerate() {
        *mj = vn * u.m[j] + w.p * dir.xi[j];
    }
    let energy = match g.mode() {
        Mode::FullEuler => vn * (u.energy + w.p),
        Mode::Isentropic => 0.0,
    };
    Ok(ConsState { rho: dot(&u.m, &dir.xi), m, energy })
}

/// `(ρ v·ξ, (v·ξ) m + p ξ, (v·ξ)(ρE + p))`.
pub fn flux_euler<const D: usize>(g: &GasModel, u: &ConsState<D>, dir: &Direction<D>) -> Result<StateVec> {
    g.require(Mode::FullEuler)?;
    Ok(StateVec::from_cons(Mode::FullEuler, &flux_in_direction(g, u, dir)?))
}

/// `(ρ v·ξ, (v·ξ) m + κ₀ρ^γ ξ)`.
pub fn flux_isentropic<const D: usize>(
    g: &GasModel,
    u: &ConsState<D>,
    dir: &Direction<D>,
) -> Result<StateVec> {
    g.require(Mode::Isentropic)?;
    Ok(StateVec::from_cons(Mode::Isentropic, &flux_in_direction(g, u, dir)?))
}

/// Flux of either system, chosen by the model's mode.
pub fn flux<const D: usize>(g: &GasModel, u: &ConsState<D>, dir: &Direction<D>) -> Result<StateVec> {
    match g.mode() {
        Mode::FullEuler => flux_euler(g, u, dir),
        Mode::Isentropic => flux_isentropic(g, u, dir),
    }
}

/// Eigenvalues of `ξ·∇f(u)`, sorted ascending.
pub fn char_speeds<const D: usize>(g: &GasModel, u: &ConsState<D>, dir: &Direction<D>) -> Result<Vec<f64>> {
    let w = prim_from_cons(g, u)?;
    let vn = dot(&w.v, &dir.xi);
    let c = sound_speed_unchecked(g, &w);
    let middle = match g.mode() {
        Mode::FullEuler => D,
        Mode::Isentropic => D - 1,
    };
    let mut out = Vec::with_capacity(middle + 2);
    out.push(vn - c);
    out.extend(core::iter::repeat_n(vn, middle));
    out.push(vn + c);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HyperbolicityReport {
    /// Eigenvalues of the finite-difference Jacobian as `(re, im)`, sorted by real part.
    pub numeric: Vec<(f64, f64)>,
    /// Analytic characteristic speeds, sorted.
    pub analytic: Vec<f64>,
    /// `max |re(numeric) − analytic|` over matched pairs.
    pub max_mismatch: f64,
    /// `max |im(numeric)|`.
    pub max_imaginary: f64,
    /// `|v·ξ| + c`, the natural scale of the eigenvalues.
    pub scale: f64,
}

impl HyperbolicityReport {
    /// Whether all eigenvalues are real to `rel_imag · scale` and match the
    /// analytic ones to `rel_match · scale`.
    pub fn passes(&self, rel_imag: f64, rel_match: f64) -> bool {
        self.max_imaginary <= rel_imag * self.scale && self.max_mismatch <= rel_match * self.scale
    }
}

/// Default relative finite-difference step for [`hyperbolicity_check`].
pub const FD_STEP: f64 = 1e-6;

/// Builds the flux Jacobian `ξ·∇f(u)` by central differences with step
/// `h·(1+|u_j|)` per component and compares its numerically computed
/// eigenvalues with [`char_speeds`].
pub fn hyperbolicity_check<const D: usize>(
    g: &GasModel,
    u: &ConsState<D>,
    dir: &Direction<D>,
    h: f64,
) -> Result<HyperbolicityReport> {
    let analytic = char_speeds(g, u, dir)?;
    let mode = g.mode();
    let base = u.components(mode);
    let m = base.len();
    let mut jac = DMatrix::<f64>::zeros(m, m);
    for j in 0..m {
        let step = h * (1.0 + base[j].abs());
        let mut plus = base.clone();
        let mut minus = base.clone();
        plus[j] += step;
        minus[j] -= step;
        let fp = flux(g, &ConsState::<D>::from_components(mode, &plus), dir)?;
        let fm = flux(g, &ConsState::<D>::from_components(mode, &minus), dir)?;
        for i in 0..m {
            jac[(i, j)] = (fp[i] - fm[i]) / (2.0 * step);
        }
    }
    if jac.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularJacobian);
    }
    let eig = jac.complex_eigenvalues();
    let mut numeric: Vec<(f64, f64)> = eig.iter().map(|z| (z.re, z.im)).collect();
    if numeric.len() != m || numeric.iter().any(|(re, im)| !re.is_finite() || !im.is_finite()) {
        return Err(Error::SingularJacobian);
    }
    numeric.sort_by(|a, b| a.0.total_cmp(&b.0));
    let max_mismatch = numeric
        .iter()
        .zip(&analytic)
        .fold(0.0f64, |acc, ((re, _), a)| acc.max((re - a).abs()));
    let max_imaginary = numeric.iter().fold(0.0f64, |acc, (_, im)| acc.max(im.abs()));
    let w = prim_from_cons(g, u)?;
    let scale = dot(&w.v, &dir.xi).abs() + sound_speed_unchecked(g, &w);
    Ok(HyperbolicityReport {
        numeric,
        analytic,
        max_mismatch,
        max_imaginary,
        scale,
    })
}

/// `max |v_k| + c` over the cells and the coordinate directions.
pub fn max_wave_speed<'a, const D: usize>(
    g: &GasModel,
    cells: impl IntoIterator<Item = &'a ConsState<D>>,
) -> Result<f64> {
    let mut smax = 0.0f64;
    for (i, u) in cells.into_iter().enumerate() {
        let w = prim_from_cons(g, u).map_err(|e| e.in_cell(i))?;
        let c = sound_speed_unchecked(g, &w);
        for vk in w.v {
            smax = smax.max(vk.abs() + c);
        }
    }
    Ok(smax)
}
