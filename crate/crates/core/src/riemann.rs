//! Riemann problems for the 1D Euler equations.
//!
//! [`solve_exact`] finds the star-region pressure by a safeguarded Newton
//! iteration on the two-wave pressure function, classifies each nonlinear
//! wave (shock iff the star pressure exceeds the adjacent pressure), and
//! [`sample`] evaluates the self-similar solution along a ray `x/t`.
//!
//! States of dimension `D > 1` are handled along a normal `axis`; transverse
//! velocity components are passive and jump only across the contact.

use alloc::vec::Vec;

use crate::flux::{flux, flux_along, Direction, StateVec};
use crate::math::{powf, sqrt};
use crate::thermo::{
    cons_from_prim, entropy_unchecked, prim_from_cons, sound_speed_unchecked, ConsState, GasModel, Mode,
    PrimState,
};
use crate::{Error, Result};

/// Relative tolerance on successive star-pressure iterates.
pub const PRESSURE_TOL: f64 = 1e-12;
/// Iteration cap of the star-pressure solve.
pub const MAX_ITERATIONS: usize = 100;
/// Floor for the initial star-pressure guess.
pub const MIN_PRESSURE_GUESS: f64 = 1e-8;
/// Entropy production across a jump must be at least `-ENTROPY_TOL`.
pub const ENTROPY_TOL: f64 = 1e-12;
/// Relative Rankine–Hugoniot residual below which a jump counts as a discontinuity.
pub const RH_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WaveKind {
    Shock,
    Rarefaction,
}

/// One nonlinear wave. For a shock `head == tail` is the shock speed; for a
/// rarefaction `head` is the edge facing the unperturbed state and `tail`
/// the edge facing the star region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Wave {
    pub kind: WaveKind,
    pub head: f64,
    pub tail: f64,
}

impl Wave {
    /// Slowest and fastest signal speeds of the wave.
    pub fn span(&self) -> (f64, f64) {
        (self.head.min(self.tail), self.head.max(self.tail))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiemannSolution {
    /// Normal direction the problem was solved along.
    pub axis: usize,
    pub left: Wave,
    pub right: Wave,
    pub p_star: f64,
    pub u_star: f64,
    pub rho_star_left: f64,
    pub rho_star_right: f64,
    pub iterations: usize,
}

impl RiemannSolution {
    pub fn contact_speed(&self) -> f64 {
        self.u_star
    }
}

/// Normal-direction data of one side.
#[derive(Debug, Clone, Copy)]
struct Side {
    rho: f64,
    u: f64,
    p: f64,
    c: f64,
}

impl Side {
    fn new<const D: usize>(g: &GasModel, w: &PrimState<D>, axis: usize) -> Self {
        Side {
            rho: w.rho,
            u: w.v[axis],
            p: w.p,
            c: sound_speed_unchecked(g, w),
        }
    }
}

/// Velocity change across the wave on side `k` for star pressure `p`, and its derivative.
fn wave_function(g: &GasModel, k: &Side, p: f64) -> (f64, f64) {
    let gamma = g.gamma();
    match g.mode() {
        Mode::FullEuler => {
            if p > k.p {
                let a = 2.0 / ((gamma + 1.0) * k.rho);
                let b = (gamma - 1.0) / (gamma + 1.0) * k.p;
                let q = sqrt(a / (p + b));
                ((p - k.p) * q, q * (1.0 - 0.5 * (p - k.p) / (b + p)))
            } else {
                let z = (gamma - 1.0) / (2.0 * gamma);
                let ratio = p / k.p;
                let f = 2.0 * k.c / (gamma - 1.0) * (powf(ratio, z) - 1.0);
                let df = powf(ratio, -(gamma + 1.0) / (2.0 * gamma)) / (k.rho * k.c);
                (f, df)
            }
        }
        Mode::Isentropic => {
            let rho = powf(p / g.kappa0(), 1.0 / gamma);
            let c = sqrt(gamma * p / rho);
            if p > k.p {
                let gval = (p - k.p) * (1.0 / k.rho - 1.0 / rho);
                let f = sqrt(gval);
                if !(f > 1e-150) {
                    return (f, 1.0 / (k.rho * k.c));
                }
                let dg = (1.0 / k.rho - 1.0 / rho) + (p - k.p) / (gamma * p * rho);
                (f, dg / (2.0 * f))
            } else {
                (2.0 / (gamma - 1.0) * (c - k.c), 1.0 / (rho * c))
            }
        }
    }
}

fn pressure_function(g: &GasModel, l: &Side, r: &Side, p: f64) -> (f64, f64) {
    let (fl, dfl) = wave_function(g, l, p);
    let (fr, dfr) = wave_function(g, r, p);
    (fl + fr + (r.u - l.u), dfl + dfr)
}

fn two_rarefaction_guess(g: &GasModel, l: &Side, r: &Side) -> f64 {
    let gamma = g.gamma();
    let du = r.u - l.u;
    let p = match g.mode() {
        Mode::FullEuler => {
            let z = (gamma - 1.0) / (2.0 * gamma);
            let num = l.c + r.c - 0.5 * (gamma - 1.0) * du;
            let den = l.c / powf(l.p, z) + r.c / powf(r.p, z);
            powf((num / den).max(0.0), 1.0 / z)
        }
        Mode::Isentropic => {
            let c = 0.5 * (l.c + r.c) - 0.25 * (gamma - 1.0) * du;
            let rho = powf((c * c / (gamma * g.kappa0())).max(0.0), 1.0 / (gamma - 1.0));
            g.barotropic_pressure(rho)
        }
    };
    p.max(MIN_PRESSURE_GUESS)
}

fn star_pressure(g: &GasModel, l: &Side, r: &Side) -> Result<(f64, usize)> {
    let gamma = g.gamma();
    let du = r.u - l.u;
    let bound = 2.0 * (l.c + r.c) / (gamma - 1.0);
    if du >= bound {
        return Err(Error::VacuumFormation { du, bound });
    }

    // f is increasing in p and f(0) = du - bound < 0, so [0, hi] brackets the root.
    let mut lo = 0.0;
    let mut hi = l.p.max(r.p).max(MIN_PRESSURE_GUESS);
    let mut expansions = 0;
    while pressure_function(g, l, r, hi).0 <= 0.0 {
        hi *= 2.0;
        expansions += 1;
        if expansions > 2000 || !hi.is_finite() {
            return Err(Error::NoConvergence { iterations: 0 });
        }
    }

    let mut p = two_rarefaction_guess(g, l, r);
    if !(p > lo && p < hi) {
        p = 0.5 * (lo + hi);
    }
    for it in 1..=MAX_ITERATIONS {
        let (f, df) = pressure_function(g, l, r, p);
        if f == 0.0 {
            return Ok((p, it));
        }
        if f < 0.0 {
            lo = p;
        } else {
            hi = p;
        }
        let mut next = p - f / df;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if 2.0 * (next - p).abs() <= PRESSURE_TOL * (next + p) {
            return Ok((next, it));
        }
        p = next;
    }
    Err(Error::NoConvergence {
        iterations: MAX_ITERATIONS,
    })
}

fn star_density(g: &GasModel, k: &Side, p_star: f64) -> f64 {
    let gamma = g.gamma();
    match g.mode() {
        Mode::Isentropic => powf(p_star / g.kappa0(), 1.0 / gamma),
        Mode::FullEuler if p_star > k.p => {
            let mu = (gamma - 1.0) / (gamma + 1.0);
            let ratio = p_star / k.p;
            k.rho * (ratio + mu) / (mu * ratio + 1.0)
        }
        Mode::FullEuler => k.rho * powf(p_star / k.p, 1.0 / gamma),
    }
}

/// Speed of the shock on side `k`; `sign` is −1 for the left wave, +1 for the right.
fn shock_speed(g: &GasModel, k: &Side, p_star: f64, u_star: f64, rho_star: f64, sign: f64) -> f64 {
    let gamma = g.gamma();
    match g.mode() {
        Mode::FullEuler => {
            let ratio = p_star / k.p;
            k.u + sign * k.c * sqrt((gamma + 1.0) / (2.0 * gamma) * ratio + (gamma - 1.0) / (2.0 * gamma))
        }
        Mode::Isentropic => {
            if rho_star == k.rho {
                k.u + sign * k.c
            } else {
                (rho_star * u_star - k.rho * k.u) / (rho_star - k.rho)
            }
        }
    }
}

/// Exact solution of the 1D Riemann problem with data `wl | wr`.
pub fn solve_exact<const D: usize>(g: &GasModel, wl: &PrimState<D>, wr: &PrimState<D>) -> Result<RiemannSolution> {
    solve_exact_along(g, wl, wr, 0)
}

/// [`solve_exact`] with the wave direction along `axis`.
pub fn solve_exact_along<const D: usize>(
    g: &GasModel,
    wl: &PrimState<D>,
    wr: &PrimState<D>,
    axis: usize,
) -> Result<RiemannSolution> {
    let (wl, wr) = match g.mode() {
        Mode::FullEuler => (*wl, *wr),
        Mode::Isentropic => (
            PrimState::new(wl.rho, wl.v, g.barotropic_pressure(wl.rho)),
            PrimState::new(wr.rho, wr.v, g.barotropic_pressure(wr.rho)),
        ),
    };
    wl.validate()?;
    wr.validate()?;
    let l = Side::new(g, &wl, axis);
    let r = Side::new(g, &wr, axis);
    let (p_star, iterations) = star_pressure(g, &l, &r)?;
    let u_star = 0.5 * (l.u + r.u) + 0.5 * (wave_function(g, &r, p_star).0 - wave_function(g, &l, p_star).0);
    let rho_star_left = star_density(g, &l, p_star);
    let rho_star_right = star_density(g, &r, p_star);

    let left = if p_star > l.p {
        let s = shock_speed(g, &l, p_star, u_star, rho_star_left, -1.0);
        Wave { kind: WaveKind::Shock, head: s, tail: s }
    } else {
        let c_star = sqrt(g.gamma() * p_star / rho_star_left);
        Wave {
            kind: WaveKind::Rarefaction,
            head: l.u - l.c,
            tail: u_star - c_star,
        }
    };
    let right = if p_star > r.p {
        let s = shock_speed(g, &r, p_star, u_star, rho_star_right, 1.0);
        Wave { kind: WaveKind::Shock, head: s, tail: s }
    } else {
        let c_star = sqrt(g.gamma() * p_star / rho_star_right);
        Wave {
            kind: WaveKind::Rarefaction,
            head: r.u + r.c,
            tail: u_star + c_star,
        }
    };
    Ok(RiemannSolution {
        axis,
        left,
        right,
        p_star,
        u_star,
        rho_star_left,
        rho_star_right,
        iterations,
    })
}

/// Self-similar state on the ray `x/t = speed`.
pub fn sample<const D: usize>(
    sol: &RiemannSolution,
    g: &GasModel,
    wl: &PrimState<D>,
    wr: &PrimState<D>,
    speed: f64,
) -> PrimState<D> {
    let axis = sol.axis;
    let gamma = g.gamma();
    let fan = |w: &PrimState<D>, c: f64, u: f64, c_k: f64| {
        let rho = w.rho * powf(c / c_k, 2.0 / (gamma - 1.0));
        let p = match g.mode() {
            Mode::FullEuler => w.p * powf(c / c_k, 2.0 * gamma / (gamma - 1.0)),
            Mode::Isentropic => g.barotropic_pressure(rho),
        };
        let mut v = w.v;
        v[axis] = u;
        PrimState::new(rho, v, p)
    };
    let star = |w: &PrimState<D>, rho: f64| {
        let mut v = w.v;
        v[axis] = sol.u_star;
        PrimState::new(rho, v, sol.p_star)
    };
    let with_pressure = |w: &PrimState<D>| match g.mode() {
        Mode::FullEuler => *w,
        Mode::Isentropic => PrimState::new(w.rho, w.v, g.barotropic_pressure(w.rho)),
    };

    if speed <= sol.u_star {
        let w = with_pressure(wl);
        match sol.left.kind {
            WaveKind::Shock if speed <= sol.left.head => w,
            WaveKind::Shock => star(&w, sol.rho_star_left),
            WaveKind::Rarefaction if speed <= sol.left.head => w,
            WaveKind::Rarefaction if speed >= sol.left.tail => star(&w, sol.rho_star_left),
            WaveKind::Rarefaction => {
                let (ul, cl) = (w.v[axis], sound_speed_unchecked(g, &w));
                let c = 2.0 / (gamma + 1.0) * (cl + 0.5 * (gamma - 1.0) * (ul - speed));
                let u = 2.0 / (gamma + 1.0) * (cl + 0.5 * (gamma - 1.0) * ul + speed);
                fan(&w, c, u, cl)
            }
        }
    } else {
        let w = with_pressure(wr);
        match sol.right.kind {
            WaveKind::Shock if speed >= sol.right.head => w,
            WaveKind::Shock => star(&w, sol.rho_star_right),
            WaveKind::Rarefaction if speed >= sol.right.head => w,
            WaveKind::Rarefaction if speed <= sol.right.tail => star(&w, sol.rho_star_right),
            WaveKind::Rarefaction => {
                let (ur, cr) = (w.v[axis], sound_speed_unchecked(g, &w));
                let c = 2.0 / (gamma + 1.0) * (cr - 0.5 * (gamma - 1.0) * (ur - speed));
                let u = 2.0 / (gamma + 1.0) * (-cr + 0.5 * (gamma - 1.0) * ur + speed);
                fan(&w, c, u, cr)
            }
        }
    }
}

/// Godunov flux: the physical flux of the exact solution on the ray `x/t = 0`.
pub fn godunov_flux_along<const D: usize>(
    g: &GasModel,
    ul: &ConsState<D>,
    ur: &ConsState<D>,
    axis: usize,
) -> Result<ConsState<D>> {
    let wl = prim_from_cons(g, ul)?;
    if ul == ur {
        return Ok(flux_along(g, &wl, ul, axis));
    }
    let wr = prim_from_cons(g, ur)?;
    let sol = solve_exact_along(g, &wl, &wr, axis)?;
    let w0 = sample(&sol, g, &wl, &wr, 0.0);
    let u0 = cons_from_prim(g, &w0)?;
    Ok(flux_along(g, &w0, &u0, axis))
}

/// Two-wave HLL flux along `axis` with Davis speed estimates.
pub fn hll_flux_along<const D: usize>(
    g: &GasModel,
    ul: &ConsState<D>,
    ur: &ConsState<D>,
    axis: usize,
) -> Result<ConsState<D>> {
    let wl = prim_from_cons(g, ul)?;
    let wr = prim_from_cons(g, ur)?;
    let fl = flux_along(g, &wl, ul, axis);
    let fr = flux_along(g, &wr, ur, axis);
    let (cl, cr) = (sound_speed_unchecked(g, &wl), sound_speed_unchecked(g, &wr));
    let (vl, vr) = (wl.v[axis], wr.v[axis]);
    let sl = (vl - cl).min(vr - cr);
    let sr = (vl + cl).max(vr + cr);
    if sl >= 0.0 {
        return Ok(fl);
    }
    if sr <= 0.0 {
        return Ok(fr);
    }
    let inv = 1.0 / (sr - sl);
    Ok(fl.zip(&fr, |a, b| sr * a - sl * b)
        .zip(&ul.zip(ur, |a, b| b - a), |f, du| (f + sl * sr * du) * inv))
}

/// [`hll_flux_along`] in the first coordinate direction.
pub fn hll_flux<const D: usize>(g: &GasModel, ul: &ConsState<D>, ur: &ConsState<D>) -> Result<ConsState<D>> {
    hll_flux_along(g, ul, ur, 0)
}

/// `f(u_R) − f(u_L) − s (u_R − u_L)` in the first coordinate direction.
pub fn rankine_hugoniot_residual<const D: usize>(
    g: &GasModel,
    s: f64,
    ul: &ConsState<D>,
    ur: &ConsState<D>,
) -> Result<StateVec> {
    let dir = Direction::axis(0);
    let fl = flux(g, ul, &dir)?;
    let fr = flux(g, ur, &dir)?;
    let (cl, cr) = (ul.components(g.mode()), ur.components(g.mode()));
    Ok(StateVec(
        (0..fl.len())
            .map(|k| fr[k] - fl[k] - s * (cr[k] - cl[k]))
            .collect::<Vec<_>>(),
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Admissibility {
    pub admissible: bool,
    /// `[m S] − s [ρ S]` across the jump, the production of `ρS`.
    pub production: f64,
}

/// Clausius check of a discontinuity with the entropy pair `(−ρS, −mS)`.
pub fn entropy_admissible<const D: usize>(
    g: &GasModel,
    s: f64,
    ul: &ConsState<D>,
    ur: &ConsState<D>,
) -> Result<Admissibility> {
    g.require(Mode::FullEuler)?;
    let residual = rankine_hugoniot_residual(g, s, ul, ur)?;
    let dir = Direction::axis(0);
    let scale = 1.0
        + flux(g, ul, &dir)?
            .max_abs()
            .max(flux(g, ur, &dir)?.max_abs())
            .max(s.abs() * ul.max_abs().max(ur.max_abs()));
    let worst = residual.max_abs();
    if worst > RH_TOL * scale {
        return Err(Error::NotADiscontinuity { residual: worst });
    }
    let wl = prim_from_cons(g, ul)?;
    let wr = prim_from_cons(g, ur)?;
    let sl = entropy_unchecked(g, wl.rho, wl.p);
    let sr = entropy_unchecked(g, wr.rho, wr.p);
    let production = (ur.m[0] * sr - ul.m[0] * sl) - s * (ur.rho * sr - ul.rho * sl);
    Ok(Admissibility {
        admissible: production >= -ENTROPY_TOL,
        production,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn air() -> GasModel {
        GasModel::polytropic(1.4).unwrap()
    }

    const SOD_L: PrimState<1> = PrimState::new_1d(1.0, 0.0, 1.0);
    const SOD_R: PrimState<1> = PrimState::new_1d(0.125, 0.0, 0.1);

    #[test]
    fn sod_wave_pattern() {
        let g = air();
        let sol = solve_exact(&g, &SOD_L, &SOD_R).unwrap();
        assert_eq!(sol.left.kind, WaveKind::Rarefaction);
        assert_eq!(sol.right.kind, WaveKind::Shock);
        assert!((sol.p_star - 0.30313).abs() < 1e-5);
        assert!((sol.u_star - 0.92745).abs() < 1e-5);
        let w = sample(&sol, &g, &SOD_L, &SOD_R, 0.0);
        assert!((w.rho - 0.42632).abs() < 1e-5, "{w:?}");
    }

    #[test]
    fn identical_states_give_zero_strength_waves() {
        let g = air();
        let w = PrimState::new_1d(0.7, 0.3, 2.0);
        let sol = solve_exact(&g, &w, &w).unwrap();
        assert!((sol.p_star - w.p).abs() <= 1e-12 * w.p);
        assert!((sol.u_star - 0.3).abs() <= 1e-12);
        assert!((sol.rho_star_left - w.rho).abs() <= 1e-12);
        assert!((sol.rho_star_right - w.rho).abs() <= 1e-12);
    }

    #[test]
    fn mirror_symmetry() {
        let g = air();
        let wl = PrimState::new_1d(1.0, 0.4, 1.0);
        let wr = PrimState::new_1d(0.2, -0.3, 0.15);
        let a = solve_exact(&g, &wl, &wr).unwrap();
        let b = solve_exact(&g, &wr.reflected(0), &wl.reflected(0)).unwrap();
        assert!((a.p_star - b.p_star).abs() <= 1e-12 * a.p_star);
        assert!((a.u_star + b.u_star).abs() <= 1e-12);
        assert_eq!(a.left.kind, b.right.kind);
        assert_eq!(a.right.kind, b.left.kind);
    }

    #[test]
    fn vacuum_is_reported() {
        let g = air();
        let wl = PrimState::new_1d(1.0, -10.0, 0.4);
        let wr = PrimState::new_1d(1.0, 10.0, 0.4);
        assert!(matches!(solve_exact(&g, &wl, &wr), Err(Error::VacuumFormation { .. })));
        // strong but admissible double rarefaction
        let wl = PrimState::new_1d(1.0, -2.0, 0.4);
        let wr = PrimState::new_1d(1.0, 2.0, 0.4);
        let sol = solve_exact(&g, &wl, &wr).unwrap();
        assert!(sol.p_star > 0.0 && sol.p_star < 0.01);
        assert_eq!(sol.left.kind, WaveKind::Rarefaction);
        assert_eq!(sol.right.kind, WaveKind::Rarefaction);
    }

    #[test]
    fn far_field_and_fan_continuity() {
        let g = air();
        let sol = solve_exact(&g, &SOD_L, &SOD_R).unwrap();
        assert_eq!(sample(&sol, &g, &SOD_L, &SOD_R, -1e6), SOD_L);
        assert_eq!(sample(&sol, &g, &SOD_L, &SOD_R, 1e6), SOD_R);
        for edge in [sol.left.head, sol.left.tail] {
            let a = sample(&sol, &g, &SOD_L, &SOD_R, edge - 1e-13);
            let b = sample(&sol, &g, &SOD_L, &SOD_R, edge + 1e-13);
            assert!((a.rho - b.rho).abs() <= 1e-10, "{a:?} {b:?}");
            assert!((a.p - b.p).abs() <= 1e-10);
            assert!((a.v[0] - b.v[0]).abs() <= 1e-10);
        }
    }

    #[test]
    fn transverse_velocity_jumps_at_contact() {
        let g = air();
        let wl = PrimState::new(1.0, [0.0, 0.5], 1.0);
        let wr = PrimState::new(0.125, [0.0, -0.25], 0.1);
        let sol = solve_exact(&g, &wl, &wr).unwrap();
        assert_eq!(sample(&sol, &g, &wl, &wr, sol.u_star - 1e-9).v[1], 0.5);
        assert_eq!(sample(&sol, &g, &wl, &wr, sol.u_star + 1e-9).v[1], -0.25);
        let sol_y = solve_exact_along(
            &g,
            &PrimState::new(1.0, [0.5, 0.0], 1.0),
            &PrimState::new(0.125, [-0.25, 0.0], 0.1),
            1,
        )
        .unwrap();
        assert!((sol_y.p_star - sol.p_star).abs() < 1e-14);
    }

    #[test]
    fn hll_consistency_and_upwinding() {
        let g = air();
        let u = cons_from_prim(&g, &PrimState::new_1d(0.8, 0.3, 1.2)).unwrap();
        let f = hll_flux(&g, &u, &u).unwrap();
        let exact = crate::flux::physical_flux(&g, &u, 0).unwrap();
        for k in 0..3 {
            assert!((f.get(k) - exact.get(k)).abs() <= 1e-14 * (1.0 + exact.get(k).abs()));
        }
        let ul = cons_from_prim(&g, &PrimState::new_1d(1.0, 5.0, 1.0)).unwrap();
        let ur = cons_from_prim(&g, &PrimState::new_1d(0.5, 4.0, 0.6)).unwrap();
        assert_eq!(hll_flux(&g, &ul, &ur).unwrap(), crate::flux::physical_flux(&g, &ul, 0).unwrap());
    }

    #[test]
    fn hll_on_sod_is_close_to_godunov() {
        let g = air();
        let ul = cons_from_prim(&g, &SOD_L).unwrap();
        let ur = cons_from_prim(&g, &SOD_R).unwrap();
        let hll = hll_flux(&g, &ul, &ur).unwrap();
        let god = godunov_flux_along(&g, &ul, &ur, 0).unwrap();
        // hand evaluation: S_R = -S_L = sqrt(1.4), fluxes f_L = (0,1,0), f_R = (0,0.1,0)
        let s = 1.4f64.sqrt();
        let expect = [1.4 * 0.875 / (2.0 * s), 0.55, 1.4 * 2.25 / (2.0 * s)];
        for (k, e) in expect.iter().enumerate() {
            assert!((hll.get(k) - e).abs() < 1e-14, "component {k}: {hll:?}");
            // the two-wave average smears the fan: gaps of 0.12, 0.12, 0.18
            assert!((hll.get(k) - god.get(k)).abs() < 0.2, "component {k}: {hll:?} vs {god:?}");
        }
    }

    #[test]
    fn rh_residual_examples() {
        let g = air();
        let ul = cons_from_prim(&g, &PrimState::new_1d(1.0, 0.0, 1.0)).unwrap();
        let ur = cons_from_prim(&g, &PrimState::new_1d(0.5, 0.0, 1.0)).unwrap();
        let r = rankine_hugoniot_residual(&g, 0.0, &ul, &ur).unwrap();
        assert_eq!(r.0, [0.0, 0.0, 0.0]);
        let r = rankine_hugoniot_residual(&g, 3.7, &ul, &ul).unwrap();
        assert_eq!(r.0, [0.0, 0.0, 0.0]);
    }

    #[test]
    fn sod_shock_is_admissible_and_its_reverse_is_not() {
        let g = air();
        let sol = solve_exact(&g, &SOD_L, &SOD_R).unwrap();
        let behind = cons_from_prim(&g, &PrimState::new_1d(sol.rho_star_right, sol.u_star, sol.p_star)).unwrap();
        let ahead = cons_from_prim(&g, &SOD_R).unwrap();
        let s = sol.right.head;
        assert!((s - 1.75216).abs() < 1e-5, "{s}");
        let r = rankine_hugoniot_residual(&g, s, &behind, &ahead).unwrap();
        assert!(r.max_abs() <= 1e-9, "{r:?}");
        let verdict = entropy_admissible(&g, s, &behind, &ahead).unwrap();
        assert!(verdict.admissible && verdict.production > 0.0);
        // same jump with the states exchanged: an expansion shock
        let reversed = entropy_admissible(&g, s, &ahead, &behind).unwrap();
        assert!(!reversed.admissible);
        assert!((reversed.production + verdict.production).abs() < 1e-12);
        // not a discontinuity at all
        assert!(matches!(
            entropy_admissible(&g, -s, &ahead, &behind),
            Err(Error::NotADiscontinuity { .. })
        ));
    }

    #[test]
    fn contact_produces_no_entropy() {
        let g = air();
        let ul = cons_from_prim(&g, &PrimState::new_1d(1.0, 0.4, 1.0)).unwrap();
        let ur = cons_from_prim(&g, &PrimState::new_1d(0.3, 0.4, 1.0)).unwrap();
        let v = entropy_admissible(&g, 0.4, &ul, &ur).unwrap();
        assert!(v.admissible);
        assert!(v.production.abs() <= 1e-12);
    }

    #[test]
    fn isentropic_solver_satisfies_jump_relations() {
        let g = GasModel::isentropic(2.0, 1.0).unwrap();
        let wl = PrimState::new_1d(1.0, 0.0, 1.0);
        let wr = PrimState::new_1d(0.5, 0.0, 0.25);
        let sol = solve_exact(&g, &wl, &wr).unwrap();
        assert_eq!(sol.left.kind, WaveKind::Rarefaction);
        assert_eq!(sol.right.kind, WaveKind::Shock);
        assert_eq!(sol.rho_star_left, sol.rho_star_right);
        let behind = ConsState::new(sol.rho_star_right, [sol.rho_star_right * sol.u_star], 0.0);
        let ahead = ConsState::new(0.5, [0.0], 0.0);
        let r = rankine_hugoniot_residual(&g, sol.right.head, &behind, &ahead).unwrap();
        assert!(r.max_abs() < 1e-10, "{r:?}");
        // left rarefaction: u + 2c/(γ−1) constant
        let c_star = (2.0 * sol.p_star / sol.rho_star_left).sqrt();
        let c_l = 2.0f64.sqrt();
        assert!((sol.u_star + 2.0 * c_star - 2.0 * c_l).abs() < 1e-10);
    }

    fn prim() -> impl Strategy<Value = PrimState<1>> {
        (0.05f64..10.0, -2.0f64..2.0, 0.05f64..10.0).prop_map(|(r, u, p)| PrimState::new_1d(r, u, p))
    }

    fn side_checks(
        g: &GasModel,
        sol: &RiemannSolution,
        w: &PrimState<1>,
        rho_star: f64,
        wave: &Wave,
        is_left: bool,
    ) -> core::result::Result<(), TestCaseError> {
        let gamma = g.gamma();
        let star = PrimState::new_1d(rho_star, sol.u_star, sol.p_star);
        match wave.kind {
            WaveKind::Shock => {
                let (a, b) = if is_left { (*w, star) } else { (star, *w) };
                let ua = cons_from_prim(g, &a).unwrap();
                let ub = cons_from_prim(g, &b).unwrap();
                let r = rankine_hugoniot_residual(g, wave.head, &ua, &ub).unwrap();
                let scale = 1.0 + ua.max_abs().max(ub.max_abs()) * (1.0 + wave.head.abs());
                prop_assert!(r.max_abs() <= 1e-9 * scale, "{:?}", r);
                // Lax: characteristics run into the shock from both sides
                let c_w = (gamma * w.p / w.rho).sqrt();
                let c_s = (gamma * sol.p_star / rho_star).sqrt();
                if is_left {
                    prop_assert!(w.v[0] - c_w >= wave.head - 1e-10);
                    prop_assert!(sol.u_star - c_s <= wave.head + 1e-10);
                } else {
                    prop_assert!(w.v[0] + c_w <= wave.head + 1e-10);
                    prop_assert!(sol.u_star + c_s >= wave.head - 1e-10);
                }
            }
            WaveKind::Rarefaction => {
                let sign = if is_left { 1.0 } else { -1.0 };
                let c_w = (gamma * w.p / w.rho).sqrt();
                let c_s = (gamma * sol.p_star / rho_star).sqrt();
                let inv_w = w.v[0] + sign * 2.0 * c_w / (gamma - 1.0);
                let inv_s = sol.u_star + sign * 2.0 * c_s / (gamma - 1.0);
                prop_assert!((inv_w - inv_s).abs() <= 1e-9 * (1.0 + inv_w.abs()));
                let ent_w = w.p / w.rho.powf(gamma);
                let ent_s = sol.p_star / rho_star.powf(gamma);
                prop_assert!((ent_w - ent_s).abs() <= 1e-9 * ent_w);
            }
        }
        Ok(())
    }

    proptest! {
        #[test]
        fn star_state_satisfies_wave_relations(wl in prim(), wr in prim()) {
            let g = air();
            let sol = match solve_exact(&g, &wl, &wr) {
                Ok(s) => s,
                Err(Error::VacuumFormation { .. }) => return Ok(()),
                Err(e) => return Err(TestCaseError::fail(alloc::format!("{e}"))),
            };
            prop_assert!(sol.p_star > 0.0 && sol.rho_star_left > 0.0 && sol.rho_star_right > 0.0);
            prop_assert!(sol.left.span().1 <= sol.u_star + 1e-12);
            prop_assert!(sol.right.span().0 >= sol.u_star - 1e-12);
            side_checks(&g, &sol, &wl, sol.rho_star_left, &sol.left, true)?;
            side_checks(&g, &sol, &wr, sol.rho_star_right, &sol.right, false)?;
            prop_assert_eq!(sample(&sol, &g, &wl, &wr, -1e9), wl);
            prop_assert_eq!(sample(&sol, &g, &wl, &wr, 1e9), wr);
        }

        #[test]
        fn sampled_pressure_is_monotone_through_rarefactions(wl in prim(), wr in prim()) {
            let g = air();
            let Ok(sol) = solve_exact(&g, &wl, &wr) else { return Ok(()) };
            let mut prev: Option<f64> = None;
            if sol.left.kind == WaveKind::Rarefaction {
                for k in 0..=20 {
                    let s = sol.left.head + (sol.left.tail - sol.left.head) * k as f64 / 20.0;
                    let p = sample(&sol, &g, &wl, &wr, s).p;
                    if let Some(q) = prev { prop_assert!(p <= q * (1.0 + 1e-12)); }
                    prev = Some(p);
                }
            }
        }
    }
}
