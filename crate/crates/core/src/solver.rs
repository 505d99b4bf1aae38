//! Time integration loop with per-step diagnostics.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::diagnostics::{Field, RunReport, StepRecord};
use crate::grid::{Grid1D, Grid2D};
use crate::multid::{cfl_dt_2d, strang_split_step, SweepOrder};
use crate::schemes::{cfl_dt, step, SchemeConfig};
use crate::thermo::{GasModel, Mode};
use crate::{Error, Result};

/// A field that can be advanced by a configured scheme.
pub trait Evolve: Field {
    const DIM: usize;

    fn stable_dt(&self, g: &GasModel, cfg: &SchemeConfig) -> Result<f64>;

    /// Advances by `dt`; `index` is the 0-based step number (used for the
    /// sweep alternation in 2D).
    fn advance(&self, g: &GasModel, dt: f64, cfg: &SchemeConfig, index: usize) -> Result<Self>;
}

impl<const D: usize> Evolve for Grid1D<D> {
    const DIM: usize = D;

    fn stable_dt(&self, g: &GasModel, cfg: &SchemeConfig) -> Result<f64> {
        cfl_dt(g, self, cfg)
    }

    fn advance(&self, g: &GasModel, dt: f64, cfg: &SchemeConfig, _index: usize) -> Result<Self> {
        step(g, self, dt, cfg)
    }
}

impl Evolve for Grid2D {
    const DIM: usize = 2;

    fn stable_dt(&self, g: &GasModel, cfg: &SchemeConfig) -> Result<f64> {
        cfl_dt_2d(g, self, cfg)
    }

    fn advance(&self, g: &GasModel, dt: f64, cfg: &SchemeConfig, index: usize) -> Result<Self> {
        strang_split_step(g, self, dt, cfg, SweepOrder::for_step(index))
    }
}

/// When to stop.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub t_final: f64,
    /// Stop after this many steps even if `t_final` is not reached.
    pub max_steps: Option<usize>,
    /// Times in `[0, t_final]` at which the field is captured; steps are
    /// shortened to land on them exactly.
    pub snapshot_times: Vec<f64>,
}

impl RunOptions {
    pub fn until(t_final: f64) -> Self {
        Self {
            t_final,
            max_steps: None,
            snapshot_times: Vec::new(),
        }
    }

    /// Exactly `n` CFL-limited steps.
    pub fn steps(n: usize) -> Self {
        Self {
            t_final: f64::INFINITY,
            max_steps: Some(n),
            snapshot_times: Vec::new(),
        }
    }

    pub fn with_snapshots(mut self, times: Vec<f64>) -> Self {
        self.snapshot_times = times;
        self
    }
}

#[derive(Debug, Clone)]
pub struct Run<F> {
    pub field: F,
    pub time: f64,
    /// `(time, field)` in increasing time order.
    pub snapshots: Vec<(f64, F)>,
    pub report: RunReport,
}

fn record<F: Field>(g: &GasModel, field: &F, step: usize, time: f64, dt: f64, prev: Option<f64>) -> Result<StepRecord> {
    let entropy_total = match g.mode() {
        Mode::FullEuler => Some(field.entropy_total(g)?),
        Mode::Isentropic => None,
    };
    let entropy_production = match (prev, entropy_total) {
        (Some(a), Some(b)) if field.is_periodic() => Some(b - a),
        _ => None,
    };
    Ok(StepRecord {
        step,
        time,
        dt,
        totals: field.conserved_totals(g),
        entropy_total,
        entropy_production,
        max_wave_speed: field.max_wave_speed(g)?,
    })
}

/// Advances `initial` until `t_final` (or `max_steps`), recording one
/// [`StepRecord`] per step. Failures are reported as [`Error::Aborted`]
/// with the 1-based number of the failing step.
pub fn evolve<F: Evolve>(g: &GasModel, initial: F, cfg: &SchemeConfig, opts: &RunOptions) -> Result<Run<F>> {
    cfg.validate()?;
    if !(opts.t_final > 0.0) {
        return Err(Error::InvalidConfig(alloc::format!(
            "final time must be positive, got {}",
            opts.t_final
        )));
    }
    if opts.t_final.is_infinite() && opts.max_steps.is_none() {
        return Err(Error::InvalidConfig("an unbounded run needs a step limit".into()));
    }
    let mut snaps = opts.snapshot_times.clone();
    if snaps.iter().any(|t| !(*t >= 0.0 && *t <= opts.t_final)) {
        return Err(Error::InvalidConfig("snapshot times must lie in [0, t_final]".into()));
    }
    snaps.sort_by(f64::total_cmp);
    snaps.dedup();

    let abort = |step: usize| move |e: Error| Error::Aborted { step, source: Box::new(e) };
    let mut report = RunReport {
        component_names: RunReport::component_names(g.mode(), F::DIM),
        ..RunReport::default()
    };
    let first = record(g, &initial, 0, 0.0, 0.0, None).map_err(abort(0))?;
    let mut entropy = first.entropy_total;
    report.steps.push(first);

    let mut field = initial;
    let mut time = 0.0;
    let mut snapshots = Vec::new();
    let mut pending = snaps.into_iter().peekable();
    let mut n = 0;
    loop {
        while pending.peek().is_some_and(|t| *t <= time) {
            snapshots.push((time, field.clone()));
            pending.next();
        }
        if time >= opts.t_final || opts.max_steps.is_some_and(|m| n >= m) {
            break;
        }
        let target = pending.peek().copied().unwrap_or(opts.t_final).min(opts.t_final);
        let mut dt = field.stable_dt(g, cfg).map_err(abort(n + 1))?;
        let landing = time + dt >= target;
        if landing {
            dt = target - time;
        }
        field = field.advance(g, dt, cfg, n).map_err(abort(n + 1))?;
        n += 1;
        time = if landing { target } else { time + dt };
        let rec = record(g, &field, n, time, dt, entropy).map_err(abort(n))?;
        entropy = rec.entropy_total;
        report.steps.push(rec);
    }
    Ok(Run {
        field,
        time,
        snapshots,
        report,
    })
}
