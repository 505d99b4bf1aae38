//! The `run`, `convergence` and `compare` verbs.
//!
//! Every (scheme, resolution) case is independent and single-threaded, so
//! cases run concurrently on a local pool and the results are collected in
//! case order. Outputs do not depend on the worker count.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use gasdyn_core::diagnostics::{
    conservation_drift, convergence_order, error_norms, error_norms_scalar, shock_locator, ConvergenceFit,
    ErrorNorms, Field, SHOCK_THRESHOLD,
};
use gasdyn_core::problems::{InitialData, ProblemSpec, ReferenceKind};
use gasdyn_core::riemann::WaveKind;
use gasdyn_core::schemes::SchemeConfig;
use gasdyn_core::solver::{evolve, Run, RunOptions};
use gasdyn_core::{ConsState, Error, Grid1D, Grid2D};
use rayon::prelude::*;

use crate::config::Settings;
use crate::error::{CliError, Result};
use crate::output::{self, case_dir, create_dir, num, snapshot_name, write_file, Summary};

/// Caps the number of concurrent cases.
pub const WORKERS_ENV: &str = "GASDYN_WORKERS";

pub fn worker_count() -> Result<usize> {
    match std::env::var(WORKERS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Config(format!("{WORKERS_ENV} must be a positive integer, got `{v}`"))),
        },
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

fn parallel_map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Result<Vec<R>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(worker_count()?)
        .build()
        .map_err(|e| CliError::Config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| items.par_iter().map(f).collect()))
}

fn case_label(spec: &ProblemSpec, cfg: &SchemeConfig, cells: usize) -> String {
    format!("{}/{}/{cells}", spec.name, cfg.scheme.name())
}

/// Aborts map to exit status 2; anything else is a configuration problem.
fn classify(label: &str) -> impl Fn(Error) -> CliError + '_ {
    move |e| match e {
        Error::Aborted { .. } => CliError::Solver {
            case: label.to_string(),
            source: e,
        },
        other => other.into(),
    }
}

enum Solved {
    One(Run<Grid1D<1>>),
    Two(Run<Grid2D>),
}

fn solve(spec: &ProblemSpec, cfg: &SchemeConfig, cells: usize, snapshots: Vec<f64>) -> Result<(Solved, Initial)> {
    let label = case_label(spec, cfg, cells);
    let opts = RunOptions::until(spec.t_final).with_snapshots(snapshots);
    if spec.dimension() == 1 {
        let grid = spec.grid_1d(cells)?;
        let run = evolve(&spec.gas, grid.clone(), cfg, &opts).map_err(classify(&label))?;
        Ok((Solved::One(run), Initial::One(grid)))
    } else {
        let grid = spec.grid_2d(cells, cells)?;
        let run = evolve(&spec.gas, grid.clone(), cfg, &opts).map_err(classify(&label))?;
        Ok((Solved::Two(run), Initial::Two(grid)))
    }
}

enum Initial {
    One(Grid1D<1>),
    Two(Grid2D),
}

fn drift_2d(spec: &ProblemSpec, initial: &Grid2D, current: &Grid2D) -> f64 {
    let g = &spec.gas;
    let (t0, t1) = (initial.conserved_totals(g), current.conserved_totals(g));
    let volume = initial.dx() * initial.dy();
    (0..t0.len())
        .map(|k| {
            let abs: f64 = initial.cells().iter().map(|u| u.get(k).abs()).sum::<f64>() * volume;
            let scale = abs.max(t0[k].abs());
            let d = (t1[k] - t0[k]).abs();
            if scale > 0.0 {
                d / scale
            } else {
                d
            }
        })
        .fold(0.0, f64::max)
}

/// Exact front positions of a Riemann-type problem at time `t`.
fn exact_fronts(spec: &ProblemSpec, t: f64) -> Result<Vec<(&'static str, f64)>> {
    let InitialData::Blocks(blocks) = &spec.initial else {
        return Ok(Vec::new());
    };
    let x0 = blocks[0].to;
    let sol = spec.riemann_solution()?;
    let mut fronts = Vec::new();
    if sol.left.kind == WaveKind::Shock {
        fronts.push(("left_shock", x0 + sol.left.head * t));
    }
    fronts.push(("contact", x0 + sol.contact_speed() * t));
    if sol.right.kind == WaveKind::Shock {
        fronts.push(("right_shock", x0 + sol.right.head * t));
    }
    Ok(fronts)
}

fn density_error_1d(spec: &ProblemSpec, field: &Grid1D<1>, t: f64) -> Result<Option<ErrorNorms>> {
    match spec.reference {
        ReferenceKind::ExactRiemann | ReferenceKind::Analytic => {
            let reference = spec.reference_cells(field.n_cells(), t)?;
            Ok(Some(error_norms(&spec.gas, field, &reference)?[0]))
        }
        _ => Ok(None),
    }
}

/// Result of one (scheme, resolution) case.
#[derive(Debug, Clone)]
pub struct CaseOutcome {
    pub dir: PathBuf,
    pub summary: Summary,
}

/// Solves one case and writes snapshots, `report.csv` and `summary.txt`
/// into `dir`.
pub fn run_case(settings: &Settings, cfg: &SchemeConfig, cells: usize, dir: &Path) -> Result<CaseOutcome> {
    let spec = &settings.problem;
    let g = &spec.gas;
    let (solved, initial) = solve(spec, cfg, cells, settings.snapshot_times())?;
    create_dir(dir)?;
    let mut summary = Summary {
        problem: spec.name.clone(),
        scheme: cfg.scheme.name().to_string(),
        ..Summary::default()
    };
    let report = match (&solved, &initial) {
        (Solved::One(run), Initial::One(grid0)) => {
            for (t, field) in &run.snapshots {
                write_file(&dir.join(snapshot_name(*t)), &output::snapshot_1d(g, field)?)?;
            }
            summary.cells = cells.to_string();
            summary.density_error = density_error_1d(spec, &run.field, run.time)?;
            if spec.reference == ReferenceKind::ExactRiemann {
                let found = shock_locator(&run.field, SHOCK_THRESHOLD);
                summary.fronts = Some((found, exact_fronts(spec, run.time)?));
            }
            summary.drift = grid0.is_periodic().then(|| conservation_drift(g, grid0, &run.field));
            summary.final_time = run.time;
            &run.report
        }
        (Solved::Two(run), Initial::Two(grid0)) => {
            for (t, field) in &run.snapshots {
                write_file(&dir.join(snapshot_name(*t)), &output::snapshot_2d(g, field)?)?;
            }
            summary.cells = format!("{cells}x{cells}");
            summary.drift = grid0.is_periodic().then(|| drift_2d(spec, grid0, &run.field));
            summary.final_time = run.time;
            &run.report
        }
        _ => unreachable!("solution and initial grid share a dimension"),
    };
    summary.steps = report.steps.len() - 1;
    summary.entropy_production = report.total_entropy_production();
    let mut report = report.clone();
    report.density_error = summary.density_error;
    write_file(&dir.join("report.csv"), &output::report_csv(&report))?;
    write_file(&dir.join("summary.txt"), &summary.render())?;
    Ok(CaseOutcome {
        dir: dir.to_owned(),
        summary,
    })
}

fn cases(settings: &Settings) -> Vec<(SchemeConfig, usize)> {
    settings
        .schemes
        .iter()
        .flat_map(|cfg| settings.cells.iter().map(move |&n| (*cfg, n)))
        .collect()
}

/// `run`: a single case writes into the output directory itself, a matrix
/// writes one subdirectory per case.
pub fn run(settings: &Settings) -> Result<Vec<CaseOutcome>> {
    let cases = cases(settings);
    let single = cases.len() == 1;
    let results = parallel_map(&cases, |(cfg, n)| {
        let dir = if single {
            settings.out.clone()
        } else {
            case_dir(&settings.out, cfg.scheme.name(), *n)
        };
        run_case(settings, cfg, *n, &dir)
    })?;
    results.into_iter().collect()
}

/// Final density field of one refinement level.
fn final_density(spec: &ProblemSpec, cfg: &SchemeConfig, cells: usize) -> Result<Vec<f64>> {
    let (solved, _) = solve(spec, cfg, cells, Vec::new())?;
    let rho = |u: &ConsState<1>| u.rho;
    Ok(match solved {
        Solved::One(run) => run.field.interior().iter().map(rho).collect(),
        Solved::Two(run) => run.field.cells().iter().map(|u| u.rho).collect(),
    })
}

/// Averages a fine field onto the next coarser level (2 or 2×2 cells).
fn coarsen(fine: &[f64], dim: usize, coarse_n: usize) -> Vec<f64> {
    if dim == 1 {
        fine.chunks(2).map(|c| 0.5 * (c[0] + c[1])).collect()
    } else {
        let fine_n = 2 * coarse_n;
        let mut out = Vec::with_capacity(coarse_n * coarse_n);
        for j in 0..coarse_n {
            for i in 0..coarse_n {
                let at = |di: usize, dj: usize| fine[(2 * j + dj) * fine_n + 2 * i + di];
                out.push(0.25 * (at(0, 0) + at(1, 0) + at(0, 1) + at(1, 1)));
            }
        }
        out
    }
}

/// One row of `orders.csv`.
#[derive(Debug, Clone)]
pub struct OrderRow {
    pub scheme: String,
    /// Resolutions the errors belong to.
    pub cells: Vec<usize>,
    pub l1_errors: Vec<f64>,
    pub fit: ConvergenceFit,
}

fn convergence_rows(settings: &Settings) -> Result<Vec<OrderRow>> {
    let spec = &settings.problem;
    let mut cells = settings.cells.clone();
    cells.sort_unstable();
    cells.dedup();
    let width = |n: usize| (spec.x_range.1 - spec.x_range.0) / n as f64;
    let self_convergence = match spec.reference {
        ReferenceKind::ExactRiemann | ReferenceKind::Analytic if spec.dimension() == 1 => false,
        ReferenceKind::SelfConvergence => true,
        _ => return Err(Error::NoReference(spec.name.clone()).into()),
    };
    if self_convergence {
        if cells.len() < 4 {
            return Err(CliError::Config(format!(
                "self-convergence of `{}` needs at least 4 resolutions, got {}",
                spec.name,
                cells.len()
            )));
        }
        if cells.windows(2).any(|w| w[1] != 2 * w[0]) {
            return Err(CliError::Config("self-convergence needs doubling resolutions".into()));
        }
    } else if cells.len() < 3 {
        return Err(CliError::Config(format!("convergence needs at least 3 resolutions, got {}", cells.len())));
    }

    let cases: Vec<(SchemeConfig, usize)> = settings
        .schemes
        .iter()
        .flat_map(|cfg| cells.iter().map(move |&n| (*cfg, n)))
        .collect();
    let dim = spec.dimension();
    let errors = parallel_map(&cases, |(cfg, n)| -> Result<Vec<f64>> {
        if self_convergence {
            return final_density(spec, cfg, *n);
        }
        let (solved, _) = solve(spec, cfg, *n, Vec::new())?;
        let Solved::One(run) = solved else { unreachable!("exact references are 1D") };
        let e = density_error_1d(spec, &run.field, run.time)?.expect("reference exists");
        Ok(vec![e.l1])
    })?
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    settings
        .schemes
        .iter()
        .zip(errors.chunks(cells.len()))
        .map(|(cfg, levels)| {
            let (used, l1): (Vec<usize>, Vec<f64>) = if self_convergence {
                let volume = |n: usize| width(n).powi(dim as i32);
                cells
                    .windows(2)
                    .zip(levels.windows(2))
                    .map(|(n, f)| {
                        let coarse = &f[0];
                        let fine = coarsen(&f[1], dim, n[0]);
                        error_norms_scalar(volume(n[0]), coarse, &fine).map(|e| (n[0], e.l1))
                    })
                    .collect::<gasdyn_core::Result<Vec<_>>>()?
                    .into_iter()
                    .unzip()
            } else {
                (cells.clone(), levels.iter().map(|e| e[0]).collect())
            };
            let pairs: Vec<(f64, f64)> = used.iter().zip(&l1).map(|(&n, &e)| (width(n), e)).collect();
            Ok(OrderRow {
                scheme: cfg.scheme.name().to_string(),
                cells: used,
                l1_errors: l1,
                fit: convergence_order(&pairs)?,
            })
        })
        .collect()
}

pub fn orders_csv(rows: &[OrderRow]) -> String {
    let mut out = String::from("scheme,resolutions,l1_errors,order,monotone\n");
    for r in rows {
        let cells: Vec<String> = r.cells.iter().map(|n| n.to_string()).collect();
        let errs: Vec<String> = r.l1_errors.iter().map(|e| num(*e)).collect();
        writeln!(
            out,
            "{},{},{},{},{}",
            r.scheme,
            cells.join(";"),
            errs.join(";"),
            num(r.fit.order),
            r.fit.monotone
        )
        .unwrap();
    }
    out
}

/// `convergence`: writes `orders.csv` with one fitted order per scheme.
pub fn convergence(settings: &Settings) -> Result<Vec<OrderRow>> {
    let rows = convergence_rows(settings)?;
    create_dir(&settings.out)?;
    write_file(&settings.out.join("orders.csv"), &orders_csv(&rows))?;
    Ok(rows)
}

/// One row of `compare.csv`.
#[derive(Debug, Clone)]
pub struct CompareRow {
    pub scheme: String,
    pub cells: usize,
    /// `Ok` or the abort message.
    pub outcome: std::result::Result<Summary, String>,
}

pub fn compare_csv(rows: &[CompareRow]) -> String {
    let mut out = String::from(
        "scheme,cells,status,steps,final_time,density_l1,density_linf,conservation_drift,entropy_production\n",
    );
    let opt = |v: Option<f64>| v.map_or_else(|| output::NOT_EVALUATED.to_string(), num);
    for r in rows {
        match &r.outcome {
            Ok(s) => writeln!(
                out,
                "{},{},ok,{},{},{},{},{},{}",
                r.scheme,
                r.cells,
                s.steps,
                num(s.final_time),
                opt(s.density_error.map(|e| e.l1)),
                opt(s.density_error.map(|e| e.linf)),
                opt(s.drift),
                opt(s.entropy_production)
            )
            .unwrap(),
            Err(msg) => {
                let msg = msg.replace([',', '\n'], " ");
                writeln!(out, "{},{},aborted: {msg},,,,,,", r.scheme, r.cells).unwrap()
            }
        }
    }
    out
}

/// `compare`: every scheme on one problem, one case directory each, plus a
/// `compare.csv` table. A scheme that aborts is reported in the table
/// instead of failing the whole comparison.
pub fn compare(settings: &Settings) -> Result<Vec<CompareRow>> {
    let cases = cases(settings);
    let results = parallel_map(&cases, |(cfg, n)| {
        run_case(settings, cfg, *n, &case_dir(&settings.out, cfg.scheme.name(), *n))
    })?;
    let rows = cases
        .iter()
        .zip(results)
        .map(|((cfg, n), r)| {
            let outcome = match r {
                Ok(c) => Ok(c.summary),
                Err(CliError::Solver { source, .. }) => Err(source.to_string()),
                Err(e) => return Err(e),
            };
            Ok(CompareRow {
                scheme: cfg.scheme.name().to_string(),
                cells: *n,
                outcome,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    create_dir(&settings.out)?;
    write_file(&settings.out.join("compare.csv"), &compare_csv(&rows))?;
    Ok(rows)
}
