//! CSV and text writers. Floats are printed with 17 significant digits so
//! that reruns can be diffed byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use gasdyn_core::diagnostics::{ErrorNorms, RunReport};
use gasdyn_core::thermo::{entropy, prim_from_cons};
use gasdyn_core::{ConsState, GasModel, Grid1D, Grid2D, Mode, PrimState};

use crate::error::{CliError, Result};

/// Marker for a diagnostic that was not computed.
pub const NOT_EVALUATED: &str = "not_evaluated";

pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map_or_else(|| NOT_EVALUATED.to_string(), num)
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

pub fn create_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|source| CliError::Write {
        path: path.to_owned(),
        source,
    })
}

pub fn snapshot_name(t: f64) -> String {
    format!("snap_{t:.6}.csv")
}

/// Entropy column: isentropic runs are evaluated with the polytropic model
/// of the same `γ`.
fn entropy_model(g: &GasModel) -> Result<GasModel> {
    Ok(match g.mode() {
        Mode::FullEuler => *g,
        Mode::Isentropic => GasModel::polytropic(g.gamma())?,
    })
}

fn primitive<const D: usize>(g: &GasModel, s: &GasModel, u: &ConsState<D>) -> Result<(PrimState<D>, f64)> {
    let w = prim_from_cons(g, u)?;
    let entropy = entropy(s, &w)?;
    Ok((w, entropy))
}

pub fn snapshot_1d<const D: usize>(g: &GasModel, grid: &Grid1D<D>) -> Result<String> {
    let s = entropy_model(g)?;
    let mut out = String::from("x,rho,u,p,S\n");
    for (i, u) in grid.interior().iter().enumerate() {
        let (w, entropy) = primitive(g, &s, u)?;
        let x = grid.cell_center(i);
        writeln!(out, "{},{},{},{},{}", num(x), num(w.rho), num(w.v[0]), num(w.p), num(entropy)).unwrap();
    }
    Ok(out)
}

pub fn snapshot_2d(g: &GasModel, grid: &Grid2D) -> Result<String> {
    let s = entropy_model(g)?;
    let mut out = String::from("x,y,rho,u,v,p,S\n");
    for j in 0..grid.ny() {
        for i in 0..grid.nx() {
            let (w, entropy) = primitive(g, &s, grid.at(i, j))?;
            let (x, y) = grid.cell_center(i, j);
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                num(x),
                num(y),
                num(w.rho),
                num(w.v[0]),
                num(w.v[1]),
                num(w.p),
                num(entropy)
            )
            .unwrap();
        }
    }
    Ok(out)
}

pub fn report_csv(report: &RunReport) -> String {
    let mut out = String::from("step,time,dt");
    for name in &report.component_names {
        write!(out, ",{name}").unwrap();
    }
    out.push_str(",entropy_total,entropy_production,max_wave_speed\n");
    for r in &report.steps {
        write!(out, "{},{},{}", r.step, num(r.time), num(r.dt)).unwrap();
        for t in &r.totals {
            write!(out, ",{}", num(*t)).unwrap();
        }
        writeln!(
            out,
            ",{},{},{}",
            opt(r.entropy_total),
            opt(r.entropy_production),
            num(r.max_wave_speed)
        )
        .unwrap();
    }
    out
}

/// Located steep fronts and the exact `(kind, position)` of each wave.
pub type Fronts = (Vec<f64>, Vec<(&'static str, f64)>);

/// Contents of `summary.txt`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Summary {
    pub problem: String,
    pub scheme: String,
    pub cells: String,
    pub final_time: f64,
    pub steps: usize,
    pub density_error: Option<ErrorNorms>,
    /// 1D problems with an exact Riemann reference only.
    pub fronts: Option<Fronts>,
    /// Relative drift of the conserved totals; open boundaries exchange
    /// mass with the outside, so only periodic domains are evaluated.
    pub drift: Option<f64>,
    pub entropy_production: Option<f64>,
}

impl Summary {
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "problem = {}", self.problem).unwrap();
        writeln!(out, "scheme = {}", self.scheme).unwrap();
        writeln!(out, "cells = {}", self.cells).unwrap();
        writeln!(out, "final_time = {}", num(self.final_time)).unwrap();
        writeln!(out, "steps = {}", self.steps).unwrap();
        match self.density_error {
            Some(e) => {
                writeln!(out, "density_l1_error = {}", num(e.l1)).unwrap();
                writeln!(out, "density_linf_error = {}", num(e.linf)).unwrap();
            }
            None => {
                writeln!(out, "density_l1_error = {NOT_EVALUATED}").unwrap();
                writeln!(out, "density_linf_error = {NOT_EVALUATED}").unwrap();
            }
        }
        if let Some((found, exact)) = &self.fronts {
            let list: Vec<String> = found.iter().map(|x| num(*x)).collect();
            writeln!(out, "fronts_located = {}", list.join(";")).unwrap();
            for (kind, x) in exact {
                writeln!(out, "exact_{kind} = {}", num(*x)).unwrap();
            }
        }
        writeln!(out, "conservation_drift = {}", opt(self.drift)).unwrap();
        writeln!(out, "entropy_production = {}", opt(self.entropy_production)).unwrap();
        out
    }
}

/// Parses `key = value` lines of a summary file.
pub fn read_summary_value(text: &str, key: &str) -> Option<String> {
    text.lines().find_map(|l| {
        let (k, v) = l.split_once('=')?;
        (k.trim() == key).then(|| v.trim().to_string())
    })
}

pub fn case_dir(root: &Path, scheme: &str, cells: usize) -> PathBuf {
    root.join(format!("{scheme}_{cells}"))
}
