//! Run configuration: an optional flat TOML file merged with command-line
//! flags. Flags win.

use std::path::{Path, PathBuf};

use clap::Args;
use gasdyn_core::problems::{build, Block, ProblemSpec, ReferenceKind};
use gasdyn_core::schemes::{DtPower, Limiter, RiemannFlux, Scheme, SchemeConfig};
use gasdyn_core::{Boundary, GasModel, PrimState};
use serde::Deserialize;

use crate::error::{CliError, Result};

/// A scalar or a list in the config file.
#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(v) => vec![v],
            OneOrMany::Many(v) => v,
        }
    }
}

/// Contents of a config file.
///
/// Custom problems: `blocks = [[from, to, rho, u, p], ...]` gives
/// piecewise-constant data, the `wave_*` keys an entropy wave. Both use
/// `gamma` (default 1.4); `kappa0` switches to the isentropic model.
#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub problem: Option<String>,
    #[serde(alias = "schemes")]
    pub scheme: Option<OneOrMany<String>>,
    pub cells: Option<OneOrMany<usize>>,
    pub cfl: Option<f64>,
    pub tmax: Option<f64>,
    pub out: Option<PathBuf>,
    pub limiter: Option<String>,
    pub qvisc: Option<f64>,
    pub bc: Option<String>,
    pub snapshots: Option<Vec<f64>>,
    pub flux: Option<String>,
    pub dt_exponent: Option<f64>,

    pub gamma: Option<f64>,
    pub kappa0: Option<f64>,
    pub blocks: Option<Vec<[f64; 5]>>,
    pub x_range: Option<[f64; 2]>,
    pub wave_rho0: Option<f64>,
    pub wave_amplitude: Option<f64>,
    pub wave_periods: Option<u32>,
    pub wave_velocity: Option<f64>,
    pub wave_pressure: Option<f64>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text)
    }

    fn has_wave(&self) -> bool {
        self.wave_rho0.is_some()
            || self.wave_amplitude.is_some()
            || self.wave_periods.is_some()
            || self.wave_velocity.is_some()
            || self.wave_pressure.is_some()
    }
}

/// Flags shared by every verb.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// TOML config file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Catalog problem name.
    #[arg(long)]
    pub problem: Option<String>,
    /// Scheme name, or a comma-separated list.
    #[arg(long, value_delimiter = ',')]
    pub scheme: Vec<String>,
    /// Cell count per direction, or a comma-separated list.
    #[arg(long, value_delimiter = ',')]
    pub cells: Vec<usize>,
    #[arg(long)]
    pub cfl: Option<f64>,
    /// Final time (replaces the problem's default).
    #[arg(long)]
    pub tmax: Option<f64>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// MUSCL limiter: minmod or vanleer.
    #[arg(long)]
    pub limiter: Option<String>,
    /// Artificial viscosity coefficient of the vnr scheme.
    #[arg(long)]
    pub qvisc: Option<f64>,
    /// Boundary condition on every side: transmissive, reflective or periodic.
    #[arg(long)]
    pub bc: Option<String>,
    /// Comma-separated snapshot times.
    #[arg(long, value_delimiter = ',')]
    pub snapshots: Vec<f64>,
    /// Interface flux of muscl and weno5: exact or hll.
    #[arg(long)]
    pub flux: Option<String>,
    /// Refine the time step as dt ∝ dx^p.
    #[arg(long)]
    pub dt_exponent: Option<f64>,
}

/// Which verb the settings are resolved for; it selects the defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    Run,
    Convergence,
    Compare,
}

/// Fully resolved settings of one invocation.
#[derive(Debug, Clone)]
pub struct Settings {
    pub problem: ProblemSpec,
    pub schemes: Vec<SchemeConfig>,
    pub cells: Vec<usize>,
    pub out: PathBuf,
    /// `None` means `[0, t_final]`.
    pub snapshots: Option<Vec<f64>>,
}

fn parse_core<T: std::str::FromStr<Err = gasdyn_core::Error>>(s: &str) -> Result<T> {
    s.parse().map_err(CliError::from)
}

fn custom_problem(file: &FileConfig, name: &str, bc: Option<Boundary>, tmax: Option<f64>) -> Result<ProblemSpec> {
    let gamma = file.gamma.unwrap_or(1.4);
    let gas = match file.kappa0 {
        Some(k) => GasModel::isentropic(gamma, k)?,
        None => GasModel::polytropic(gamma)?,
    };
    let t_final = tmax.ok_or_else(|| CliError::Config("a custom problem needs `tmax`".into()))?;
    if let Some(rows) = &file.blocks {
        if file.has_wave() {
            return Err(CliError::Config("give either `blocks` or `wave_*` keys, not both".into()));
        }
        let blocks = rows
            .iter()
            .map(|[from, to, rho, u, p]| Block {
                from: *from,
                to: *to,
                state: PrimState::new_1d(*rho, *u, *p),
            })
            .collect();
        return Ok(ProblemSpec::blocks(name, gas, blocks, t_final, bc.unwrap_or(Boundary::Transmissive))?);
    }
    let [a, b] = file.x_range.unwrap_or([0.0, 1.0]);
    Ok(ProblemSpec::entropy_wave(
        name,
        gas,
        (a, b),
        file.wave_rho0.unwrap_or(1.0),
        file.wave_amplitude.unwrap_or(0.2),
        file.wave_periods.unwrap_or(1),
        file.wave_velocity.unwrap_or(1.0),
        file.wave_pressure.unwrap_or(1.0),
        t_final,
    )?)
}

fn apply_bc(spec: &mut ProblemSpec, bc: Boundary) {
    spec.bc = (bc, bc);
    let keeps_reference = match spec.reference {
        ReferenceKind::ExactRiemann => bc == Boundary::Transmissive,
        ReferenceKind::Analytic => bc == Boundary::Periodic,
        _ => true,
    };
    if !keeps_reference {
        spec.reference = ReferenceKind::None;
    }
}

impl Settings {
    /// Merges the config file (if any) with the flags and validates.
    pub fn resolve(verb: Verb, flags: &Overrides) -> Result<Self> {
        let file = match &flags.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        Self::merge(verb, &file, flags)
    }

    pub fn merge(verb: Verb, file: &FileConfig, flags: &Overrides) -> Result<Self> {
        let bc = flags
            .bc
            .as_deref()
            .or(file.bc.as_deref())
            .map(parse_core::<Boundary>)
            .transpose()?;
        let tmax = flags.tmax.or(file.tmax);
        let name = flags.problem.clone().or_else(|| file.problem.clone());
        let custom = file.blocks.is_some() || file.has_wave();

        let mut problem = match (&name, custom) {
            (Some(n), false) => build(n).map_err(|e| match e {
                gasdyn_core::Error::UnknownProblem(_) => CliError::Config(format!(
                    "unknown problem `{n}` (valid: {})",
                    gasdyn_core::problems::CATALOG.join(", ")
                )),
                other => other.into(),
            })?,
            (n, true) => custom_problem(file, n.as_deref().unwrap_or("custom"), bc, tmax)?,
            (None, false) => return Err(CliError::Config("no problem given (use --problem)".into())),
        };
        if let Some(t) = tmax {
            problem.t_final = t;
        }
        if let Some(b) = bc {
            apply_bc(&mut problem, b);
        }
        problem.validate()?;

        let scheme_names: Vec<String> = if !flags.scheme.is_empty() {
            flags.scheme.clone()
        } else if let Some(s) = &file.scheme {
            s.clone().into_vec()
        } else {
            match verb {
                Verb::Run => vec!["godunov".into()],
                Verb::Convergence => vec!["muscl".into()],
                Verb::Compare => Scheme::ALL.iter().map(|s| s.name().to_string()).collect(),
            }
        };
        if scheme_names.is_empty() {
            return Err(CliError::Config("empty scheme list".into()));
        }

        let cells: Vec<usize> = if !flags.cells.is_empty() {
            flags.cells.clone()
        } else if let Some(c) = &file.cells {
            c.clone().into_vec()
        } else {
            match (verb, problem.dimension()) {
                (Verb::Convergence, 1) => vec![50, 100, 200, 400],
                (Verb::Convergence, _) => vec![16, 32, 64, 128],
                (_, 1) => vec![400],
                _ => vec![100],
            }
        };
        if cells.is_empty() || cells.iter().any(|&n| n < 4) {
            return Err(CliError::Config("cell counts must be at least 4".into()));
        }

        let limiter = flags.limiter.as_deref().or(file.limiter.as_deref()).map(parse_core::<Limiter>).transpose()?;
        let flux = match flags.flux.as_deref().or(file.flux.as_deref()) {
            None => None,
            Some("exact") => Some(RiemannFlux::Exact),
            Some("hll") => Some(RiemannFlux::Hll),
            Some(other) => return Err(CliError::Config(format!("unknown flux `{other}` (valid: exact, hll)"))),
        };
        let cfl = flags.cfl.or(file.cfl);
        let qvisc = flags.qvisc.or(file.qvisc);
        let dt_exponent = flags.dt_exponent.or(file.dt_exponent);
        let coarsest = *cells.iter().min().expect("non-empty");
        let reference_dx = (problem.x_range.1 - problem.x_range.0) / coarsest as f64;

        let schemes = scheme_names
            .iter()
            .map(|n| {
                let scheme: Scheme = parse_core(n.trim())?;
                let mut cfg = SchemeConfig::new(scheme);
                if let Some(c) = cfl {
                    cfg.cfl = c;
                }
                if let Some(l) = limiter {
                    cfg.limiter = l;
                }
                if let Some(q) = qvisc {
                    cfg.q_visc_coeff = q;
                }
                if let Some(f) = flux {
                    cfg.interface_flux = f;
                }
                let exponent = match (dt_exponent, verb, scheme) {
                    (Some(p), _, _) => Some(p),
                    (None, Verb::Convergence, Scheme::Weno5) => Some(5.0 / 3.0),
                    _ => None,
                };
                cfg.dt_power = exponent.map(|exponent| DtPower {
                    reference_dx,
                    exponent,
                });
                cfg.validate()?;
                Ok(cfg)
            })
            .collect::<Result<Vec<_>>>()?;

        let snapshots = if !flags.snapshots.is_empty() {
            Some(flags.snapshots.clone())
        } else {
            file.snapshots.clone()
        };
        if let Some(times) = &snapshots {
            if times.iter().any(|t| !(*t >= 0.0 && *t <= problem.t_final)) {
                return Err(CliError::Config(format!(
                    "snapshot times must lie in [0, {}]",
                    problem.t_final
                )));
            }
        }

        Ok(Settings {
            problem,
            schemes,
            cells,
            out: flags.out.clone().or_else(|| file.out.clone()).unwrap_or_else(|| PathBuf::from("out")),
            snapshots,
        })
    }

    pub fn snapshot_times(&self) -> Vec<f64> {
        self.snapshots.clone().unwrap_or_else(|| vec![0.0, self.problem.t_final])
    }
}
