//! Batch runner for the `gasdyn-core` solvers.
//!
//! Three verbs share one set of settings (a TOML file plus flag overrides):
//! `run` writes snapshots, a per-step report and a summary; `convergence`
//! fits error orders over a resolution list; `compare` tabulates several
//! schemes on one problem.

pub mod config;
pub mod error;
pub mod output;
pub mod runner;

pub use config::{FileConfig, Overrides, Settings, Verb};
pub use error::{CliError, Result};
