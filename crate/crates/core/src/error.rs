use alloc::boxed::Box;
use alloc::string::String;

use crate::thermo::Mode;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid gas model: {0}")]
    InvalidModel(&'static str),

    #[error("invalid state: {reason} (rho = {rho}, p = {p})")]
    InvalidState {
        reason: &'static str,
        rho: f64,
        p: f64,
    },

    #[error("cell {cell}: {source}")]
    InvalidCell { cell: usize, source: Box<Error> },

    #[error("operation requires {expected:?} mode")]
    ModeError { expected: Mode },

    #[error("vacuum would form: velocity jump {du} reaches the positivity bound {bound}")]
    VacuumFormation { du: f64, bound: f64 },

    #[error("Riemann solver did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("eigenvalue computation of the flux Jacobian failed")]
    SingularJacobian,

    #[error("states are not connected by a discontinuity (Rankine-Hugoniot residual {residual:e})")]
    NotADiscontinuity { residual: f64 },

    #[error("grid geometry mismatch")]
    GeometryMismatch,

    #[error("entropy production is only evaluated on periodic domains")]
    NonPeriodic,

    #[error("need at least {needed} refinement levels, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error("unknown problem `{0}`")]
    UnknownProblem(String),

    #[error("problem `{0}` has no exact reference solution")]
    NoReference(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{axis}-sweep, line {line}: {source}")]
    Sweep {
        axis: char,
        line: usize,
        source: Box<Error>,
    },

    #[error("step {step}: {source}")]
    Aborted { step: usize, source: Box<Error> },
}

impl Error {
    pub(crate) fn in_cell(self, cell: usize) -> Self {
        Error::InvalidCell {
            cell,
            source: Box::new(self),
        }
    }

    /// Strips step/sweep/cell context and returns the underlying failure.
    pub fn root(&self) -> &Error {
        match self {
            Error::InvalidCell { source, .. }
            | Error::Sweep { source, .. }
            | Error::Aborted { source, .. } => source.root(),
            other => other,
        }
    }
}
