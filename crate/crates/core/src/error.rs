use thiserror::Error;

use crate::algebra::Roster;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the engine can report.
///
/// Variants that carry a defect keep it rendered in canonical form so a
/// report can embed it verbatim.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("roster mismatch: {left} vs {right}")]
    RosterMismatch { left: Roster, right: Roster },

    #[error("generator {0} is not part of roster {1}")]
    UnknownGenerator(String, Roster),

    #[error("invalid substitution for {generator}: {reason}")]
    InvalidSubstitution { generator: String, reason: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("degree error: {0}")]
    Degree(String),

    #[error("expected a function (no daggered generators), got {0}")]
    NotAFunction(String),

    #[error("not a Poisson structure, [P,P] = {residual}")]
    NotPoisson { residual: String },

    #[error("not a Maurer-Cartan element, curvature = {residual}")]
    NotMaurerCartan { residual: String },

    #[error("arity {arity} exceeds the declared bound {bound}")]
    ArityBound { arity: usize, bound: usize },

    #[error("series does not terminate within its declared bound: {0}")]
    Termination(String),

    #[error("morphism defect, target residual = {0}")]
    MorphismDefect(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("flow precondition violated: {0}")]
    Nilpotency(String),

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("outside the polynomial slice: {0}")]
    OutOfSlice(String),

    #[error("charge is not certified against this structure: {0}")]
    ChargeMismatch(String),

    #[error("serialization: {0}")]
    Serialization(String),

    #[error("instance: {0}")]
    Instance(String),
}

impl Error {
    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
