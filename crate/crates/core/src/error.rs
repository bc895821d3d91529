//! Error type shared by all modules of the crate.

use thiserror::Error;

/// Errors produced by material models, scattering evaluation and the
/// quadrature engine.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An operation was asked to evaluate a model it cannot represent
    /// (e.g. permittivity of a perfect mirror, which has closed-form
    /// scattering coefficients instead of a dielectric function).
    #[error("unsupported model: {0}")]
    UnsupportedModel(&'static str),

    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A kernel restricted to one spectral sector was evaluated in the other.
    #[error("sector mismatch: {0}")]
    SectorMismatch(&'static str),

    /// Evaluation hit an excluded measure-zero point (e.g. k_z = 0 in the
    /// atomic scattering elements).
    #[error("singular mode at omega={omega:.6e}, k={k:.6e}")]
    SingularMode { omega: f64, k: f64 },

    /// A scattering coefficient evaluation failed; carries the offending mode.
    #[error("scattering evaluation failed at omega={omega:.6e}, k={k:.6e}, {pol}: {msg}")]
    Evaluation {
        omega: f64,
        k: f64,
        pol: &'static str,
        msg: String,
    },

    /// Optical data ingestion rejected the input file.
    #[error("ingestion error at line {line}: {msg}")]
    Ingest { line: usize, msg: String },

    /// A specification object violates one of its invariants.
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// The adaptive quadrature or Matsubara summation did not reach the
    /// requested tolerance within its subdivision budget.
    #[error(
        "convergence failure in {context}: achieved {achieved:.3e} (requested {requested:.3e}), \
         worst panel [{panel_lo:.6e}, {panel_hi:.6e}]"
    )]
    Convergence {
        context: String,
        achieved: f64,
        requested: f64,
        panel_lo: f64,
        panel_hi: f64,
    },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Prefix the context of a convergence failure with the name of the
    /// observable term that triggered it.
    pub fn in_context(self, outer: &str) -> Self {
        match self {
            Error::Convergence {
                context,
                achieved,
                requested,
                panel_lo,
                panel_hi,
            } => Error::Convergence {
                context: format!("{outer}: {context}"),
                achieved,
                requested,
                panel_lo,
                panel_hi,
            },
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
