use thiserror::Error;

/// Errors produced by the numerical and physics layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid Landau state (n = {n}, m_l = {m_l}): {reason}")]
    InvalidState {
        n: u32,
        m_l: i32,
        reason: &'static str,
    },

    #[error("unsupported spinor family: {0}")]
    UnsupportedFamily(String),

    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error_bound:e} ({reason})")]
    Convergence {
        estimate: f64,
        error_bound: f64,
        reason: &'static str,
    },

    #[error(
        "cannot certify the strong-field sum for n = {n}: relative error bound {relative_bound:e}"
    )]
    PrecisionExhausted { n: u32, relative_bound: f64 },

    #[error(
        "degenerate energies {energy:e} J: the superposition never evolves to an orthogonal state"
    )]
    NoOrthogonalEvolution { energy: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
