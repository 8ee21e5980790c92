use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition failed: phase {phase} is outside the {branch} interval ({lo}, {hi})")]
    PhaseOutsideBranch {
        phase: f64,
        branch: &'static str,
        lo: f64,
        hi: f64,
    },

    #[error("level-set sampling exhausted after {attempts} attempts (theta_hat = {theta_hat})")]
    SamplingExhausted { theta_hat: f64, attempts: u64 },

    /// The central charge path passes (numerically) through the origin, so
    /// the winding angle is not defined.
    #[error(
        "degenerate central charge path: |Z({t})| = {modulus:e} is below the origin threshold"
    )]
    DegeneratePath { t: f64, modulus: f64 },

    #[error("angle undefined: |Z(1)| = {modulus:e} is below tolerance")]
    UndefinedAngle { modulus: f64 },

    #[error("invalid Hermitian pair: {0}")]
    InvalidPair(String),

    #[error("Jacobi eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
