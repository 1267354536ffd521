use thiserror::Error;

/// Errors shared by the analysis engine and the finite element solver.
#[derive(Debug, Error)]
pub enum Error {
    /// An input violated a documented precondition (non-positive step size,
    /// empty band, k = 0 where a symbol is singular, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A root-finding bracket never changed sign; the requested
    /// equioscillation equation has no solution for these parameters.
    #[error("no sign change bracketed while solving {0}")]
    BracketFailure(String),

    /// The derivative-free optimizer hit its iteration cap before the
    /// simplex collapsed.
    #[error("optimizer failed to converge within {0} iterations")]
    OptimizerStall(usize),

    /// The two subdomain rectangles do not share a horizontal edge.
    #[error("geometry mismatch: {0}")]
    GeometryMismatch(String),

    /// Assembly produced a singular or structurally defective system.
    #[error("singular assembly: {0}")]
    SingularSystem(String),

    /// A sparse factorization failed.
    #[error("factorization failed: {0}")]
    Factorization(String),

    /// Vector lengths disagree with the dof maps.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An interface iteration exhausted `max_iter` without reaching the
    /// requested tolerance. The partial report is preserved by callers.
    #[error("interface iteration did not converge within {0} iterations")]
    NonConvergence(usize),
}
