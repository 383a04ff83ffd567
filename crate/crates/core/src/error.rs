use thiserror::Error;

/// Errors produced by state construction, measure evaluation and the Fock
/// oracle.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A state or edge parameter is outside its admissible range.
    #[error("parameter `{field}` out of range: got {value}, expected {expected}")]
    InvalidParameter {
        field: &'static str,
        value: f64,
        expected: &'static str,
    },

    /// An edge parameter sits on the boundary where `log ṽ` or `log(1 − ṽ)`
    /// diverges.
    #[error("edge parameter `{field}` = {value} must lie strictly inside (0, 1)")]
    EdgeOnBoundary { field: &'static str, value: f64 },

    /// The cross-entropy maximization failed to converge on every start.
    /// The payload still carries the best value found, which remains a valid
    /// upper bound, just not a certified edge optimum.
    #[error("optimizer did not converge after {restarts} starts (best value {best_value})")]
    NoConvergence {
        restarts: usize,
        best_value: f64,
        best: Box<crate::reoe::EurResult>,
    },

    /// The requested Fock-space cutoff leaves too much probability mass
    /// outside the truncated box.
    #[error(
        "truncation budget exceeded: estimated tail mass {tail:.3e} > {budget:.3e}; \
         increase dim (suggested at least {suggested})"
    )]
    TruncationBudget {
        tail: f64,
        budget: f64,
        suggested: usize,
    },

    /// A matrix expected to be symmetric is not, beyond tolerance.
    #[error("matrix is not symmetric: max |a_ij - a_ji| = {0:.3e}")]
    NotSymmetric(f64),

    /// Two Fock matrices have incompatible shapes.
    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),

    /// The covariance passed to the PSD search belongs to a separable state;
    /// the search is only defined for entangled inputs.
    #[error("covariance is separable; the pure-state PSD search needs an entangled input")]
    SeparableCovariance,

    /// No pure state fits under the covariance even at the full squeezing of
    /// the state itself. This cannot happen for covariances of the family and
    /// indicates an inconsistent input.
    #[error("no feasible pure state at s = r; covariance is inconsistent")]
    PsdSearchInconsistent,
}

pub type Result<T> = std::result::Result<T, Error>;
