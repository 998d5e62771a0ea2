use thiserror::Error;

/// Errors raised by state constructors, Hamiltonian builders, and solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A state vector's norm is too far from 1 to be silently repaired.
    #[error("state norm {norm} deviates from 1 by more than {max_dev:.1e}")]
    NotNormalized { norm: f64, max_dev: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("parameter {name} = {value} violates `{constraint}`")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },

    #[error("detuning delta = {delta} is inconsistent with omega2 - omega = {expected}")]
    InconsistentDetuning { delta: f64, expected: f64 },

    #[error("the two-dipole Hamiltonian requires an explicit dipole coupling constant")]
    MissingDipoleCoupling,

    #[error("dispersive validity ratio is undefined at zero detuning")]
    ZeroDetuning,

    #[error("dispersive regime violated: sqrt(n+1)*lambda/|delta| = {ratio} >= 1")]
    DispersiveRegimeViolated { ratio: f64 },

    #[error("population {population:.3e} leaks past the n = {n_max} Fock cutoff")]
    TruncationLeak { population: f64, n_max: usize },

    #[error("eigendecomposition of a {dim}x{dim} Hermitian matrix did not converge")]
    EigendecompositionFailed { dim: usize },

    #[error("matrix is not Hermitian: max |M - M†| = {max_dev:.3e}")]
    NotHermitian { max_dev: f64 },

    #[error("matrix trace {trace} is not 1 within tolerance")]
    NonUnitTrace { trace: f64 },

    #[error("matrix has eigenvalue {eigenvalue:.3e} below the positivity floor")]
    NegativeEigenvalue { eigenvalue: f64 },

    /// Closed-form reduced states exist only for a vacuum field with atom 1
    /// excited; other scenarios must go through the general evolution engine.
    #[error("closed forms require a vacuum field and atom 1 excited")]
    UnsupportedScenario,

    #[error("found {found} local minima; period estimation needs at least two")]
    TooFewMinima { found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
