use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Variants fall into three families that the CLI maps onto distinct exit
/// codes: file/format problems, validation failures on user input, and
/// numerical failures. See [`Error::class`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimMismatch(String),
    #[error("matrix is not Hermitian: ‖M − M†‖_F = {residual:.3e} (allowed {allowed:.3e})")]
    NotHermitian { residual: f64, allowed: f64 },
    #[error("matrix does not have unit trace: |Tr M − 1| = {residual:.3e}")]
    NotUnitTrace { residual: f64 },
    #[error("matrix is not positive semi-definite: minimum eigenvalue {min_eigenvalue:.3e}")]
    NotPsd { min_eigenvalue: f64 },
    #[error("non-finite entry in matrix")]
    NonFinite,
    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:.3e})")]
    NonConvergence { sweeps: usize, off_norm: f64 },
    #[error("function evaluated outside its domain at eigenvalue {eigenvalue:.3e}")]
    DomainError { eigenvalue: f64 },

    #[error("rank must satisfy 1 ≤ rank ≤ dim (got rank {rank}, dim {dim})")]
    BadRank { rank: usize, dim: usize },
    #[error("bad magic bytes: expected \"QDM1\"")]
    BadMagic,
    #[error("unsupported QDM1 version {0}")]
    BadVersion(u32),
    #[error("file is truncated: {0}")]
    TruncatedFile(String),
    #[error("dimension {0} exceeds the supported maximum of 65536")]
    DimOverflow(u64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("{value} lies outside the interval {interval}")]
    OutOfInterval { value: f64, interval: String },
    #[error("interval upper end b must be positive (got {0})")]
    BadInterval(f64),
    #[error("quadrature needs at least {required} nodes (got {got})")]
    TooFewNodes { required: usize, got: usize },
    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("degree {degree} is below the minimum {min}")]
    DegreeTooLow { degree: usize, min: usize },
    #[error("stochastic estimation needs at least 2 probes (got {0})")]
    TooFewProbes(usize),

    #[error("invalid alpha {0}")]
    BadAlpha(f64),
    #[error("z must be positive (got {0})")]
    BadZ(f64),
    #[error("raw fidelity {0} lies too far outside [0, 1]")]
    FidelityOutOfRange(f64),

    #[error("invalid POVM: {0}")]
    InvalidPovm(String),
    #[error("random POVM sample was numerically singular after {0} attempts")]
    DegenerateSample(usize),
    #[error("rho has no support above the pseudo-inverse cutoff")]
    SingularRho,
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Format,
    Validation,
    Numerical,
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            BadMagic | BadVersion(_) | TruncatedFile(_) | DimOverflow(_) | Parse(_) | Io(_) => ErrorClass::Format,
            DimMismatch(_)
            | NotHermitian { .. }
            | NotUnitTrace { .. }
            | NotPsd { .. }
            | NonFinite
            | BadRank { .. }
            | OutOfInterval { .. }
            | BadInterval(_)
            | TooFewNodes { .. }
            | DegreeTooHigh { .. }
            | DegreeTooLow { .. }
            | TooFewProbes(_)
            | BadAlpha(_)
            | BadZ(_)
            | InvalidPovm(_)
            | SingularRho => ErrorClass::Validation,
            NonConvergence { .. } | DomainError { .. } | FidelityOutOfRange(_) | DegenerateSample(_) => {
                ErrorClass::Numerical
            }
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
