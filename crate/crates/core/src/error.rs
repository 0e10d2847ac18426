use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |M - M^dagger| = {0:e})")]
    NotHermitian(f64),
    #[error("Jacobi iteration did not converge within {0} sweeps")]
    NoConvergence(usize),
    #[error("eigenvalue {0:e} is below the positivity tolerance")]
    NegativeEigenvalue(f64),
    #[error("trace {0} is not 1")]
    BadTrace(f64),
    #[error("non-finite matrix entry")]
    NonFinite,
    #[error("eigenvectors are not orthonormal (deviation {0:e})")]
    NotOrthonormal(f64),
    #[error("state leaks outside the {{|01>, |10>}} block (max entry {0:e})")]
    NotBlockConfined(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("integration needs {steps} steps, cap is {cap}")]
    StepCap { steps: u64, cap: u64 },
    #[error("unknown figure recipe `{0}`")]
    UnknownRecipe(String),
    #[error("grid has {points} points, cap is {cap}")]
    GridTooLarge { points: u128, cap: u64 },
    #[error("invalid range: {0}")]
    InvalidRange(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Whether the error signals a violated numerical invariant rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NotHermitian(_)
                | Error::NoConvergence(_)
                | Error::NegativeEigenvalue(_)
                | Error::BadTrace(_)
                | Error::NonFinite
                | Error::NotOrthonormal(_)
        )
    }

    /// Process exit code: 1 for validation errors, 2 for numerical-invariant violations.
    pub fn exit_code(&self) -> i32 {
        if self.is_numerical() {
            2
        } else {
            1
        }
    }
}
