use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("photon number mismatch: input carries {input}, output carries {output}")]
    PhotonMismatch { input: usize, output: usize },
    #[error("matrix is not unitary (residual {residual:.3e}, tolerance {tolerance:.1e})")]
    NotUnitary { residual: f64, tolerance: f64 },
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("suppression function not factorizable: {0}")]
    NotFactorizable(String),
    #[error("not implemented: {0}")]
    NotImplemented(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
