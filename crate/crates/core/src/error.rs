use crate::grids::GridKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("grid kind must be {expected}, got {found}")]
    KindMismatch { expected: GridKind, found: GridKind },

    #[error("spectrum family mismatch: expected {expected}, got {found}")]
    FamilyMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("sample count {found} does not match the {expected} points of the grid")]
    LengthMismatch { expected: usize, found: usize },

    #[error("frequency pair {0} is outside the admissible range")]
    PairOutOfRange(String),

    #[error("extension symmetry violated: residual {0:e}")]
    ExtensionSymmetry(f64),

    #[error("quadrature resolution must be at least 2, got {0}")]
    QuadratureResolution(usize),
}
