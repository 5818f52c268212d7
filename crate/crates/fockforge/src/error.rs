//! Shared error type for the library surface.

use thiserror::Error;

/// Errors reported by the Fock-space operations.
///
/// Precondition violations that a caller can hit with ordinary data (mode or
/// dimension mismatches, out-of-range degrees, non-symplectic inputs, ...)
/// are reported through this enum; internal invariants panic instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FockError {
    #[error("mode count mismatch: {left} vs {right}")]
    ModeMismatch { left: usize, right: usize },

    #[error("vector length {len} does not match mode count {modes}")]
    DimensionMismatch { len: usize, modes: usize },

    #[error("monomial factor lists have different lengths: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix size {size} exceeds the permanent limit {limit}")]
    PermanentLimit { size: usize, limit: usize },

    #[error("degree {degree} outside 0..={cap}")]
    DegreeOutOfRange { degree: usize, cap: usize },

    #[error("mode index {mode} outside 0..{modes}")]
    InvalidMode { mode: usize, modes: usize },

    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(f64),

    #[error("matrix is not symmetric: max asymmetry {0:.3e}")]
    NotSymmetric(f64),

    #[error("operator norm {0} is not strictly below one")]
    NormNotContractive(f64),

    #[error("map is not symplectic: max form violation {0:.3e}")]
    NotSymplectic(f64),

    #[error("matrix is numerically singular")]
    Singular,

    #[error("matrix is not unitary: max deviation {0:.3e}")]
    NotUnitary(f64),

    #[error("vector is not homogeneous: degrees {0} and {1} both present")]
    NotHomogeneous(usize, usize),

    #[error("coherent points {0} and {1} coincide within tolerance")]
    DuplicatePoint(usize, usize),

    #[error("series for the principal determinant branch did not converge (spectral radius too close to one)")]
    BranchNotConverged,
}
