//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, FrameError>;

/// Everything that can go wrong while building or transforming frame
/// families. Variants carry the offending quantities so callers can report
/// them without re-deriving anything.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FrameError {
    /// A measure atom weight was zero, negative, or not finite.
    #[error("weight at atom {index} must be positive and finite, got {value}")]
    NonPositiveWeight { index: usize, value: f64 },

    /// Two objects that must share atom structure or dimensions do not.
    #[error("shape mismatch: {context}")]
    ShapeMismatch { context: String },

    /// A classification tolerance was not a positive finite number.
    #[error("tolerance must be positive and finite, got {value}")]
    InvalidTolerance { value: f64 },

    /// The family's lower frame bound does not clear the tolerance.
    #[error("not a frame: lower bound {lower_bound:.3e} does not exceed tolerance {tolerance:.3e}")]
    NotAFrame { lower_bound: f64, tolerance: f64 },

    /// A family required to be an orthonormal basis failed certification.
    #[error("not an orthonormal basis: defect {defect:.3e} exceeds tolerance {tolerance:.3e}")]
    NotOrthonormalBasis { defect: f64, tolerance: f64 },

    /// A family required to be a Riesz basis failed certification.
    #[error(
        "not a Riesz basis: coefficient dimension {coefficient_dim} vs ambient {ambient_dim}, \
         smallest singular value {sigma_min:.3e}"
    )]
    NotRieszBasis {
        coefficient_dim: usize,
        ambient_dim: usize,
        sigma_min: f64,
    },

    /// A matrix required to be self-adjoint is not, within tolerance.
    #[error("matrix is not self-adjoint: defect {defect:.3e} exceeds tolerance {tolerance:.3e}")]
    NotSelfAdjoint { defect: f64, tolerance: f64 },

    /// A self-adjoint operator had spectral radius above one.
    #[error("operator norm {norm} exceeds one beyond tolerance")]
    NormExceedsOne { norm: f64 },

    /// Atom layout is incompatible with the requested construction.
    #[error("layout mismatch: {context}")]
    LayoutMismatch { context: String },

    /// Requested frame bounds were not `0 < lower ≤ upper`.
    #[error("invalid bounds: lower {lower}, upper {upper}")]
    InvalidBounds { lower: f64, upper: f64 },

    /// An operator block contained a NaN or infinite entry.
    #[error("matrix entry ({row}, {col}) at atom {atom} is not finite")]
    NonFiniteEntry { atom: usize, row: usize, col: usize },

    /// A local basis matrix failed the unitarity check.
    #[error("local basis at atom {atom} is not unitary: defect {defect:.3e}")]
    NotUnitaryBasis { atom: usize, defect: f64 },

    /// Every candidate phase on the unit-circle grid sits within tolerance
    /// of the transition operator's spectrum.
    #[error("every grid phase lies within tolerance of the spectrum")]
    DegenerateSpectrumGrid,

    /// An eigenvalue iteration did not converge.
    #[error("eigenvalue iteration failed to converge")]
    SpectralDecompositionFailed,
}

impl FrameError {
    pub(crate) fn shape(context: impl Into<String>) -> Self {
        FrameError::ShapeMismatch {
            context: context.into(),
        }
    }

    pub(crate) fn layout(context: impl Into<String>) -> Self {
        FrameError::LayoutMismatch {
            context: context.into(),
        }
    }
}
