use thiserror::Error;

/// Errors raised by the geometric and combinatorial routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty point set")]
    EmptyInput,

    #[error("dimension {dim} exceeds the supported maximum of {max}")]
    UnsupportedDimension { dim: usize, max: usize },

    #[error("dilation factor must be positive, got {0}")]
    InvalidDilation(i64),

    #[error("simplex vertices are affinely dependent")]
    AffinelyDependent,

    #[error("excluded set is not a facet of the simplex: {0}")]
    NotAFacet(String),

    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(String),

    #[error("missing count for dilation {0}")]
    MissingSample(u64),

    #[error("interpolant disagrees with the sample at dilation {0}")]
    InterpolationMismatch(u64),

    #[error("leading coefficient vanishes on every residue class")]
    ZeroLeadingCoefficient,

    #[error("value is not integral: {0}")]
    NotIntegral(String),

    #[error("polygon is not convex")]
    NotConvex,

    #[error("polygon is not reflexive: {0} interior lattice points")]
    NotReflexive(u64),

    #[error("polygon is not centered at its interior lattice point")]
    NotCentered,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
