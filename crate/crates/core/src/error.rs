use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty point set")]
    EmptyInput,

    #[error("polytope is not full-dimensional (ambient {dim}, affine {affine_dim})")]
    NotFullDimensional { dim: usize, affine_dim: usize },

    #[error("origin is not strictly interior")]
    OriginNotInterior,

    #[error("polytope has non-integral vertices")]
    NonIntegral,

    #[error("face dimension {requested} outside [0, {max}]")]
    FaceDimension { requested: usize, max: isize },

    #[error("invalid model: {0}")]
    InvalidSpec(String),

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("face does not belong to the Newton polytope of the polynomial")]
    NotAFace,

    #[error("lattice point counts disagree: {total} total points vs {boundary} boundary points")]
    CountMismatch { total: usize, boundary: usize },

    #[error("triangulation failed coverage accounting: {0}")]
    Coverage(String),

    #[error("points do not span a full-rank cone")]
    NotSpanning,

    #[error("insufficient points: need {needed}, have {have}")]
    InsufficientPoints { needed: usize, have: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
