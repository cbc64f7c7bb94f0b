use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),

    #[error("invalid generator name `{0}`")]
    InvalidName(String),

    #[error("generator `{0}` must have degree at least 1")]
    ZeroDegree(String),

    #[error("element does not belong to this algebra: {0}")]
    Membership(String),

    #[error("element is not homogeneous")]
    Inhomogeneous,

    #[error("d({name}) has degree {found}, expected {expected}")]
    DifferentialDegree { name: String, expected: u32, found: u32 },

    #[error("d² ≠ 0 on generator `{0}`")]
    NotSquareZero(String),

    #[error("image of `{name}` has degree {found}, expected {expected}")]
    MorphismDegree { name: String, expected: u32, found: u32 },

    #[error("morphism does not commute with d on generator `{0}`")]
    NotChainMap(String),

    #[error("relation `{0}` is not homogeneous")]
    InhomogeneousRelation(String),

    #[error("relations do not span a differential ideal: d({0}) is not in the ideal")]
    IdealNotClosed(String),

    #[error("degree {degree} is above the truncation cap {cap}")]
    AboveCap { degree: u32, cap: u32 },

    #[error("t-degree {found} exceeds the configured bound {bound}")]
    TDegreeOverflow { found: u32, bound: u32 },

    #[error("not simply connected: {0}")]
    NotSimplyConnected(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("homotopy endpoint mismatch on `{0}`")]
    EndpointMismatch(String),

    #[error("invalid primitive for `{0}`: {1}")]
    InvalidPrimitive(String, String),

    #[error("obstruction does not vanish")]
    ObstructionNonzero,

    #[error("product {0} does not vanish in cohomology")]
    NonvanishingProduct(String),

    #[error("missing bigrading")]
    MissingBigrading,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
