use thiserror::Error;

/// Errors raised by constructions and certificates.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("hyperplanes do not meet properly")]
    NotProper,
    #[error("Hadamard product undefined: no coordinate is nonzero in both factors")]
    HadamardUndefined,
    #[error("product not a hyperplane: the point has a zero coordinate")]
    NotHyperplane,
    #[error("zero vector does not define a projective object")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("degenerate leading coefficients: apply a coordinate change first")]
    DegenerateLeading,
    #[error("conic not unique")]
    ConicNotUnique,
    #[error("singular point: gradient vanishes")]
    SingularPoint,
    #[error("not a rational normal curve: parametrization is singular")]
    NotRnc,
    #[error("duplicate parameters")]
    DuplicateParameters,
    #[error("invalid parameter [0:0]")]
    ZeroParameter,
    #[error("X not linkable inside CI({a},{b})")]
    NotLinkable { a: u64, b: u64 },
    #[error("parameters outside the supported range: {0}")]
    OutOfRange(String),
    #[error("no curve of degree {0} through the points")]
    NoCurveOfDegree(usize),
    #[error("certificate not found")]
    CertificateNotFound,
    #[error("degenerate configuration, resample: {0}")]
    Degenerate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
