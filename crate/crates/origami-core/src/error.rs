use thiserror::Error;

/// Unified error type for every kernel operation.
///
/// Errors are split between exact-arithmetic failures (division by zero,
/// incompatible towers), domain violations of individual constructions
/// (negative radicands, degenerate trisections, parallel lines) and
/// input/serialization problems. Each variant maps to a stable machine
/// code via [`Error::code`], used by the CLI for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero (exact)")]
    DivisionByZero,
    #[error("operands belong to unrelated towers: {0}")]
    IncompatibleTowers(String),
    #[error("radicand is negative in the principal embedding")]
    NegativeRadicand,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("trisection parameter satisfies |u| = 1 exactly (double root)")]
    DegenerateTrisection,
    #[error("tower depth cap of {cap} extension steps exceeded")]
    TowerDepthExceeded { cap: usize },
    #[error("the two points coincide exactly")]
    CoincidentPoints,
    #[error("lines are parallel and distinct")]
    ParallelLines,
    #[error("lines are identical")]
    IdenticalLines,
    #[error("point does not lie on the line")]
    PointNotOnLine,
    #[error("no real fold exists (negative discriminant)")]
    NoRealFold,
    #[error("degenerate fold configuration: {0}")]
    DegenerateConfiguration(String),
    #[error("cubic is not totally real (discriminant not positive)")]
    NotTotallyReal,
    #[error("polynomial is reducible over the coefficient field")]
    NotIrreducible,
    #[error("polynomial is not a cubic")]
    NotCubic,
    #[error("input list is empty")]
    EmptyInput,
    #[error("angle is not strictly between 0 and a right angle")]
    NotAcute,
    #[error("unknown trace object: {0}")]
    UnknownObject(String),
    #[error("invalid trace: {0}")]
    InvalidTrace(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("pencil cubic does not have three real roots")]
    ComplexPencil,
    #[error("conic did not factor into two lines (nonzero residual)")]
    NotDegenerate,
    #[error("line pair is complex (negative discriminant in the quadratic part)")]
    ComplexLinePair,
    #[error("degenerate intersection, fewer than four distinct solutions: {0}")]
    DegenerateIntersection(String),
    #[error("zero polynomial has no root count")]
    ZeroPolynomial,
    #[error("unknown construction recipe: {0}")]
    UnknownRecipe(String),
    #[error("I/O error: {0}")]
    IoError(String),
    #[error("parse error: {0}")]
    ParseError(String),
}

impl Error {
    /// Stable machine-readable code for CLI diagnostics.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::IncompatibleTowers(_) => "IncompatibleTowers",
            Error::NegativeRadicand => "NegativeRadicand",
            Error::OutOfRange(_) => "OutOfRange",
            Error::DegenerateTrisection => "DegenerateTrisection",
            Error::TowerDepthExceeded { .. } => "TowerDepthExceeded",
            Error::CoincidentPoints => "CoincidentPoints",
            Error::ParallelLines => "ParallelLines",
            Error::IdenticalLines => "IdenticalLines",
            Error::PointNotOnLine => "PointNotOnLine",
            Error::NoRealFold => "NoRealFold",
            Error::DegenerateConfiguration(_) => "DegenerateConfiguration",
            Error::NotTotallyReal => "NotTotallyReal",
            Error::NotIrreducible => "NotIrreducible",
            Error::NotCubic => "NotCubic",
            Error::EmptyInput => "EmptyInput",
            Error::NotAcute => "NotAcute",
            Error::UnknownObject(_) => "UnknownObject",
            Error::InvalidTrace(_) => "InvalidTrace",
            Error::DegenerateInput(_) => "DegenerateInput",
            Error::ComplexPencil => "ComplexPencil",
            Error::NotDegenerate => "NotDegenerate",
            Error::ComplexLinePair => "ComplexLinePair",
            Error::DegenerateIntersection(_) => "DegenerateIntersection",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::UnknownRecipe(_) => "UnknownRecipe",
            Error::IoError(_) => "IoError",
            Error::ParseError(_) => "ParseError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::IoError(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
