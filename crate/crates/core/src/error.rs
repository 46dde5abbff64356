use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("syntax error at {line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate declaration `{0}`")]
    Duplicate(String),
    #[error("ill-formed path: {0}")]
    IllFormedPath(String),
    #[error("relation is not endpoint-homogeneous: {0}")]
    InhomogeneousRelation(String),
    #[error("modulus {0} is not a prime below 2^31")]
    NonPrimeModulus(u64),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("relation has a term of length < 2: {0}")]
    NotAdmissible(String),
    #[error("no nilpotency bound found up to degree {0}")]
    NotFiniteDimensional(usize),
    #[error("term of length {len} exceeds truncation degree {cap}")]
    TermTooLong { len: usize, cap: usize },
    #[error("unknown quotient specification: {0}")]
    UnknownSpec(String),
    #[error("module is zero")]
    ZeroModule,
    #[error("vertex `{0}` carries a loop")]
    LoopAtVertex(String),
    #[error("algebra is not weakly symmetric")]
    NotWeaklySymmetric,
    #[error("path touches the mutation vertex at an end: {0}")]
    IllegalEndpoint(String),
    #[error("relation search exhausted at length bound {0}")]
    R5SearchExhausted(usize),
    #[error("arrow elimination did not terminate: {0}")]
    NonTerminating(String),
    #[error("combinatorial and homotopy computations disagree: {0}")]
    OracleMismatch(String),
    #[error("arrow images do not generate the endomorphism algebra: {0}")]
    NotSurjective(String),
    #[error("brick has nonzero self-extension in the stable category (index {0})")]
    SelfExtensionNonzero(usize),
    #[error("approximation is zero: {0}")]
    ApproximationZero(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable code, used by the JSON error bodies.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Syntax { .. } => "SyntaxError",
            Error::UnknownArrow(_) => "UnknownArrow",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::Duplicate(_) => "Duplicate",
            Error::IllFormedPath(_) => "IllFormedPath",
            Error::InhomogeneousRelation(_) => "InhomogeneousRelation",
            Error::NonPrimeModulus(_) => "NonPrimeModulus",
            Error::Arithmetic(_) => "Arithmetic",
            Error::NotAdmissible(_) => "NotAdmissible",
            Error::NotFiniteDimensional(_) => "NotFiniteDimensional",
            Error::TermTooLong { .. } => "TermTooLong",
            Error::UnknownSpec(_) => "UnknownSpec",
            Error::ZeroModule => "ZeroModule",
            Error::LoopAtVertex(_) => "LoopAtVertex",
            Error::NotWeaklySymmetric => "NotWeaklySymmetric",
            Error::IllegalEndpoint(_) => "IllegalEndpoint",
            Error::R5SearchExhausted(_) => "R5SearchExhausted",
            Error::NonTerminating(_) => "NonTerminating",
            Error::OracleMismatch(_) => "OracleMismatch",
            Error::NotSurjective(_) => "NotSurjective",
            Error::SelfExtensionNonzero(_) => "SelfExtensionNonzero",
            Error::ApproximationZero(_) => "ApproximationZero",
            Error::Invalid(_) => "Invalid",
        }
    }
}
