use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relations do not truncate below degree {bound}")]
    RelationsDoNotTruncate { bound: u32 },

    #[error("relation is not homogeneous: {0}")]
    InhomogeneousRelation(String),

    #[error("elements belong to different coefficient rings")]
    RingMismatch,

    #[error("not expandable at infinity: {0}")]
    NotExpandableAtInfinity(String),

    #[error("variable mismatch: {0}")]
    VariableMismatch(String),

    #[error("wrong constant term: expected {expected}")]
    ConstantTerm { expected: &'static str },

    #[error("not a mirror-map shape: {0}")]
    NotMirrorMapShape(String),

    #[error("rational function has a pole at q = 0")]
    PoleAtZero,

    #[error("zero denominator factor in column {column} at degree {degree:?}")]
    ZeroDenominator { column: usize, degree: Vec<u32> },

    #[error("Birkhoff elimination singular at order {order:?}: residual {residual}")]
    BirkhoffSingular { order: Vec<u32>, residual: String },

    #[error("insufficient depth: {0}")]
    InsufficientDepth(String),

    #[error("mirror map component outside span{{1, p_i}}: {0}")]
    MirrorComponent(String),

    #[error("no log-ansatz fit: residual {0}")]
    NoFit(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Process exit code associated with this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InsufficientDepth(_) | Error::BirkhoffSingular { .. } => 3,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
