use thiserror::Error;

/// Errors raised by geometry, tree-space and solver routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parameter {t} outside [0, {max}]")]
    OutOfRange { t: f64, max: f64 },

    #[error("ray extension unsupported: step overshoots the geodesic span by {overshoot}")]
    ExtensionUnsupported { overshoot: f64 },

    #[error("operation not supported by this space: {0}")]
    Unsupported(&'static str),

    #[error("point not representable in floating point: {0}")]
    Unrepresentable(String),

    #[error("newick syntax error at byte {offset}: {message}")]
    Newick { offset: usize, message: String },

    #[error("duplicate leaf label `{0}`")]
    DuplicateLeaf(String),

    #[error("tree has {0} leaves; at least 3 are required")]
    TooFewLeaves(usize),

    #[error("tree has {0} leaves; at most {max} are supported", max = crate::treespace::MAX_LEAVES)]
    TooManyLeaves(usize),

    #[error("leaf sets differ")]
    LeafSetMismatch,

    #[error("iteration {iteration}: {source}")]
    Solver {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn at_iteration(self, iteration: usize) -> Error {
        Error::Solver { iteration, source: Box::new(self) }
    }
}
