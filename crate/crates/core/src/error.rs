use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),

    #[error("modulus {0} is too large (must fit in 31 bits)")]
    ModulusTooLarge(u64),

    #[error("character order {order} does not divide q - 1 = {group_order}")]
    OrderDoesNotDivide { order: u32, group_order: u32 },

    #[error("expected a function on F_{q}^{d} ({expected} values), got {got} values")]
    DimensionMismatch { q: u32, d: usize, expected: usize, got: usize },

    #[error("requested {requested} points but F_{q}^{d} only has {available}")]
    SizeTooLarge { q: u32, d: usize, requested: u128, available: u128 },

    #[error("radius j = 0 is excluded")]
    ZeroRadius,

    #[error("frequency m = 0 is outside this estimate")]
    ZeroFrequency,

    #[error("coefficient t must be nonzero")]
    ZeroCoefficient,

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("{what} = {got} exceeds the supported maximum {max}")]
    DimensionTooLarge { what: &'static str, got: usize, max: usize },

    #[error("point set is empty")]
    EmptySet,

    #[error("point sets live in different ambient spaces: F_{q1}^{d1} vs F_{q2}^{d2}")]
    AmbientMismatch { q1: u32, d1: usize, q2: u32, d2: usize },

    #[error("point file line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid config: {field}: {msg}")]
    InvalidConfig { field: &'static str, msg: String },

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        Error::HypothesisViolated(msg.into())
    }

    /// Wraps the error with the parameter tuple that produced it.
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context { context: context.into(), source: Box::new(self) }
    }

    /// The innermost error, skipping context wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Context { source, .. } => source.root(),
            other => other,
        }
    }
}
