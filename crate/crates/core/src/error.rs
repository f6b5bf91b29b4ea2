use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition { parts: Vec<i64>, reason: &'static str },

    #[error("letter {letter} outside alphabet 1..={alphabet}")]
    LetterOutOfRange { letter: u32, alphabet: u32 },

    #[error("parameter order violated: {0}")]
    ParameterOrder(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("exhaustive search bound exceeded: word length {length} > {bound}")]
    BruteForceBoundExceeded { length: usize, bound: usize },

    #[error("pole in hypergeometric coefficient at order {order}")]
    HypergeometricPole { order: usize },

    #[error("integral diverges: {0}")]
    DivergentIntegral(String),

    #[error("requested precision not reached: achieved about {achieved_digits:.1} digits")]
    PrecisionNotReached { achieved_digits: f64 },

    #[error("singular matrix (pivot vanished at step {step})")]
    SingularMatrix { step: usize },

    #[error("sampled function carries derivatives up to order {available}, equation needs {required}")]
    InsufficientDerivativeOrder { required: usize, available: usize },

    #[error("polynomial degree too large: {0}")]
    DegreeTooLarge(String),

    #[error("master equation violated: residual {residual:e} exceeds {tolerance:e}")]
    MasterEquationViolated { residual: f64, tolerance: f64 },

    #[error("series order {order} too small (need at least {minimum})")]
    OrderTooSmall { order: usize, minimum: usize },

    #[error("abscissa {x} outside certified convergence region (radius estimate {radius})")]
    SeriesDivergence { x: f64, radius: f64 },

    #[error("empty grid")]
    EmptyGrid,
}
