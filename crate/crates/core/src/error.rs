use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid qudit dimension {0}: must lie in 2..={max}", max = crate::modular::MAX_DIMENSION)]
    InvalidDimension(u32),

    #[error("a register needs at least one qudit")]
    InvalidQuditCount,

    #[error("qudit index {index} out of range for {n} qudits")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("two-qudit gate acts on qudit {0} twice")]
    ControlEqualsTarget(usize),

    #[error("{value} has no inverse modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },

    #[error("{coefficient}·y ≡ {rhs} (mod {modulus}) has no solution")]
    Unsolvable { coefficient: u64, rhs: u64, modulus: u64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("dense representation needs {required} entries, limit is {limit}")]
    TooLarge { required: u128, limit: usize },

    #[error("operation requires a prime dimension, got d = {0}")]
    CompositeDimension(u32),

    #[error("measurement requires a full tableau with destabilizers")]
    NotFullTableau,

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("inconsistent measurement constraints: {0}")]
    InconsistentSystem(String),

    #[error("invalid probability: {0}")]
    InvalidProbability(String),

    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("circuit contains {0} and cannot be inverted")]
    NotInvertibleCircuit(&'static str),

    #[error("circuit has no measurements")]
    NoMeasurement,

    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        Error::Parse { line, reason: reason.into() }
    }
}
