use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("part at index {index} is not positive")]
    NonPositivePart { index: usize },
    #[error("parts increase at index {index}")]
    Increasing { index: usize },
    #[error("core moduli must be positive")]
    ZeroModulus,
    #[error("({a},{b}) are not coprime, so there are infinitely many ({a},{b})-cores")]
    NotCoprime { a: usize, b: usize },
    #[error("enumeration would visit {required} partitions, above the work limit of {limit}")]
    WorkLimit { required: u128, limit: u128 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbacusError {
    #[error("abacus modulus n must be positive")]
    ZeroModulus,
    #[error("expected {expected} values, found {found}")]
    Length { expected: usize, found: usize },
    #[error("f(0) must be 0, found {value}")]
    NonZeroStart { value: usize },
    #[error("f({index}) = {value} exceeds f({prev}) + 1 = {bound}", prev = .index - 1, bound = .previous + 1)]
    Growth { index: usize, value: usize, previous: usize },
    #[error("{partition} is not a {modulus}-core")]
    NotACore { partition: String, modulus: usize },
    #[error("cannot parse abacus spec {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

impl AbacusError {
    /// Index of the first value that breaks the abacus conditions, if any.
    pub fn failing_index(&self) -> Option<usize> {
        match self {
            AbacusError::NonZeroStart { .. } => Some(0),
            AbacusError::Growth { index, .. } => Some(*index),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiffSetError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("step must be at least 1 (clause at position {position})")]
    ZeroStep { position: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("constant term is not a unit, so the series has no reciprocal")]
    NonUnit,
    #[error("invalid series JSON: {0}")]
    Coefficient(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error("brute force up to n = {n_max} exceeds the work limit n <= {limit}")]
    WorkLimit { n_max: usize, limit: usize },
    #[error("the totals formulas need 0 outside the set, but {spec:?} contains 0")]
    ZeroInSet { spec: String },
    #[error("no closed form is known for {spec:?}; closed forms exist for all, positive and mult:d")]
    NoClosedForm { spec: String },
    #[error("method {method} is not available for variant {variant}; valid methods: {valid}")]
    UnsupportedMethod { variant: String, method: String, valid: String },
    #[error("{a} and {b} are not coprime, so the set of cores is infinite")]
    NotCoprime { a: usize, b: usize },
    #[error("{0}")]
    Domain(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OddEvenError {
    #[error("the empty partition has no white runs")]
    EmptyPartition,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("postcondition failed: {0}")]
    Postcondition(String),
}

#[derive(Debug, Error)]
pub enum OeisError {
    #[error("network lookups are disabled; pass the remote flag and set {0}=1")]
    NetworkDisabled(&'static str),
    #[error("request timed out")]
    Timeout,
    #[error("malformed response: {excerpt}")]
    Malformed { excerpt: String },
    #[error("http error: {0}")]
    Http(String),
    #[error("prefix needs at least {min} terms, got {got}")]
    PrefixTooShort { min: usize, got: usize },
    #[error("snapshot line {line}: {reason}")]
    Snapshot { line: usize, reason: String },
}
