use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
///
/// Variants split into two families: validation failures (bad input, violated
/// hypotheses) and internal assertion breaches (states the mathematics says
/// are unreachable). [`Error::is_internal`] tells them apart; the CLI maps them
/// to exit codes 2 and 3 respectively.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument must be positive, got {0}")]
    NonPositive(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{p} does not divide {m}")]
    NotDivisor { p: u64, m: u64 },

    #[error("count sequences need at least one entry")]
    EmptySequence,

    #[error("not realizable: entry {index} would be {witness}")]
    NotRealizable { index: usize, witness: String },

    #[error("horizon mismatch: {0}")]
    HorizonMismatch(String),

    #[error("hypothesis violated at n={index}: {hypothesis}")]
    HypothesisViolated { index: usize, hypothesis: String },

    #[error("recursion produced a negative count at n={index}: {value}")]
    NegativeCount { index: usize, value: BigInt },

    #[error("invalid growth parameters: {0}")]
    InvalidGrowthSpec(String),

    #[error("the decomposition has no surviving fixed point (s_1 = 0)")]
    EmptyFixedPoint,

    #[error("system invariant breached: {0}")]
    InvariantBreach(String),

    #[error("quotient map is ill-defined: {0}")]
    IllDefined(String),

    #[error("system has {points} points, above the limit of {limit}")]
    TooLarge { points: String, limit: usize },

    #[error("need a horizon of at least {needed}, got {got}")]
    HorizonTooSmall { needed: usize, got: usize },

    #[error("series constant term must be {expected}, got {got}")]
    ConstantTerm { expected: &'static str, got: String },

    #[error("coefficient {index} is not a non-negative integer: {value}")]
    NotCountSequence { index: usize, value: String },

    #[error("congruence system has no solution at n={0}")]
    NoSolution(u64),

    #[error("integrality failure at n={index}: {detail}")]
    IntegralityFailure { index: usize, detail: String },

    #[error("negativity failure at n={index}: {detail}")]
    NegativityFailure { index: usize, detail: String },

    #[error("need at least {needed} coefficients, got {got}")]
    TooFewCoefficients { needed: usize, got: usize },

    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown example '{0}'")]
    UnknownExample(String),

    #[error("output for '{name}' differs from the golden file at line {line}")]
    GoldenMismatch { name: String, line: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable identifier.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NonPositive(_) => "non_positive",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::NotPrime(_) => "not_prime",
            Error::NotDivisor { .. } => "not_divisor",
            Error::EmptySequence => "empty_sequence",
            Error::NotRealizable { .. } => "not_realizable",
            Error::HorizonMismatch(_) => "horizon_mismatch",
            Error::HypothesisViolated { .. } => "hypothesis_violated",
            Error::NegativeCount { .. } => "negative_count",
            Error::InvalidGrowthSpec(_) => "invalid_growth_spec",
            Error::EmptyFixedPoint => "empty_fixed_point",
            Error::InvariantBreach(_) => "invariant_breach",
            Error::IllDefined(_) => "ill_defined",
            Error::TooLarge { .. } => "too_large",
            Error::HorizonTooSmall { .. } => "horizon_too_small",
            Error::ConstantTerm { .. } => "constant_term",
            Error::NotCountSequence { .. } => "not_count_sequence",
            Error::NoSolution(_) => "no_solution",
            Error::IntegralityFailure { .. } => "integrality_failure",
            Error::NegativityFailure { .. } => "negativity_failure",
            Error::TooFewCoefficients { .. } => "too_few_coefficients",
            Error::CrossCheck(_) => "cross_check",
            Error::Parse { .. } => "parse",
            Error::UnknownExample(_) => "unknown_example",
            Error::GoldenMismatch { .. } => "golden_mismatch",
            Error::Io(_) => "io",
        }
    }

    /// True for breaches of invariants that valid input can never trigger.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NegativeCount { .. }
                | Error::InvariantBreach(_)
                | Error::IllDefined(_)
                | Error::NoSolution(_)
                | Error::IntegralityFailure { .. }
                | Error::NegativityFailure { .. }
                | Error::CrossCheck(_)
                | Error::GoldenMismatch { .. }
        )
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
