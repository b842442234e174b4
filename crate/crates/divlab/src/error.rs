use crate::rational::Rational;

pub type Result<T> = std::result::Result<T, Error>;

/// Error taxonomy. Variants classified as resource limits by
/// [`Error::is_resource_limit`] map to a distinct process exit code in the
/// CLI so callers can tell "you asked for too much" apart from "the input
/// was malformed".
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("ground set must contain at least one element")]
    EmptyGroundSet,
    #[error("ground set elements must be positive, got {0}")]
    NonPositiveElement(Rational),
    #[error("ground set contains {0} twice; elements must be distinct")]
    DuplicateElement(Rational),
    #[error("ground sets above {max} elements are unsupported, got {n}")]
    GroundSetTooLarge { n: usize, max: usize },
    #[error("k must satisfy 1 <= k <= {n}, got {k}")]
    KOutOfRange { k: usize, n: usize },
    #[error("s must be a positive integer")]
    InvalidScale,
    #[error("subset mask {mask:#x} has bits outside a ground set of {n} elements")]
    MaskOutOfRange { mask: u64, n: usize },
    #[error("mask popcount {got} does not match k = {expected}")]
    MaskWrongSize { got: u32, expected: usize },
    #[error("cannot parse '{input}' as a rational: {reason}")]
    MalformedRational { input: String, reason: &'static str },
    #[error("open interval needs lo < hi, got ({lo}, {hi})")]
    EmptyInterval { lo: Rational, hi: Rational },
    #[error("value list must have nonnegative total, got {0}")]
    NegativeTotal(Rational),
    #[error("{0}")]
    BadParameter(String),
    #[error("subset lists index {0} twice")]
    DuplicateIndex(u32),

    #[error("chain breaks at position {0}: not strictly below its successor in dominance order")]
    NotAChain(usize),
    #[error("chain member at position {0} is not an s-divisor of the ground set")]
    ChainMemberNotDivisor(usize),
    #[error("top chain member sums to {0} of the total; the bound needs a unit-fraction multiple of s")]
    ChainTopNotUnitFraction(Rational),

    #[error("family needs n >= {min}, got {n}")]
    FamilyTooSmall { n: usize, min: usize },
    #[error("exception family needs s >= 2, got {0}")]
    ScaleTooSmall(u64),
    #[error("no room for fillers at s = {s}, n = {n}; smallest feasible n is {min_n}")]
    FamilyInfeasible { s: u64, n: usize, min_n: usize },
    #[error("no multiplier t <= {limit} makes the completion element strictly largest")]
    NoCompletionMultiplier { limit: u64 },

    #[error("m and n must be coprime, got m = {m}, n = {n}")]
    NotCoprime { m: u64, n: u64 },
    #[error("fraction-pair parameters must be positive")]
    ZeroParameter,

    #[error("{0} exceeds the factorization cap {1}")]
    FactorizationCap(u64, u64),
    #[error("rank profile would have {0} levels, above the cap {1}")]
    ProfileTooLong(usize, usize),
    #[error("rank profile entry overflows u64; reduce n or d")]
    ProfileOverflow,
    #[error("exact width needs {0} poset elements, above the cap {1}")]
    WidthCapExceeded(u64, usize),
    #[error("enumeration budget of {budget} sets exhausted; resume from total {cursor}")]
    BudgetExhausted { budget: u64, cursor: u64 },
    #[error("oracle iteration budget of {0} exhausted")]
    OracleBudget(u64),

    #[error("sum bound {bound} is below {min}, the least total of {n} distinct positive integers")]
    SumBoundTooSmall { bound: u64, min: u64, n: usize },
    #[error("checkpoint corrupt at line {line}: {reason}")]
    CheckpointCorrupt { line: usize, reason: String },
    #[error("checkpoint was written by a different search configuration")]
    CheckpointMismatch,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures caused by configured resource ceilings rather than
    /// bad input. The CLI exits 3 on these and 2 on everything else.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::FactorizationCap(..)
                | Error::ProfileTooLong(..)
                | Error::ProfileOverflow
                | Error::WidthCapExceeded(..)
                | Error::BudgetExhausted { .. }
                | Error::OracleBudget(..)
        )
    }
}
