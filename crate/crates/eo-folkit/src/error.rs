use thiserror::Error;

/// Errors across the toolkit. Input-validation variants indicate bad
/// arguments; [`Error::Inconsistent`] signals that an internal cross-check
/// between two independent computation routes failed, which is a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n+m = {got} exceeds the enumeration bound {bound}")]
    BoundExceeded { got: usize, bound: usize },

    #[error("signature requires {requirement}, got n = {n}, m = {m}")]
    BadSignature {
        n: usize,
        m: usize,
        requirement: &'static str,
    },

    #[error("permutation size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("images {0:?} are not a bijection of {{1..N}}")]
    NotAPermutation(Vec<usize>),

    #[error("{word} is not an ({n},{m})-shuffle")]
    NotAShuffle { word: String, n: usize, m: usize },

    #[error("EO order search space n!*m! = {needed} exceeds bound {bound}")]
    SearchBoundExceeded { needed: u128, bound: u128 },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("inverse of zero in GF({0}^2)")]
    DivisionByZero(u64),

    #[error("unknown deformation-ring generator `{0}`")]
    UnknownGenerator(String),

    #[error("subspace lives in twist {got}, expected twist {expected}")]
    TwistMismatch { got: usize, expected: usize },

    #[error("twist index {0} out of the tracked range 0..=2")]
    TwistOutOfRange(usize),

    #[error("subspace is not graded: row {0} mixes e- and f-coordinates")]
    NotGraded(usize),

    #[error("lattice pair ({a},{b}) out of range 0..={max}")]
    LatticePairOutOfRange { a: usize, b: usize, max: usize },

    #[error("r is undefined for n = {n}, m = {m}: it requires n < 2m")]
    RUndefined { n: usize, m: usize },

    #[error("enumeration size {needed} exceeds guard {guard}")]
    GuardExceeded { needed: String, guard: String },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for variants caused by invalid input rather than an
    /// implementation defect.
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::Inconsistent(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
