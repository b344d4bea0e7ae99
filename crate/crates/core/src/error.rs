use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("negative input: {0}")]
    NegativeInput(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("generators {0:?} are not coprime; use a Puiseux monoid instead")]
    NonCoprimeGenerators(Vec<u64>),
    #[error("empty generator list")]
    EmptyInput,
    #[error("modulus {0} is not a nonzero element of the semigroup")]
    ModulusNotInSemigroup(u64),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("the result is infinite: {0}")]
    InfiniteResult(String),
    #[error("invalid pair ({0}, {1}): need 2 <= p < q and gcd(p, q) = 1")]
    InvalidPair(u64, u64),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("ran out of primes at stage {stage}: needed {needed}, {available} left")]
    PrimesExhausted {
        stage: usize,
        needed: usize,
        available: usize,
    },
    #[error("denominator of {0} is divisible by the square of a prime")]
    DenominatorNotSquarefreeCompatible(String),
    #[error("prime {prime} divides the denominator of {value} but indexes no atom")]
    UnknownPrime { prime: u64, value: String },
    #[error("{0} is not an atom")]
    NotAnAtom(String),
    #[error("{0} is not an element of the monoid")]
    NotInMonoid(String),
    #[error("the monoid has unstable atoms")]
    NotStableMonoid,
    #[error("{0} is not in the unstable part")]
    NotInUnstablePart(String),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("enumeration limit of {0} exceeded")]
    LimitExceeded(usize),
    #[error("value too large for exact enumeration: {0}")]
    TooLarge(String),
    #[error("certified search disagrees for {value}: {detail}")]
    CertificationDisagreement { value: String, detail: String },
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
}

impl Error {
    /// Stable snake_case name of the variant, for machine-readable output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroDenominator => "zero_denominator",
            Error::NegativeInput(_) => "negative_input",
            Error::NotPrime(_) => "not_prime",
            Error::NonCoprimeGenerators(_) => "non_coprime_generators",
            Error::EmptyInput => "empty_input",
            Error::ModulusNotInSemigroup(_) => "modulus_not_in_semigroup",
            Error::ArityMismatch { .. } => "arity_mismatch",
            Error::InfiniteResult(_) => "infinite_result",
            Error::InvalidPair(..) => "invalid_pair",
            Error::OutOfRange(_) => "out_of_range",
            Error::PrimesExhausted { .. } => "primes_exhausted",
            Error::DenominatorNotSquarefreeCompatible(_) => "denominator_not_squarefree_compatible",
            Error::UnknownPrime { .. } => "unknown_prime",
            Error::NotAnAtom(_) => "not_an_atom",
            Error::NotInMonoid(_) => "not_in_monoid",
            Error::NotStableMonoid => "not_stable_monoid",
            Error::NotInUnstablePart(_) => "not_in_unstable_part",
            Error::InvalidSpec(_) => "invalid_spec",
            Error::Parse(_) => "parse",
            Error::LimitExceeded(_) => "limit_exceeded",
            Error::TooLarge(_) => "too_large",
            Error::CertificationDisagreement { .. } => "certification_disagreement",
            Error::UnknownSuite(_) => "unknown_suite",
        }
    }
}
