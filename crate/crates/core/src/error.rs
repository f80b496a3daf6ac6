use thiserror::Error;

/// Errors produced by the exact kernels and descriptor operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("K-theory is not finitely generated; use the Q character instead")]
    NotFinitelyGenerated,

    #[error("KTP hypothesis not satisfied: neither factor carries the ktp flag")]
    KtpHypothesis,

    #[error("real bootstrap hypothesis not satisfied: neither factor carries the n_real flag")]
    RealBootstrapHypothesis,

    #[error("Q-dimension is infinite; the character is indeterminate")]
    InfiniteQDimension,

    #[error("torsion present: input is not a Q-module")]
    TorsionPresent,

    #[error("enumeration budget exceeded: {0} elements requested, limit {1}")]
    BudgetExceeded(u128, u128),

    #[error("sample index must be >= 1")]
    ZeroSampleIndex,

    #[error("maps are not composable: {0}")]
    NotComposable(String),

    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),

    #[error("sequence is not exact at position {position} (homology {homology})")]
    NotExact { position: usize, homology: String },

    #[error("ring elements belong to different universes")]
    CrossUniverse,

    #[error("unknown descriptor `{0}`")]
    UnknownDescriptor(String),

    #[error("density must lie in [0, 1], got {0}")]
    InvalidDensity(String),

    #[error("character `{0}` is not applicable to descriptor `{1}`: {2}")]
    CharacterInapplicable(String, String, String),

    #[error("character `{0}` is not well defined on this universe; offending relation [{1}] = [{2}] + [{3}]")]
    CharacterNotWellDefined(String, String, String, String),

    #[error("KO ranks are not rationally 4-periodic; not valid united K-data")]
    NotRationallyPeriodic,

    #[error("united K-data is rank-inconsistent: {0}")]
    CrtRankInconsistent(String),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, col, msg: msg.into() }
    }
}
