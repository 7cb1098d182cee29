use thiserror::Error;

use crate::concat::Procedure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("operation requires a minimum distance but the code has none")]
    MissingDistance,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("alphabet mismatch: outer code is {outer}-ary, inner code is {inner}-ary")]
    AlphabetMismatch { outer: u64, inner: u64 },

    #[error("{procedure:?} concatenation requires k_inner = {k_inner} to divide n_outer = {n_outer}")]
    Indivisible {
        procedure: Procedure,
        k_inner: u64,
        n_outer: u64,
    },

    #[error("concatenation stage {stage} failed: {source}")]
    Stage {
        stage: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("alphabet size {0} is not a perfect square")]
    NotPerfectSquare(u64),

    #[error("invalid polynomial: {0}")]
    Polynomial(String),

    #[error("empty range: {0}")]
    EmptyRange(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Self::Syntax { .. } => "syntax",
            Self::Invariant(_) => "invariant",
            Self::MissingDistance => "missing_distance",
            Self::Precondition(_) => "precondition",
            Self::AlphabetMismatch { .. } => "alphabet_mismatch",
            Self::Indivisible { .. } => "indivisible",
            Self::Stage { .. } => "stage",
            Self::UnknownName(_) => "unknown_name",
            Self::NotPerfectSquare(_) => "not_perfect_square",
            Self::Polynomial(_) => "polynomial",
            Self::EmptyRange(_) => "empty_range",
        }
    }
}
