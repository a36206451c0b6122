use thiserror::Error;

use crate::parse::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("`{0}` is not a valid atom name")]
    InvalidAtom(String),

    /// The brute-force oracles refuse signatures above the configured ceiling.
    #[error("signature has {atoms} atoms, above the enumeration limit of {limit}")]
    LimitExceeded { atoms: usize, limit: usize },

    #[error("signature does not cover the program: missing {0}")]
    SignatureTooSmall(String),

    #[error("program is not in normal form: {0}")]
    NotNormalForm(String),

    #[error("program is not {0}-forgettable")]
    NotForgettable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
