use thiserror::Error;

use crate::object::ObjectWord;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("type mismatch in `{context}`: expected {expected}, found {found}")]
    TypeMismatch { context: String, expected: String, found: String },

    #[error("backend `{0}` cannot enumerate hom-sets")]
    NotEnumerable(&'static str),

    #[error("cannot split {cod} as environment {env} followed by {rest}")]
    BadSplit { cod: String, env: String, rest: String },

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("strategy `{strategy}` is not available on backend `{backend}`")]
    IncompatibleStrategy { strategy: String, backend: &'static str },

    #[error("backend `{0}` is not cartesian with inhabited objects")]
    NotCartesian(&'static str),

    #[error("backend `{0}` is not compact closed")]
    NotCompactClosed(&'static str),

    #[error("backend `{0}` is not a complex dagger-compact backend")]
    NotDaggerBackend(&'static str),

    #[error("slide move does not apply: {0}")]
    NonComposableMove(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("functor is ill-typed: {0}")]
    IllTypedFunctor(String),

    #[error("hole mismatch: {0}")]
    HoleMismatch(String),

    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("invalid object: {0}")]
    InvalidObject(String),

    #[error("invalid literal: {0}")]
    InvalidLiteral(String),
}

impl Error {
    pub(crate) fn mismatch(context: impl Into<String>, expected: &ObjectWord, found: &ObjectWord) -> Self {
        Error::TypeMismatch { context: context.into(), expected: expected.to_string(), found: found.to_string() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
