use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty range: {0}")]
    EmptyRange(&'static str),

    #[error("invalid parameter `{name}`: {reason}")]
    Parameter { name: &'static str, reason: String },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("polynomials over different fields (q = {0} and q = {1})")]
    FieldMismatch(u64, u64),

    #[error("resource bound exceeded: {what} = {value} > {limit}")]
    BoundExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },

    #[error("the principal character has no reduced L-polynomial")]
    PrincipalCharacter,

    #[error("character is not even")]
    OddCharacter,

    #[error("unit group generators do not form a basis: {0}")]
    NotABasis(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::Parameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn bound(what: &'static str, value: u128, limit: u128) -> Self {
        Error::BoundExceeded { what, value, limit }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
