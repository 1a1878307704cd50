use thiserror::Error;

/// Errors raised by the weight and spectrum machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unsupported root system {family}{rank}: valid types are A_n (n>=1), B_n (n>=2), C_n (n>=2), D_n (n>=4), E6, E7, E8, F4, G2")]
    UnsupportedType { family: char, rank: usize },

    #[error("epsilon coordinates are only implemented for families A, B, C, D (got {0})")]
    UnsupportedConversion(char),

    #[error("weight has {got} coordinates but the root system has rank {expected}")]
    RankMismatch { expected: usize, got: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("{0}")]
    InvalidInput(String),

    #[error("{what} exceeds the configured bound of {bound}")]
    ResourceLimit { what: String, bound: u64 },

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn resource(what: impl Into<String>, bound: u64) -> Self {
        Error::ResourceLimit {
            what: what.into(),
            bound,
        }
    }

    /// True for errors caused by hitting a configured resource bound.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
