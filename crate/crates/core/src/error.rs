use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be positive")]
    ZeroRank,
    #[error("resulting rank is negative")]
    NegativeRank,
    #[error("not integral: {0}")]
    NonIntegral(String),
    #[error("radicands {0} and {1} generate different fields")]
    MixedRadicands(String, String),
    #[error("degenerate span: 3 + α − β vanishes")]
    DegenerateSpan,
    #[error("depth budget of {0} exhausted")]
    DepthExceeded(u32),
    #[error("point lies outside the tiled region")]
    NotInRegion,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("{0} is not the slope of an exceptional bundle")]
    NotExceptional(String),
    #[error("enumeration of {0} subspaces exceeds the budget of {1}")]
    SizeLimit(u128, u128),
    #[error("classification carries no decomposition")]
    NotDecomposed,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for resource limits as opposed to domain or input errors.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::DepthExceeded(_) | Error::SizeLimit(..))
    }
}
