use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Parse failures are kept apart from domain failures so that front ends can
/// map them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at token {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("operation undefined at the terminator")]
    Terminator,

    #[error("arguments must be pairwise distinct")]
    NotDistinct,

    #[error("cannot prepend {entry} to {address}")]
    InvalidPrepend { entry: String, address: String },

    #[error("itinerary not realized: {0}")]
    NotRealized(String),

    #[error("the period-one component has no {0}")]
    PeriodOne(&'static str),

    #[error("invalid sector: {0}")]
    InvalidSector(String),

    #[error("invalid rotation number {0}: need a reduced fraction in (0,1)")]
    InvalidRotation(String),

    #[error("{0} is not a sector boundary of any component")]
    NotBoundary(String),

    #[error("invalid angled internal address: {0}")]
    InvalidAngledAddress(String),

    #[error("invalid internal address: {0}")]
    InvalidInternalAddress(String),

    #[error("{0} does not lie in the wake")]
    NotInWake(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }

    /// True for syntax errors in literals.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
