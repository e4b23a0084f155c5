use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("element does not belong to the expected group")]
    GroupMismatch,
    #[error("homomorphism is not well defined: {0}")]
    IllDefinedHom(String),
    #[error("table does not define a finite abelian group: {0}")]
    NotAGroup(String),
    #[error("invalid quadratic order: {0}")]
    InvalidOrder(String),
    #[error("invalid quadratic form: {0}")]
    InvalidForm(String),
    #[error("forms have different discriminants")]
    DiscriminantMismatch,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is inert, so it has no prime ideal factor of degree one")]
    InertPrime(u64),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("point {0} is not on the curve")]
    OffCurve(String),
    #[error("unknown prime label `{0}`")]
    UnknownPrime(String),
    #[error("prime `{0}` has been removed from the model")]
    RemovedPrime(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("no trivializing cover within the search bound")]
    CoverSearchFailed,
    #[error("parse error: {0}")]
    Parse(String),
}
