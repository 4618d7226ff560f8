use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size cap exceeded: {what} (limit {limit})")]
    SizeCapExceeded { what: String, limit: usize },

    #[error("sublattice does not have finite index in the ambient lattice")]
    IndexNotFinite,

    #[error("vector is not contained in the ambient lattice")]
    NotInLattice,

    #[error("polynomials live in rings of different size ({0} vs {1})")]
    SizeMismatch(usize, usize),

    #[error("polynomial is not homogeneous in the Veronese grading")]
    Inhomogeneous,

    #[error("zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("monomials have different degrees")]
    DegreeMismatch,

    #[error("index {index} out of range {range}")]
    IndexOutOfRange { index: usize, range: String },

    #[error("operation requires odd n, got n = {0}")]
    NotOdd(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
