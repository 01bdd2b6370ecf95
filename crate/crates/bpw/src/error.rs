use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot parse rational number from {0:?}")]
    ParseRational(String),
    #[error("zero polynomial has no finite root set")]
    ZeroPolynomial,
    #[error("both polynomials are constant in the eliminated variable")]
    DegenerateResultant,
    #[error("polynomials share a common factor; the solution set is infinite")]
    InfiniteSolutions,
    #[error("weight {requested} exceeds the enumeration bound {bound}")]
    WeightBound { requested: String, bound: u32 },
    #[error("state has nonzero charge {0}")]
    NonzeroCharge(i64),
    #[error("state is not homogeneous")]
    Inhomogeneous,
    #[error("index {0} is outside the stored range")]
    IndexOutOfRange(i64),
    #[error("h_i is defined for i >= 1, got {0}")]
    InvalidIndex(i64),
    #[error("level {0} is not supported here")]
    UnsupportedLevel(String),
    #[error("unexpected shape: {0}")]
    Shape(String),
    #[error("malformed data: {0}")]
    Data(String),
}

pub type Result<T> = std::result::Result<T, Error>;
