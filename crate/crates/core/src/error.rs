use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-unit series")]
    NonUnitSeries,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported Cartan type: {0}")]
    UnsupportedType(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("weight outside q^Z")]
    WeightOutsideQZ,
    #[error("no unique highest ℓ-weight")]
    NoUniqueTop,
    #[error("incompatible operands: {0}")]
    Incompatible(String),
    #[error("formula convention violated: {0}")]
    FormulaConvention(String),
    #[error("negative multiplicity at {0}")]
    NegativeMultiplicity(String),
    #[error("action is not diagonal: {0}")]
    NotDiagonal(String),
    #[error("truncated: {0}")]
    Truncated(String),
    #[error("parse error: {0}")]
    Parse(String),
}
