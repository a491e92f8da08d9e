use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring specification: {0}")]
    InvalidSpec(String),

    #[error("{0} is not invertible")]
    NotInvertible(String),

    #[error("enumeration of {requested} items exceeds the cap of {cap}")]
    CapExceeded { requested: u128, cap: u64 },

    #[error("the quadratic character is undefined in characteristic 2")]
    EvenCharacteristic,

    #[error("operation requires a field, got {0}")]
    NotAField(String),

    #[error("operands belong to different algebras")]
    AlgebraMismatch,

    #[error("operation unsupported at doubling level {0}")]
    UnsupportedLevel(usize),

    #[error("element is not a unit")]
    NotAUnit,

    #[error("doubling constant at position {0} is zero")]
    ZeroConstant(usize),

    #[error("doubling constant at position {0} is not a unit")]
    NonUnitConstant(usize),

    #[error("coefficient at position {0} is zero")]
    ZeroCoefficient(usize),

    #[error("algebra is not split: -alpha has no square root in the base field")]
    NotSplit,

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("invalid magma table: {0}")]
    InvalidTable(String),

    #[error("taxonomy flags are inconsistent: {0}")]
    InconsistentTaxonomy(String),
}
