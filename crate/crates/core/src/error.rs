use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("genus must be ≥ 2 (got {0})")]
    GenusTooSmall(u32),
    #[error("genus must be ≤ {max} (got {got})")]
    GenusTooLarge { got: u32, max: u32 },
    #[error("rank must be >= 2 (got {0})")]
    RankTooSmall(u32),
    #[error("division by zero: variable {var} has negative exponent {exponent} and value 0")]
    DivisionByZero { var: char, exponent: i64 },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("class ({p},{q}) in degree {d} has no perverse degree assigned")]
    MissingPerverseDegree { p: u32, q: u32, d: u32 },
    #[error("bit-vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error(
        "enumeration over 2^{bits} elements exceeds the bound 2g <= {bound}; use closed_form mode"
    )]
    EnumerationBound { bits: u32, bound: u32 },
    #[error("unknown formula id `{0}`")]
    UnknownFormula(String),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
