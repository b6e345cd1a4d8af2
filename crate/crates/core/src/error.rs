//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial is reducible or has degree < 2: {0}")]
    ReduciblePolynomial(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different coefficient fields")]
    FieldMismatch,
    #[error("zero input not allowed")]
    ZeroInput,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("operation requires a non-constant rational function")]
    ConstantInput,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("rational function is not in normal form")]
    NotNormalForm,
    #[error("not a unit: {0}")]
    NotAUnit(String),
    #[error("decompositions do not share a target function")]
    NotSameTarget,
    #[error("set of units is not a group under composition")]
    NotAGroup,
    #[error("group is trivial")]
    TrivialGroup,
    #[error("group too large: {0} elements (limit {1})")]
    GroupTooLarge(usize, usize),
    #[error("units do not all fix the target function")]
    NotASubgroupOfFixingGroup,
    #[error("internal error: expected left component does not exist")]
    SolveFailed,
    #[error("|G(f)| = {0} differs from deg f = {1}: outside the normal case")]
    NotNormalCase(usize, usize),
    #[error("group matches no finite subgroup type of PGL2")]
    UnclassifiableGroup,
    #[error("degree {0} exceeds the supported limit {1}")]
    DegreeTooLarge(usize, usize),
    #[error("unknown case id: {0}")]
    UnknownCase(String),
    #[error("syntax error at position {pos}: {msg}")]
    SyntaxError { pos: usize, msg: String },
    #[error("denominator reduces to the zero function")]
    DivisionByZeroFunction,
    #[error("unknown symbol: {0}")]
    UnknownSymbol(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn syntax(pos: usize, msg: impl Into<String>) -> Error {
        Error::SyntaxError {
            pos,
            msg: msg.into(),
        }
    }
}
