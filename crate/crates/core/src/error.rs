use thiserror::Error;

/// Errors raised by the symbolic and numeric routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared symbol `{name}` at position {pos}")]
    UndeclaredSymbol { name: String, pos: usize },
    #[error("invalid symbol name `{0}`")]
    InvalidSymbolName(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes identically after substitution")]
    PoleAfterSubstitution,
    #[error("polynomial does not depend on `{0}`")]
    NotInVariable(String),
    #[error("denominator is numerically zero at the evaluation point (|den| = {0:e})")]
    NearZeroDenominator(f64),
    #[error("unbound symbol `{0}` in numeric evaluation")]
    UnboundSymbol(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not triangular")]
    NotTriangular,
    #[error("malformed matrix data: {0}")]
    MalformedMatrix(String),

    #[error("leading coefficient of relation vanishes identically")]
    ZeroLeadingCoefficient,
    #[error("duplicate rule head `{0}`")]
    DuplicateRuleHead(String),
    #[error("rule head must be a degree-2 word, got `{0}`")]
    InvalidRuleHead(String),
    #[error("rewriting budget of {0} steps exhausted")]
    BudgetExhausted(usize),
    #[error("invalid generator order: {0}")]
    InvalidOrder(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("binding violates constraint: {0}")]
    ConstraintViolated(String),
    #[error("degenerate parameter chart: {0}")]
    DegenerateChart(String),

    #[error("limit variable `{0}` already occurs in the source matrix")]
    LimitVariableInSource(String),
    #[error("pole at t=0 in entry ({row}, {col})")]
    PoleAtZero { row: usize, col: usize },

    #[error("degenerate q: q-number [{0}] vanishes")]
    DegenerateQ(u32),
    #[error("invalid spin: 2j = {0}")]
    InvalidSpin(i64),
    #[error("map coefficients are singular at a = 0")]
    SingularMap,

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
