use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero denominator in {0}")]
    ZeroDenominator(String),
    #[error("pole of order {order} at {point}; only simple poles are supported")]
    PoleOrder { point: String, order: usize },
    #[error("divergent limit: deg(num) {num_deg} + {k} > deg(den) {den_deg}")]
    DivergentLimit { num_deg: usize, den_deg: usize, k: i64 },
    #[error("no r{kind} value registered at {point}")]
    MissingRValue { kind: u8, point: String },
    #[error("cardinality mismatch: {0}")]
    CardinalityMismatch(String),
    #[error("vanishing Vandermonde of {0}")]
    VandermondeZero(String),
    #[error("pseudo-vacuum is not an eigenvector of T{0}{0}")]
    NotEigenvector(usize),
    #[error("parse error at line {line}, field `{field}`: {msg}")]
    Parse { line: usize, field: String, msg: String },
    #[error("genericity violated: {0}")]
    Genericity(String),
    #[error("{0} not present in set")]
    NotInSet(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
