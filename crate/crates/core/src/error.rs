use thiserror::Error;

#[derive(Error, Debug)]
pub enum ExactError {
    #[error("double factorial requires an odd positive argument, got {0}")]
    EvenDoubleFactorial(i64),
    #[error("interpolation needs {need} points, got {have}")]
    NotEnoughPoints { have: usize, need: usize },
    #[error("duplicate abscissa {0} in interpolation data")]
    DuplicateAbscissa(String),
    #[error("no polynomial of degree <= {bound} fits the data (mismatch at t = {at})")]
    InconsistentDegree { bound: usize, at: String },
}

#[derive(Error, Debug)]
pub enum LaurentError {
    #[error("variable count mismatch: {0} vs {1}")]
    VarCountMismatch(usize, usize),
    #[error("factor indices must be distinct and within 1..={nvars}, got ({i}, {j})")]
    BadFactorIndex { i: usize, j: usize, nvars: usize },
    #[error("symbolic-t coefficient requested in a rational coefficient ring")]
    SymbolicInRationalRing,
    #[error("truncation order must be >= 1")]
    BadTruncation,
    #[error("too many variables: {0} (engine limit {1})")]
    TooManyVars(usize, usize),
}

#[derive(Error, Debug)]
pub enum CtError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("intermediate term count {terms} exceeded the configured limit {limit}")]
    TermLimit { terms: usize, limit: usize },
    #[error("wall time limit of {0} s exceeded")]
    Timeout(u64),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("strategy disagreement: symbolic {symbolic} vs interpolated {interpolated}")]
    StrategyDisagreement {
        symbolic: String,
        interpolated: String,
    },
}
