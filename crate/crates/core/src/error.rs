use thiserror::Error;

pub type Result<T> = std::result::Result<T, MatalgError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MatalgError {
    #[error("expected a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },

    #[error("shape mismatch: expected {expected:?}, got {got:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        got: (usize, usize),
    },

    #[error("non-finite value produced by {0}")]
    NumericOverflow(&'static str),

    #[error("work budget exceeded: {what} needs {needed}, cap is {cap}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },

    #[error("basis is not closed under multiplication (residual {residual:.3e})")]
    NotAnAlgebra { residual: f64 },

    #[error("pairing kernel element fails nilpotency check (residual {residual:.3e})")]
    InconsistentRadical { residual: f64 },

    #[error("matrix lies outside the algebra (projection residual {residual:.3e})")]
    NotInAlgebra { residual: f64 },

    #[error("matrix lies outside the map domain (projection residual {residual:.3e})")]
    NotInDomain { residual: f64 },

    #[error("wrong size: {what} requires {expected}x{expected} matrices, got {got}x{got}")]
    WrongSize {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("invalid numbering: {0}")]
    InvalidNumbering(String),

    #[error("expected {expected} members, got {got}")]
    CountMismatch { expected: usize, got: usize },

    #[error("set is not simultaneously triangularizable: {0}")]
    NotTriangularizable(String),

    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(String),

    #[error("unknown fixture id `{0}`")]
    UnknownFixture(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
