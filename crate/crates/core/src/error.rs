use thiserror::Error;

/// Errors raised by the library.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("unsupported field size {p}^{k}")]
    UnsupportedSize { p: u64, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("too large: {0}")]
    TooLarge(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("prime {p} does not divide the group order {order}")]
    PrimeDoesNotDivideOrder { p: u64, order: usize },
    #[error("map number {0} is not an automorphism")]
    NotAnAutomorphism(usize),
    #[error("the given elements do not generate the domain (reached {reached} of {order})")]
    NotGenerating { reached: usize, order: usize },
    #[error("relation violated: image of {left}*{right} is {actual}, expected {expected}")]
    RelationViolated {
        left: usize,
        right: usize,
        expected: usize,
        actual: usize,
    },
    #[error("coset enumeration exceeded {0} cosets")]
    CosetLimitExceeded(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("generator action does not satisfy relator {0}")]
    InconsistentAction(usize),
    #[error("search budget of {0} nodes exceeded")]
    SearchBudgetExceeded(u64),
    #[error("invalid group table: {0}")]
    InvalidTable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Whether this error signals an exhausted resource limit rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Error::TooLarge(_) | Error::CosetLimitExceeded(_) | Error::SearchBudgetExceeded(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
