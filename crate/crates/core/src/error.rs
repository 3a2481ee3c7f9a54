use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid group shape: {0}")]
    InvalidShape(String),

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid group element: {0}")]
    InvalidElement(String),

    #[error("matrix is not invertible")]
    NotUnit,

    #[error("unit group of order {size} exceeds the enumeration budget of {budget}")]
    BudgetExceeded { size: u128, budget: u64 },

    #[error("span of the generators is not invariant under t")]
    NotInvariant,

    #[error("direct sum of modules over different primes ({0} and {1})")]
    MixedPrimes(u64, u64),

    #[error("unsupported presentation: {0}")]
    UnsupportedPresentation(String),

    #[error("order exponent n = {0} is outside the supported range 0..=4")]
    UnsupportedExponent(u32),

    #[error("no extension of order p^{target}: need 2i - j = {required} <= {target}")]
    ExtensionBound { required: u32, target: u32 },

    #[error("quandle of size {size} exceeds the limit of {limit}")]
    QuandleTooLarge { size: usize, limit: usize },

    #[error("internal consistency check failed: {0}")]
    Verification(String),
}
