use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u32),
    #[error("prime {0} is outside the supported range (odd primes up to 251)")]
    UnsupportedPrime(u32),
    #[error("extension degree {m} over GF({p}) is outside the supported range")]
    UnsupportedDegree { p: u32, m: usize },
    #[error("invalid reduction polynomial: {0}")]
    BadPolynomial(String),
    #[error("reduction polynomial is reducible over GF({0})")]
    ReduciblePolynomial(u32),
    #[error("element is not invertible")]
    NonInvertible,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("no element of order {n}: {n} does not divide {group_order}")]
    NoSuchRoot { n: u64, group_order: u64 },
    #[error("-1 is not a square in GF({p}^{m}); carriers cannot be rationalized")]
    NoRationalization { p: u32, m: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("symbol {value} at position {index} is not in GF({p})")]
    SymbolOutOfRange { index: usize, value: u32, p: u32 },
    #[error("recovered value at position {index} is not a ground-field element")]
    NotGroundField { index: usize },
    #[error("block length {n} is not coprime to p = {p}")]
    NotCoprime { n: usize, p: u32 },
    #[error("unsupported parameters: {0}")]
    UnsupportedParams(String),
    #[error("frame is inconsistent at spectrum index {index}")]
    InconsistentFrame { index: usize },
    #[error("bad frame magic")]
    BadMagic,
    #[error("bad frame length")]
    BadLength,
    #[error("frame parameters do not match: {0}")]
    ParamMismatch(String),
    #[error("coefficient {value} is not in GF({p})")]
    BadCoefficient { value: u32, p: u32 },
    #[error("extension fields (m = {0}) have no two-dimensional constellation embedding")]
    ExtensionNotEmbeddable(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("line {line}: {inner}")]
    AtLine { line: usize, inner: Box<Error> },
    #[error("frame {frame}: {inner}")]
    AtFrame { frame: usize, inner: Box<Error> },
}

impl Error {
    pub fn at_line(self, line: usize) -> Self {
        Error::AtLine {
            line,
            inner: Box::new(self),
        }
    }

    pub fn at_frame(self, frame: usize) -> Self {
        Error::AtFrame {
            frame,
            inner: Box::new(self),
        }
    }

    /// The error with any position wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtLine { inner, .. } | Error::AtFrame { inner, .. } => inner.root(),
            e => e,
        }
    }
}
