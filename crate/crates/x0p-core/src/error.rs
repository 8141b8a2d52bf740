use thiserror::Error;

/// Errors surfaced by the census, linear algebra, and assembly pipelines.
///
/// Check failures inside an assembled report are not errors; they are
/// recorded as verdicts on the report itself. An `Error` means the input
/// was unusable or an internal consistency guarantee broke.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("prime {0} is below 5; the supersingular model needs p >= 5")]
    PrimeTooSmall(u64),

    #[error("division by zero in F_{0}")]
    DivisionByZero(u64),

    #[error("division by the zero polynomial over F_{0}")]
    ZeroPolynomialDivisor(u64),

    #[error("modulus of the reduction polynomial must have positive degree")]
    BadReductionModulus,

    #[error("lambda = {0} does not correspond to an elliptic curve")]
    DegenerateLambda(u64),

    #[error("curve y^2 = x^3 + a4 x + a6 is singular (4 a4^3 + 27 a6^2 = 0)")]
    SingularCurve,

    #[error("supersingular census for p = {p} is inconsistent: {reason}")]
    CensusInconsistent { p: u64, reason: String },

    #[error("monodromy pairing for p = {0} is degenerate")]
    DegeneratePairing(u64),

    #[error("Frobenius does not preserve the cycle lattice for p = {0}")]
    LatticeNotPreserved(u64),

    #[error("matrix dimensions {0}x{1} do not admit this operation")]
    DimensionMismatch(usize, usize),

    #[error("genus {genus} and field count {h} have mismatched parity for p = {p}")]
    RankParity { p: u64, genus: u64, h: u64 },

    #[error("invariant factors [{0}] do not form a divisibility chain of integers >= 2")]
    InvalidInvariantFactors(String),

    #[error("unknown Kodaira symbol {0:?}")]
    UnknownKodairaSymbol(String),

    #[error("Kodaira symbol {0:?} denotes multiplicative reduction; only good or additive types are accepted")]
    MultiplicativeReduction(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
