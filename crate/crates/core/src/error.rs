use alloc::string::String;
use core::fmt;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A parameter failed a precondition.
    InvalidParameter { what: &'static str, message: String },
    /// Euclidean-norm kernels only support exact convolutions through the
    /// dense path, which is feasible for d <= 4.
    EuclideanInfeasible { d: u32 },
    /// Return-probability tail sums diverge for d <= 2.
    DivergentTail { d: u32 },
    /// The convolution table is too short or too irregular to certify a
    /// tail bound.
    TailBoundUnavailable { n_max: usize },
    /// The operation needs a higher dimension than was supplied.
    DimensionTooLow { d: u32, min: u32 },
    /// Enumeration exceeded its work budget; partial results are discarded.
    BudgetExceeded { budget: u64 },
    /// The required vertex set of a census must be nonempty.
    EmptyRequired,
    /// Series entering one report must share a truncation order.
    TruncationMismatch { left: usize, right: usize },
    /// A series of the wrong kind was supplied.
    SeriesKindMismatch { expected: &'static str },
    /// The dense convolution counter would overflow its 128-bit counts.
    DenseOverflow { n: usize },
    /// Root bracketing failed: p * g(p) never crosses 1 inside the bracket.
    NoRoot,
    /// A lattice point has the wrong number of coordinates.
    PointDimension { expected: u32, got: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParameter { what, message } => {
                write!(f, "invalid {what}: {message}")
            }
            Error::EuclideanInfeasible { d } => write!(
                f,
                "euclidean norm at d = {d}: exact convolutions need the dense path (d <= 4); \
                 use the sup norm or opt into approximate construction"
            ),
            Error::DivergentTail { d } => write!(
                f,
                "tail sums of return probabilities diverge for d = {d} (need d >= 3)"
            ),
            Error::TailBoundUnavailable { n_max } => write!(
                f,
                "no valid tail bound at n_max = {n_max}; extend the table (n_max >= 6) first"
            ),
            Error::DimensionTooLow { d, min } => {
                write!(
                    f,
                    "d = {d} is below the minimum dimension {min} for this series"
                )
            }
            Error::BudgetExceeded { budget } => {
                write!(f, "enumeration exceeded its work budget of {budget} units")
            }
            Error::EmptyRequired => f.write_str("the required vertex set must be nonempty"),
            Error::TruncationMismatch { left, right } => write!(
                f,
                "series truncation orders differ ({left} vs {right}); recompute at one order"
            ),
            Error::SeriesKindMismatch { expected } => {
                write!(f, "expected a {expected} series")
            }
            Error::DenseOverflow { n } => write!(
                f,
                "dense convolution counts overflow 128 bits at n = {n}; lower n or use the sup norm"
            ),
            Error::NoRoot => f.write_str(
                "p * g(p) never crosses 1 inside the allowed bracket; the series is too short",
            ),
            Error::PointDimension { expected, got } => {
                write!(
                    f,
                    "lattice point has {got} coordinates, expected {expected}"
                )
            }
        }
    }
}

impl core::error::Error for Error {}
