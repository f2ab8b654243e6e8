use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Inverse of the zero quaternion.
    ZeroQuaternion,
    /// A grid violates its shape invariants.
    InvalidGrid(&'static str),
    /// A sample is NaN or infinite.
    NonFinite { row: usize, col: usize },
    /// Value count does not match `n1 * n2`.
    LengthMismatch { expected: usize, found: usize },
    /// Two fields that must share a grid do not.
    GridMismatch,
    /// `det(A) != 1`. `axis` is 1 or 2 when known.
    NotUnimodular { axis: Option<u8>, det: f64 },
    /// A matrix entry is NaN or infinite.
    NonFiniteParams,
    /// `b = 0` with `d <= 0`: the amplitude `sqrt(d)` is undefined.
    NonPositiveD { d: f64 },
    /// Quadrature inversion needs `b != 0` on both axes.
    DiracAxis { axis: u8 },
    /// A ratio or residual would divide by a zero norm.
    ZeroNorm,
    /// LCT-mode characteristic functions need transform parameters.
    MissingParams,
    /// Finite-difference step below the cancellation guard.
    StepTooSmall { h: f64 },
    /// Moment order outside `m + n <= 2`.
    UnsupportedOrder { m: u32, n: u32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroQuaternion => f.write_str("the zero quaternion has no inverse"),
            Error::InvalidGrid(why) => write!(f, "invalid grid: {why}"),
            Error::NonFinite { row, col } => {
                write!(f, "non-finite sample at node (row {row}, col {col})")
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} values, found {found}")
            }
            Error::GridMismatch => f.write_str("fields are sampled on different grids"),
            Error::NotUnimodular { axis: Some(axis), det } => {
                write!(f, "det(A{axis}) != 1 (det = {det})")
            }
            Error::NotUnimodular { axis: None, det } => write!(f, "det(A) != 1 (det = {det})"),
            Error::NonFiniteParams => f.write_str("matrix parameters must be finite"),
            Error::NonPositiveD { d } => {
                write!(f, "b = 0 requires d > 0 for the sqrt(d) amplitude (d = {d})")
            }
            Error::DiracAxis { axis } => write!(
                f,
                "axis {axis} has b = 0; the inverse kernel is a Dirac mass and cannot be quadratured"
            ),
            Error::ZeroNorm => f.write_str("reference norm is zero"),
            Error::MissingParams => f.write_str("lct mode requires transform parameters"),
            Error::StepTooSmall { h } => write!(f, "finite-difference step {h} is below 1e-5"),
            Error::UnsupportedOrder { m, n } => {
                write!(f, "moment order ({m}, {n}) unsupported; need m + n <= 2")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
