//! Error type shared by the algebraic modules.

use std::fmt;

/// Errors raised by jet arithmetic, discriminants, preparation and towers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two operands were built over different variable contexts.
    ContextMismatch,
    /// Inversion of a jet whose constant term vanishes.
    NotAUnit,
    /// A linear change whose matrix has zero determinant.
    SingularMatrix,
    /// An operation requiring a monic polynomial got a non-monic one.
    NotMonic,
    /// Discriminant index outside 1..=degree.
    IndexOutOfRange { index: usize, degree: usize },
    /// The restriction to the distinguished axis vanishes at the stored
    /// precision although the jet itself does not.
    NotRegular,
    /// The jet is zero at its stored precision, so the requested judgment
    /// (order, regularity, divisibility) is undecidable.
    AmbiguousZero,
    /// No coordinate change up to the configured height achieved regularity.
    SearchExhausted { height_bound: u32 },
    /// A splitting input had a non-vanishing constant term.
    NonzeroConstantTerm,
    /// A function-germ input involves the distinguished first variable.
    InvolvesX1,
    /// A function-germ input is zero at the stored precision.
    ZeroGerm,
    /// A zero/nonzero judgment needed by the tower recursion is ambiguous
    /// at the working precision.
    InconclusivePrecision { detail: String },
    /// Hensel lifting along a branch whose derivative is not a unit.
    DerivativeNotUnit,
    /// Hensel seed fails the initial vanishing check.
    SeedNotApproximate,
    /// Numeric root finding with a (near-)zero leading coefficient.
    LeadingCoefficientZero,
    /// Numeric root finding hit the iteration cap.
    NoConvergence { residual: f64 },
    /// Malformed input to a constructor (degree/arity/precision mismatch).
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ContextMismatch => write!(f, "variable contexts differ"),
            Error::NotAUnit => write!(f, "jet is not a unit (constant term is zero)"),
            Error::SingularMatrix => write!(f, "linear change matrix is singular"),
            Error::NotMonic => write!(f, "polynomial is not monic"),
            Error::IndexOutOfRange { index, degree } => {
                write!(f, "discriminant index {index} out of range for degree {degree}")
            }
            Error::NotRegular => write!(f, "jet is not regular in the distinguished variable"),
            Error::AmbiguousZero => {
                write!(f, "jet is zero at the stored precision; judgment is ambiguous")
            }
            Error::SearchExhausted { height_bound } => write!(
                f,
                "no linear change up to height {height_bound} achieves regularity; \
                 raise the height bound or the precision"
            ),
            Error::NonzeroConstantTerm => write!(f, "germ has a non-vanishing constant term"),
            Error::InvolvesX1 => write!(f, "germ involves the distinguished first variable"),
            Error::ZeroGerm => write!(f, "germ is zero at the stored precision"),
            Error::InconclusivePrecision { detail } => write!(
                f,
                "inconclusive at the working precision ({detail}); rebuild with a larger N"
            ),
            Error::DerivativeNotUnit => {
                write!(f, "derivative along the seed is not a unit (branch is not simple)")
            }
            Error::SeedNotApproximate => {
                write!(f, "seed does not satisfy the initial vanishing check")
            }
            Error::LeadingCoefficientZero => write!(f, "leading coefficient is (near) zero"),
            Error::NoConvergence { residual } => {
                write!(f, "root iteration did not converge (max residual {residual:e})")
            }
            Error::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
