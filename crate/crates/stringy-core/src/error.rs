//! Error type shared by the engine.
//!
//! Structural checks (validators, axiom sweeps) do not error — they return
//! [`crate::report::Report`]s. Errors are reserved for operations whose
//! preconditions fail: mismatched parents, missing data, evaluations the
//! calculus refuses to perform.

use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two values that must share a parent algebra do not.
    ParentMismatch(&'static str),
    /// A coefficient vector or matrix has the wrong dimensions.
    DimensionMismatch(&'static str),
    /// Series arithmetic on different truncations.
    TruncationMismatch,
    /// Series inversion or fractional power of a series not starting at 1.
    ConstantTermNotOne,
    /// K-classes on different strata combined.
    StratumMismatch(String, String),
    /// Coefficient extraction at a fractional rank; roots are the way out.
    FractionalRank,
    /// Evaluation rank exceeds the series truncation.
    RankBeyondTruncation(usize, usize),
    /// K-flavor Euler series of a fractional class.
    KFlavorFractional,
    /// Eigen-class index outside `1..order`.
    EigenIndexOutOfRange(usize, usize),
    /// A class that must be an honest bundle is not.
    NonEffective(String),
    /// A line generator has no restriction to the requested stratum.
    MissingRestriction(String, String),
    /// No triple data for a sector pair.
    MissingTriple(String),
    /// No section (of the requested set) on a sector.
    MissingSection(String),
    /// A pullback admits no section.
    NotSurjective(String),
    /// A Frobenius pairing whose Gram matrix is singular.
    DegeneratePairing(String),
    /// Group table violations discovered at construction.
    InvalidGroup(String),
    /// Root adjunction with order < 1.
    InvalidRootOrder,
    /// Missing line-generator data for a root realization.
    MissingLineData(String),
    /// Anything the calculus deliberately refuses to evaluate.
    Unsupported(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ParentMismatch(ctx) => write!(f, "parent algebra mismatch in {ctx}"),
            Error::DimensionMismatch(ctx) => write!(f, "dimension mismatch in {ctx}"),
            Error::TruncationMismatch => write!(f, "series truncations differ"),
            Error::ConstantTermNotOne => write!(f, "series constant term is not 1"),
            Error::StratumMismatch(a, b) => write!(f, "K-classes on different strata: {a} vs {b}"),
            Error::FractionalRank => write!(f, "fractional rank needs root extension"),
            Error::RankBeyondTruncation(r, t) => {
                write!(f, "evaluation rank {r} exceeds truncation {t}")
            }
            Error::KFlavorFractional => {
                write!(f, "K-flavor Euler series of a fractional class; adjoin roots instead")
            }
            Error::EigenIndexOutOfRange(k, r) => {
                write!(f, "eigen index {k} outside 1..{r}")
            }
            Error::NonEffective(c) => write!(f, "class is not effective: {c}"),
            Error::MissingRestriction(g, s) => {
                write!(f, "generator {g} has no restriction to stratum {s}")
            }
            Error::MissingTriple(pair) => write!(f, "no triple data for ({pair})"),
            Error::MissingSection(m) => write!(f, "no section on sector {m}"),
            Error::NotSurjective(ctx) => {
                write!(f, "{ctx}: sector not cyclic - push-pull route unavailable")
            }
            Error::DegeneratePairing(ctx) => write!(f, "degenerate pairing on {ctx}"),
            Error::InvalidGroup(why) => write!(f, "invalid group table: {why}"),
            Error::InvalidRootOrder => write!(f, "root order must be at least 1"),
            Error::MissingLineData(g) => write!(f, "missing line data for {g}"),
            Error::Unsupported(why) => write!(f, "{why}"),
        }
    }
}
