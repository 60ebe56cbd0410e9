use thiserror::Error;

use crate::var::VarId;

/// Errors reported by polynomial operations, quadratization rules, and
/// the enumeration oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable x{var} is outside the declared universe of {universe} variables")]
    VarOutOfRange { var: u32, universe: usize },

    #[error("assignment has {got} bits but the universe has {expected} variables")]
    UniverseMismatch { expected: usize, got: usize },

    #[error("variable x{0} is already in use and cannot be introduced as fresh")]
    VariableInUse(VarId),

    #[error("coefficient must be strictly positive")]
    NonPositiveCoefficient,

    #[error("literal sets must be disjoint")]
    OverlappingSets,

    #[error("a term mentions both polarities of x{0}")]
    ConflictingPolarity(VarId),

    #[error("enumeration over {needed} variables exceeds the cap of {cap}")]
    CapExceeded { needed: usize, cap: usize },

    #[error("expected a quadratic function, got degree {0}")]
    NotQuadratic(usize),

    #[error("function is not submodular: positive quadratic coefficient on a term")]
    NotSubmodular,

    #[error("split system violates the positive-minimum / zero-subset condition")]
    InvalidSplitSystem,

    #[error("cover does not match the split system or does not cover the term")]
    InvalidCover,

    #[error("function has a positive term of degree >= 3; this rule handles negative terms only")]
    PositiveHigherDegreeTerm,

    #[error("term degree {0} is below the minimum of 3 for this rule")]
    DegreeTooSmall(usize),

    #[error("literal form is not a unary negaform")]
    NotNegaform,
}

pub type Result<T> = std::result::Result<T, Error>;
