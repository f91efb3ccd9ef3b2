//! Error type shared by the whole engine.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: u32, right: u32 },

    #[error("truncation too small: need u^{needed}, series truncated at u^{truncation}")]
    TruncationExceeded { needed: usize, truncation: usize },

    #[error("the 0-series is not part of the power system")]
    ZeroKSeries,

    #[error("series has no compositional inverse: leading coefficient must be a nonzero rational scalar")]
    NonScalarLeading,

    #[error("series has no reciprocal: constant term must be a nonzero rational scalar")]
    NonInvertibleConstant,

    #[error("cannot substitute a series with nonzero constant term")]
    NonzeroConstantTerm,

    #[error("weight {0} is divisible by p; weights must be nonzero residues")]
    InvalidWeight(i64),

    #[error("weight list must be nonempty")]
    EmptyWeightList,

    #[error("fixed-point data must have at least one component")]
    EmptyComponentList,

    #[error("component dimensions must satisfy deg(class) + #weights = ambient degree: {class_degree} + {weight_count} != {ambient}")]
    ComponentDimensionMismatch {
        class_degree: u32,
        weight_count: usize,
        ambient: u32,
    },

    #[error("degree {degree} exceeds the basis range (max {max})")]
    DegreeExceedsBasis { degree: u32, max: u32 },

    #[error("degree-0 classes are rejected: the ideal has no unit")]
    DegreeZeroClass,

    #[error("class is not p-local: realizability tests require a p-integral class")]
    NotPLocal,

    #[error("unknown builtin action '{0}'")]
    UnknownBuiltinAction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
