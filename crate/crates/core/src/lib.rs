//! Exact-arithmetic engine for the formal group law of geometric cobordisms.
//!
//! The engine works over ℚ[b₁,b₂,…], the rationalized coefficient ring of the
//! logarithm of the universal formal group law, and provides
//!
//! * exact rationals with p-adic valuations ([`rational`]),
//! * partitions and homogeneous graded polynomials ([`partition`], [`graded`]),
//! * truncated power series in one and two variables ([`series`]),
//! * the logarithm/exponential pair, k-series and their coefficients, the
//!   universal formal group law, projective-space and Milnor-hypersurface
//!   classes ([`fgl`]),
//! * generator bases of the p-local cobordism ring with exact change of
//!   basis and characteristic numbers s_ω ([`bases`]),
//! * the obstruction tests deciding whether a class contains a manifold with
//!   a simple Z/p-action ([`obstruction`]),
//! * realization of fixed-point data as mod-p cobordism classes
//!   ([`conner_floyd`]).
//!
//! Everything is immutable after construction and safe to query concurrently;
//! there is no floating point anywhere.

pub mod bases;
pub mod conner_floyd;
pub mod error;
pub mod fgl;
pub mod graded;
pub mod obstruction;
pub mod partition;
pub mod rational;
pub mod series;

pub use bases::{s_numbers, BasisKind, GeneratorBasis, Provenance};
pub use conner_floyd::{
    builtin_action, congruent_mod_p_omega, gamma_p, phi_a, phi_ak, realize_class, BuiltinAction,
    FixedComponentDatum, ModPRepresentative, SimpleActionData, WeightList,
};
pub use error::{Error, Result};
pub use fgl::{
    alpha_coeff, beta_coeff, cp_class, exponential, k_series, logarithm, milnor_hypersurface,
    universal_fgl,
};
pub use graded::GradedElement;
pub use obstruction::{
    CharnumWitness, Classification, Classifier, IdealWitness, ObstructionReport, OmegaWitness,
};
pub use partition::{classify_partition, partitions_of, Partition, PartitionClass};
pub use rational::{
    is_p_integral, p_valuation, rat, rat_int, render_rational, residue_mod_p, OddPrime, PValuation,
    Rational,
};
pub use series::{BiSeries, USeries};
