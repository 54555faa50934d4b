//! Exact computation of the irregularity of cyclic multiple planes.
//!
//! A cyclic multiple plane is the projective surface `z^n = f(x,y)` attached
//! to a plane curve B: f = 0 and the line at infinity.  When the line at
//! infinity is transverse to B, the irregularity q(S) of a desingularization
//! S is a sum of superabundances
//!
//! ```text
//!   q(S) = sum over xi in J(B,n) of  h^1(P^2, I_{Z(xi B)}(-3 + xi b)),
//! ```
//!
//! where J(B,n) is the set of subunitary jumping numbers of B lying in
//! (1/gcd(b,n))Z and Z(xi B) is the subscheme cut out by the multiplier
//! ideal of xi B.  For branch curves whose singularities are locally
//! `x^(dp) = y^(dq)` the multiplier ideals are cluster ideals on the
//! Enriques tree T_{p,q} of the Euclidean algorithm, and the whole pipeline
//! is exact rational arithmetic.
//!
//! Module map:
//! - [`enriques`]: gridded trees, clusters, proximity matrices, unloading,
//!   minimal unloaded clusters K_{p,q}(a,b).
//! - [`multiplier`]: jumping numbers and multiplier-ideal clusters for
//!   `x^(dp) = y^(dq)` singularities; the sets J(B,n) and J'(B,n).
//! - [`covering`]: divisor-class bookkeeping for standard cyclic coverings
//!   and the three-step normalization procedure.
//! - [`linsys`]: symbolic blow-up realization of clusters at rational plane
//!   points, exact condition matrices, h^0/h^1 of twisted ideal sheaves, and
//!   benchmark branch-curve constructions.
//! - [`irregularity`]: the irregularity pipeline, n-sweeps, and the triple
//!   point bound for line arrangements.
//! - [`format`]: structured text (JSON) formats for clusters, covering data,
//!   curves and reports.

pub mod covering;
pub mod enriques;
pub mod error;
pub mod format;
pub mod irregularity;
pub mod linsys;
pub mod multiplier;
pub mod poly;

pub use error::Error;

/// Exact rational scalar used throughout the linear-algebra kernel.
pub type Rat = num_rational::BigRational;

/// Result alias for fallible operations in this crate.
pub type Result<T> = std::result::Result<T, Error>;

pub use covering::{
    epsilon_factor, multiple_plane_data, resolved_plane_bundle, Branch, CoveringData,
    DivisorClass, Epimorphism,
};
pub use enriques::{
    build_tpq_tree, enumerate_unloaded_clusters, minimal_cluster, ArcKind, Cluster, GriddedTree,
    ProximityMatrix, StarCheck, StarContext,
};
pub use irregularity::{irregularity, profile, triple_point_bound, IrregularityReport, TermReport};
pub use linsys::{
    cohomology, conditions_matrix, line_arrangement, oka_curve, transversality_check, BranchCurve,
    ConditionMatrix, LineArrangement, LocalFrame, ProjectivePoint, SingularPoint,
};
pub use multiplier::{
    jumping_numbers, jumping_numbers_oracle, jumping_set, multiplier_cluster, singularity_params,
    tilde_pair, JumpingNumber, SingularityType,
};

/// Rational from an integer pair, reduced.
pub fn rat(num: i64, den: i64) -> Rat {
    use num_bigint::BigInt;
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(num: i64) -> Rat {
    use num_bigint::BigInt;
    Rat::from_integer(BigInt::from(num))
}
