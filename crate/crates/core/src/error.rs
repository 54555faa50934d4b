use thiserror::Error;

/// Error type shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    /// Parameters violate a stated precondition (coprimality, positivity, ...).
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The pair (p, q) is not coprime.
    #[error("p = {p} and q = {q} must be coprime")]
    NotCoprime { p: u64, q: u64 },

    /// A malformed gridded tree (multiple roots, cycles, bad vertex order).
    #[error("malformed gridded tree: {0}")]
    MalformedTree(String),

    /// An operation required an unloaded cluster.
    #[error("cluster is not unloaded: {0}")]
    NotUnloaded(String),

    /// An operation required nonnegative weights.
    #[error("cluster has negative weights")]
    NegativeWeights,

    /// Unloading or normalization exceeded its step budget.
    #[error("step budget exhausted in {0}; input is likely malformed")]
    BudgetExhausted(&'static str),

    /// A map (m, value) is not a legal epimorphism representation.
    #[error("bad epimorphism: {0}")]
    BadEpimorphism(String),

    /// Covering data violates the building-data identity.
    #[error("covering data violates the degree-n building identity: residual {0}")]
    BuildingDataViolation(String),

    /// A local frame is degenerate at its base point.
    #[error("degenerate frame: {0}")]
    DegenerateFrame(String),

    /// A declared singular point does not match the polynomial's local jet.
    #[error("local jet does not match declared singularity type: {0}")]
    JetMismatch(String),

    /// Twist degree below -2: h^2 of the twisted ideal sheaf no longer vanishes.
    #[error("degree {0} is below -2; h^2 obstruction")]
    DegreeTooNegative(i64),

    /// Curve intersections are non-transverse or not rational.
    #[error("intersection failure: {0}")]
    BadIntersection(String),

    /// Line arrangement input contains a repeated line.
    #[error("repeated line in arrangement")]
    RepeatedLines,

    /// A singular point lies on the line x0 = 0; a projective change is needed.
    #[error("singular point {0} lies on x0 = 0; apply a projective change of coordinates")]
    PointAtInfinity(String),

    /// Structured-text input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}
