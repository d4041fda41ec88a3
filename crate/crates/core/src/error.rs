//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix must be square, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("entries must be integers")]
    NonInteger,
    #[error("vector is not primitive (gcd of entries is {gcd})")]
    NotPrimitive { gcd: String },
    #[error("lattice dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("vector is not a lattice point")]
    NotInLattice,
    #[error("basis is not positive: entry ({row},{col}) is negative")]
    NotPositive { row: usize, col: usize },
    #[error("basis vectors do not generate the lattice")]
    NotABasis,
    #[error("point is not a gap")]
    NotAGap,
    #[error("basis is orthogonal")]
    OrthogonalBasis,
    #[error("{count} of the basis vectors lie in the coordinate hyperplane x_{coord} = 0")]
    CoordinateHyperplane { count: usize, coord: usize },
    #[error("cone generators are singular")]
    SingularCone,
    #[error("basis vector {index} lies outside the cone")]
    NotInCone { index: usize },
    #[error("enumeration would visit about {estimate} points, above the cap {cap} (CONEGAPS_MAX_POINTS)")]
    PointCapExceeded { estimate: u128, cap: u64 },
    #[error(
        "requested point family spans fewer than {needed} dimensions within search radius {radius}"
    )]
    FamilyDoesNotSpan { needed: usize, radius: String },
    #[error("no lattice point found in the shifted box")]
    EmptyBox,
    #[error("polynomial must be monic with integer coefficients")]
    NotMonicInteger,
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("could not certify irreducibility at degree {0}; supply a certified polynomial")]
    IrreducibilityUndetermined(usize),
    #[error("polynomial is not totally real: {real} real roots out of degree {degree}")]
    NotTotallyReal { real: usize, degree: usize },
    #[error("trace form is not integral on the supplied basis")]
    GramNotIntegral,
    #[error("supplied module is not an ideal (not closed under multiplication)")]
    NotAnIdeal,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("comparison undecided at maximum precision ({bits} bits): {what}")]
    Undecided { bits: u32, what: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
