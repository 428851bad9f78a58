use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial is not monic: {0}")]
    NotMonic(String),
    #[error("polynomial is not squarefree; gcd with derivative is {gcd}")]
    NotSquarefree { gcd: String },
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },
    #[error("polynomial must be primitive with positive degree: {0}")]
    NotPrimitive(String),
    #[error("seed polynomial {poly} is reducible (factor {witness})")]
    ReducibleSeed { poly: String, witness: String },
    #[error("seed polynomial {poly} has {real_roots} real roots, expected {degree}")]
    NotTotallyReal {
        poly: String,
        real_roots: usize,
        degree: usize,
    },
    #[error("shift {shift} too small: every root alpha of the seed needs shift + alpha > 2")]
    ShiftTooSmall { shift: String },
    #[error("composed polynomial {poly} is reducible (factor {witness}); try a different shift than {shift}")]
    ReducibleComposite {
        poly: String,
        witness: String,
        shift: String,
    },
    #[error("root certification failed: {0}")]
    RootCertificate(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("wedge square needs an even dimension, got {0}")]
    OddDimension(usize),
    #[error("fixed space of the wedge action has dimension {found}, expected {expected}")]
    SplitDimension { expected: usize, found: usize },
    #[error("kernel and image of (wedge - I) intersect nontrivially")]
    SplitNotDirect,
    #[error("subspace not invariant: {0}")]
    NotInvariant(String),
    #[error("element is not totally positive")]
    NotTotallyPositive,
    #[error("element is not a unit (norm {0})")]
    NotUnit(String),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("Heisenberg power certificate failed: {0}")]
    Heisenberg(String),
    #[error("block model violates a*b = 1 in factor {0}")]
    SubgroupViolation(usize),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
