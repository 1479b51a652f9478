use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("charge ({re}, {im}) is not in the semi-closed upper half-plane")]
    OutsideUpperHalfPlane { re: String, im: String },

    #[error("slope defect function is undefined at x = {0}")]
    SlopeDefectDomain(f64),

    #[error("factor phases must be strictly decreasing (position {0})")]
    NonDecreasingPhases(usize),

    #[error("phase {phase} is not an integer shift of the charge phase {charge_phase}")]
    PhaseMismatch { phase: f64, charge_phase: f64 },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("total charge is not among the input points")]
    TotalNotInSet,

    #[error("quiver matrix is not square")]
    NotSquare,

    #[error("negative arrow count at ({0}, {1})")]
    NegativeEntry(usize, usize),

    #[error("loop at vertex {0}")]
    NonzeroDiagonal(usize),

    #[error("quiver has an oriented cycle through vertex {0}")]
    CycleDetected(usize),

    #[error("Calabi-Yau dimension N = {0} is unsupported; N = 2 needs a modified Ginzburg construction, N >= 3 required")]
    UnsupportedCyDimension(i64),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vertex {0} out of range")]
    InvalidVertex(usize),

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("matrix for arrow {arrow} has shape {got:?}, expected {expected:?}")]
    ShapeMismatch { arrow: usize, expected: (usize, usize), got: (usize, usize) },

    #[error("total dimension {dim} exceeds the enumeration cap {cap}")]
    CapExceeded { dim: usize, cap: usize },

    #[error("subspace tuple is not invariant under arrow {0}")]
    NotInvariant(usize),

    #[error("representations live over different fields or quivers")]
    FieldMismatch,

    #[error("morphism does not commute with arrow {0}")]
    NotAMorphism(usize),

    #[error("operation requires a nonzero object")]
    ZeroObject,

    #[error("no arrows from vertex {0} to vertex {1}")]
    NoArrows(usize, usize),

    #[error("maximal destabilizing subobject is not unique ({0} candidates)")]
    NonUniqueDestabilizer(usize),

    #[error("duplicate cohomological degree {0} in profile")]
    DuplicateDegree(i64),

    #[error("negative coefficient in graded class entry {0}")]
    NegativeCoefficient(usize),

    #[error("cannot parse twist word token `{0}`")]
    WordSyntax(String),

    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("sample {0} is not a positive finite value")]
    NonPositiveSample(usize),

    #[error("sample indices must strictly increase")]
    NonIncreasingIndex,

    #[error("quiver must be connected with at least one arrow")]
    TrivialOrDisconnectedQuiver,

    #[error("matrix of size {size} exceeds the exact characteristic polynomial cap {cap}")]
    MatrixTooLarge { size: usize, cap: usize },

    #[error("stability conditions need at least {0} charges")]
    TooFewCharges(usize),

    #[error("unknown check suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
