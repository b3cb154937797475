use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("repeated vertex {vertex} in simplex")]
    RepeatedVertex { vertex: u32 },

    #[error("degree {degree} out of range 1..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),

    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),

    #[error("not closed: {0}")]
    NotClosed(String),

    #[error("not orientable")]
    NotOrientable,

    #[error("not pure of dimension {0}")]
    NotPure(usize),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("group is infinite")]
    InfiniteGroup,

    #[error("2-torsion present in {0}")]
    TwoTorsion(String),

    #[error("not divisible by 2: {0}")]
    NotDivisible(String),

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("not a cocycle: {0}")]
    NotCocycle(String),

    #[error("pairing degenerate: Poincare duality fails in degree {0}")]
    DegeneratePairing(usize),

    #[error("structure set is empty: {0}")]
    EmptyTorsor(String),

    #[error("invalid conjugation twist: {0}")]
    InvalidTwist(String),

    #[error("c1 not in image of j*: {0}")]
    NotInImage(String),

    #[error("transport hypotheses fail: {0}")]
    Hypotheses(String),

    #[error("incompatible lifts: {0}")]
    IncompatibleLifts(String),

    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
