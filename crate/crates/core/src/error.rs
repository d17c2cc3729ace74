use thiserror::Error;

/// Every failure the library can report. `kind()` gives a stable machine-readable tag.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },
    #[error("kernel of A contains a nonzero nonnegative vector; programs are unbounded")]
    UnboundedFamily,
    #[error("bad index: {0}")]
    BadIndex(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("right-hand side lies outside cone(A)")]
    OutsideCone,
    #[error("subdivision is not a triangulation")]
    NotSimplicial,
    #[error("no nonnegative integer point in the fiber")]
    Infeasible,
    #[error("{0} is not a face of the triangulation")]
    NotAFace(String),
    #[error("cost order is not generic; tie on binomial {witness:?}")]
    NonMonomial { witness: Vec<i64> },
    #[error("pair face inconsistent with the triangulation: {0}")]
    FaceViolation(String),
    #[error("chain theorem violated at {0}")]
    ChainViolation(String),
    #[error("associated-set chain of length {length} exceeds bound {bound}")]
    LengthViolation { length: usize, bound: usize },
    #[error("point is not optimal: it reduces under the Groebner basis")]
    NotOptimal,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("some maximal minor vanishes")]
    Degenerate,
    #[error("no bound available for root enumeration")]
    BoundUnavailable,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("not Delta-normal: face {face} misses Hilbert basis element {witness:?}")]
    NotDeltaNormal { face: String, witness: Vec<String> },
    #[error("no cost vector induces the given triangulation")]
    NotRegular,
    #[error("integer overflow in machine-word arithmetic")]
    Overflow,
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::RankDeficient { .. } => "RankDeficient",
            Error::UnboundedFamily => "UnboundedFamily",
            Error::BadIndex(_) => "BadIndex",
            Error::Dimension(_) => "Dimension",
            Error::Parse(_) => "Parse",
            Error::OutsideCone => "OutsideCone",
            Error::NotSimplicial => "NotSimplicial",
            Error::Infeasible => "Infeasible",
            Error::NotAFace(_) => "NotAFace",
            Error::NonMonomial { .. } => "NonMonomial",
            Error::FaceViolation(_) => "FaceViolation",
            Error::ChainViolation(_) => "ChainViolation",
            Error::LengthViolation { .. } => "LengthViolation",
            Error::NotOptimal => "NotOptimal",
            Error::Unbounded => "Unbounded",
            Error::Degenerate => "Degenerate",
            Error::BoundUnavailable => "BoundUnavailable",
            Error::NotPointed => "NotPointed",
            Error::NotDeltaNormal { .. } => "NotDeltaNormal",
            Error::NotRegular => "NotRegular",
            Error::Overflow => "Overflow",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
