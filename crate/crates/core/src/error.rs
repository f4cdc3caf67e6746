use thiserror::Error;

/// Errors raised by the library. Every variant carries enough context to
/// reproduce the failing input (a witness) where one exists.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("negative dimension {0}")]
    NegativeDimension(i64),

    #[error("malformed morphism: {0}")]
    MalformedMorphism(String),

    #[error("inconsistent inverse system: {0}")]
    InconsistentSystem(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("not a subcomplex: simplex {0} is missing from the ambient complex")]
    NotSubcomplex(String),

    #[error("subcomplex is not full: {0} has all vertices in the subcomplex but is not in it")]
    NotFull(String),

    #[error("map is not simplicial: image of {0} does not span a simplex")]
    NotSimplicial(String),

    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("retraction undefined: point lies in |N| (no mass on subcomplex vertices)")]
    PointInComplement,

    #[error(
        "the roof map needs an even dimension, got k = {0}: for odd k the swap reverses \
             orientation, so p#(s_i x s_j) = -p#(s_j x s_i) and the pair sum depends on term order"
    )]
    OddDimension(usize),

    #[error("chains live on different complexes: {0}")]
    MixedComplexes(String),

    #[error("chain is not supported on the gable complex: {0}")]
    OutsideGable(String),

    #[error("region is not closed under faces: {0}")]
    RegionNotClosed(String),

    #[error("regions are not nested: region {0} is not contained in region {1}")]
    NotNested(usize, usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a cycle: {0}")]
    NotACycle(String),

    #[error("invalid cover: point `{0}` is not covered")]
    Uncovered(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("not a refinement: {0}")]
    NotRefinement(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// A stable machine-readable name for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::NegativeDimension(_) => "negative-dimension",
            Error::MalformedMorphism(_) => "malformed-morphism",
            Error::InconsistentSystem(_) => "inconsistent-system",
            Error::UnknownLabel(_) => "unknown-label",
            Error::InvalidComplex(_) => "invalid-complex",
            Error::NotSubcomplex(_) => "not-subcomplex",
            Error::NotFull(_) => "not-full",
            Error::NotSimplicial(_) => "not-simplicial",
            Error::InvalidPoint(_) => "invalid-point",
            Error::PointInComplement => "point-in-complement",
            Error::OddDimension(_) => "odd-dimension",
            Error::MixedComplexes(_) => "mixed-complexes",
            Error::OutsideGable(_) => "outside-gable",
            Error::RegionNotClosed(_) => "region-not-closed",
            Error::NotNested(..) => "not-nested",
            Error::Precondition(_) => "precondition",
            Error::NotACycle(_) => "not-a-cycle",
            Error::Uncovered(_) => "uncovered",
            Error::InvalidCover(_) => "invalid-cover",
            Error::NotRefinement(_) => "not-refinement",
            Error::Internal(_) => "internal",
            Error::Parse(_) => "parse",
        }
    }
}
