use crate::complex::{Face, Vertex};
use thiserror::Error;

/// Every failure the library can report.
///
/// Variant names double as the stable error names printed by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty facet list")]
    EmptyInput,
    #[error("{}facet {facet:?} has {found} vertices, expected {expected}", line_prefix(.line))]
    MixedCardinality {
        facet: Vec<i64>,
        expected: usize,
        found: usize,
        line: Option<usize>,
    },
    #[error("vertex label {0} is not a positive integer")]
    NonPositiveLabel(i64),
    #[error("facet {0:?} repeats a vertex")]
    RepeatedVertex(Vec<i64>),
    #[error("face vector has wrong length: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("f-vector must start with f_(-1) = 1, found {0}")]
    BadEmptyFaceCount(i64),
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("{0:?} is not a face")]
    NotAFace(Face),
    #[error("{0:?} is not a facet")]
    NotAFacet(Face),
    #[error("vertex {0} is not in the complex")]
    UnknownVertex(Vertex),
    #[error("vertex {0} is already in use")]
    VertexInUse(Vertex),
    #[error("vertices {0} and {1} lie in different components")]
    Disconnected(Vertex, Vertex),
    #[error("facet cardinality {0} is outside the supported range")]
    InvalidDimension(usize),
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("identified vertices {u} and {w} are at distance {distance} (< 3)")]
    DistanceViolation {
        u: Vertex,
        w: Vertex,
        distance: usize,
    },
    #[error("identification is not injective on face {0:?}")]
    NonSimplicialQuotient(Face),
    #[error("complex is not a pseudomanifold: {0}")]
    NotPseudomanifold(String),
    #[error("{f0} vertices cannot realize the requested bundle with facets of size {n}")]
    InfeasibleVertexCount { n: usize, f0: usize },
    #[error("construction produced the wrong bundle type")]
    OrientationMismatch,
    #[error("the subdivision trace has {0} stacks, expected 2")]
    NotTwoStacks(usize),
    #[error("identified facets are not on the tops of distinct stacks")]
    PairingNotOnTops,
    #[error("invalid subdivision trace: {0}")]
    InvalidTrace(String),
    #[error("complex is already orientable")]
    AlreadyOrientable,
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("move A={a:?} B={b:?} is not flippable")]
    NotFlippable { a: [Vertex; 2], b: Vec<Vertex> },
    #[error("scheduled move {0} is not flippable when reached")]
    ScheduleInvalid(usize),
    #[error("schedule leaves {0} non-edges unfilled")]
    ScheduleIncomplete(usize),
    #[error("target edge count {target} outside [{min}, {max}]")]
    TargetOutOfRange { target: u64, min: u64, max: u64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// The variant name, as printed on standard error by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyInput => "EmptyInput",
            Error::MixedCardinality { .. } => "MixedCardinality",
            Error::NonPositiveLabel(_) => "NonPositiveLabel",
            Error::RepeatedVertex(_) => "RepeatedVertex",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::BadEmptyFaceCount(_) => "BadEmptyFaceCount",
            Error::Overflow(_) => "Overflow",
            Error::NotAFace(_) => "NotAFace",
            Error::NotAFacet(_) => "NotAFacet",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::VertexInUse(_) => "VertexInUse",
            Error::Disconnected(..) => "Disconnected",
            Error::InvalidDimension(_) => "InvalidDimension",
            Error::InvalidPairing(_) => "InvalidPairing",
            Error::DistanceViolation { .. } => "DistanceViolation",
            Error::NonSimplicialQuotient(_) => "NonSimplicialQuotient",
            Error::NotPseudomanifold(_) => "NotPseudomanifold",
            Error::InfeasibleVertexCount { .. } => "InfeasibleVertexCount",
            Error::OrientationMismatch => "OrientationMismatch",
            Error::NotTwoStacks(_) => "NotTwoStacks",
            Error::PairingNotOnTops => "PairingNotOnTops",
            Error::InvalidTrace(_) => "InvalidTrace",
            Error::AlreadyOrientable => "AlreadyOrientable",
            Error::InvalidMove(_) => "InvalidMove",
            Error::NotFlippable { .. } => "NotFlippable",
            Error::ScheduleInvalid(_) => "ScheduleInvalid",
            Error::ScheduleIncomplete(_) => "ScheduleIncomplete",
            Error::TargetOutOfRange { .. } => "TargetOutOfRange",
            Error::Parse { .. } => "ParseError",
            Error::Invariant(_) => "Invariant",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

fn line_prefix(line: &Option<usize>) -> String {
    match line {
        Some(l) => format!("line {l}: "),
        None => String::new(),
    }
}
