use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown {kind} id `{id}`")]
    UnknownId { kind: &'static str, id: String },

    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },

    #[error("non-manifold edge `{0}`: more than two triangle sides")]
    NonManifoldEdge(String),

    #[error("boundary edge `{0}` lies on two triangle sides")]
    BoundaryEdgeInTwoTriangles(String),

    #[error("interior edge `{0}` lies on a single triangle side")]
    OpenInteriorEdge(String),

    #[error("triangle `{triangle}`: {reason}")]
    BadTriangle { triangle: String, reason: String },

    #[error("star inconsistency at `{at}`: {reason}")]
    StarInconsistency { at: String, reason: String },

    #[error("isolated vertex `{0}`")]
    IsolatedVertex(String),

    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("triangulation failed validation: {0}")]
    Validation(String),

    #[error("spike vertex `{0}` requires the doubled surface")]
    SpikeNeedsDouble(String),

    #[error("surface has no boundary; the double is not defined")]
    NoBoundaryToDouble,

    #[error("no special triangulation: {0}")]
    NoSpecialTriangulation(String),

    #[error("puncture `{vertex}` has valence {valence}; every puncture must be 1-valent")]
    HypothesisViolation { vertex: String, valence: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate normalization: u_1 equals u_(n+1)")]
    DegenerateNormalization,

    #[error("inconsistent boundary length: star shears sum to {sum}, got {given}")]
    InconsistentBoundaryLength { sum: f64, given: f64 },

    #[error("dimension mismatch for {what}: expected {expected}, got {got}")]
    Dimension { what: &'static str, expected: usize, got: usize },

    #[error("non-finite value for {0}")]
    NonFinite(String),

    #[error("curve is not taut: {0}")]
    NotTaut(String),

    #[error("ambiguous crossing sequence: {0}")]
    AmbiguousCrossing(String),

    #[error("lamination flavor violation: {0}")]
    Flavor(String),

    #[error("orientation map violation: {0}")]
    Orientation(String),

    #[error("unknown example surface `{0}`")]
    UnknownExample(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("parse error: {0}")]
    Parse(String),
}
