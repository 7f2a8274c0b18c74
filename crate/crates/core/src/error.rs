use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("edge endpoint `{0}` is not a vertex")]
    UnknownEndpoint(String),
    #[error("vertex label `{0}` appears more than once")]
    DuplicateVertexLabel(String),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(String, String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("map is not total: vertex `{0}` has no image")]
    NotTotal(String),
    #[error("edge ({0}, {1}) is neither collapsed nor preserved")]
    EdgeViolation(String, String),
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("maps do not share domain and codomain")]
    DomainMismatch,
    #[error("`{section}` is not a preimage of `{vertex}`")]
    InvalidSection { vertex: String, section: String },
    #[error("operation needs a nonempty digraph")]
    EmptyDigraph,
    #[error("homotopy does not start at the restricted map: {0}")]
    InvalidRestriction(String),
    #[error("homotopy is malformed: {0}")]
    MalformedHomotopy(String),

    #[error("matrix dimensions do not match: {0}")]
    DimensionMismatch(String),
    #[error("image generators do not lie in the kernel lattice")]
    NotASubgroup,
    #[error("lift does not induce a well-defined homomorphism: {0}")]
    IllDefined(String),
    #[error("homomorphisms do not share a target")]
    TargetMismatch,

    #[error("{count} allowed paths in degree {degree} exceed the cap of {cap}")]
    PathExplosion { degree: usize, count: usize, cap: usize },
    #[error("pushforward is not a chain map: {0}")]
    ChainMapViolation(String),

    #[error("invalid document: {0}")]
    Document(String),
    #[error("invalid JSON document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("DOT parse error at line {line}: {message}")]
    Dot { line: usize, message: String },
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
