use thiserror::Error;

/// Graph construction and Hamilton-cycle validation. Vertex ids are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop edge at vertex {vertex}")]
    Loop { vertex: usize },
    #[error("hamilton order has length {found}, expected {expected}")]
    OrderLength { expected: usize, found: usize },
    #[error("hamilton order is not a permutation: vertex {vertex} repeated")]
    NotPermutation { vertex: usize },
    #[error("missing hamilton edge {{{u},{v}}}")]
    MissingHamiltonEdge { u: usize, v: usize },
    #[error("graph on {n} vertices is too small to carry a hamilton cycle")]
    TooSmall { n: usize },
}

/// Graph text format errors, each tied to a 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: vertex {vertex} out of range 1..={n}")]
    OutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: loop edge at vertex {vertex}")]
    Loop { line: usize, vertex: usize },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCount { declared: usize, found: usize },
}

/// Reasons an edge set or cycle listing fails to be a 2-factor.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("vertex {vertex} has degree {degree}, expected 2")]
    BadDegree { vertex: usize, degree: usize },
    #[error("edge {{{u},{v}}} is not in the graph")]
    EdgeNotInGraph { u: usize, v: usize },
    #[error("edge {{{u},{v}}} listed twice")]
    DuplicateEdge { u: usize, v: usize },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {vertex} uncovered")]
    Uncovered { vertex: usize },
    #[error("vertex {vertex} appears twice")]
    RepeatedVertex { vertex: usize },
    #[error("cycle of length {len} is too short")]
    ShortCycle { len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AuxError {
    #[error("{colour} edge {{e{},e{}}} is not present in the auxiliary graph", .a + 1, .b + 1)]
    MissingEdge { a: usize, b: usize, colour: crate::auxiliary::Colour },
    #[error("degree identity fails at e{}", .index + 1)]
    DegreeIdentity { index: usize },
}

/// Structural violations of alternating cycles and systems.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleError {
    #[error("alternating cycle has odd or too small length {len}")]
    BadLength { len: usize },
    #[error("vertex e{} out of range", .vertex + 1)]
    OutOfRange { vertex: usize },
    #[error("vertex e{} repeated", .vertex + 1)]
    Repeated { vertex: usize },
    #[error("{colour} edge {{e{},e{}}} missing from host", .a + 1, .b + 1)]
    MissingEdge { a: usize, b: usize, colour: crate::auxiliary::Colour },
    #[error("vertices e{} and e{} are neighbouring", .a + 1, .b + 1)]
    Neighbouring { a: usize, b: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SearchError {
    #[error("gamma {gamma} outside (0,1)")]
    GammaOutOfRange { gamma: f64 },
    #[error("invalid search parameter: {0}")]
    InvalidParameter(String),
    #[error("no unused witness for arc e{} -> e{}", .from + 1, .to + 1)]
    WitnessExhausted { from: usize, to: usize },
    #[error("search budget of {budget} node expansions exhausted")]
    BudgetExhausted { budget: u64 },
    #[error("no colour-alternating cycle of admissible length exists")]
    Absent,
    #[error("median split left a cluster of size {size} < {needed} at level {level}")]
    OrderingFailed { level: usize, size: usize, needed: usize },
    #[error("thinning emptied cluster {cluster}")]
    ClusterEmptied { cluster: usize },
    #[error("embedding is not consistently ordered")]
    NotOrdered,
    #[error("invalid blow-up embedding: {0}")]
    InvalidEmbedding(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error(transparent)]
    Cycle(#[from] CycleError),
    #[error("vertex e{} belongs to two cycles of the system", .vertex + 1)]
    Overlap { vertex: usize },
    #[error("system contains neighbouring vertices e{} and e{}", .a + 1, .b + 1)]
    NeighbouringVertices { a: usize, b: usize },
    #[error("cycle id {id} out of range ({count} cycles)")]
    InvalidCycle { id: usize, count: usize },
    #[error("pattern vertex {index} out of range ({count} vertices)")]
    InvalidVertex { index: usize, count: usize },
    #[error("pattern needs {needed} vertices in cluster {cluster} but only {available} are available")]
    CapacityExceeded { cluster: usize, needed: usize, available: usize },
    #[error("pattern origin {origin} does not name a blow-up cluster")]
    ForeignOrigin { origin: usize },
    #[error("embedding is not order-isomorphic to the pattern")]
    OrderMismatch,
    #[error("F(S) failed verification: {0}")]
    NotTwoFactor(#[from] FactorError),
    #[error("no embedding found within {budget} node expansions")]
    EmbeddingNotFound { budget: u64 },
    #[error("malformed system JSON: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle cap is {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("no hamilton cycle found within {budget} nodes (exhaustive: {exhaustive})")]
    NoHamiltonCycle { budget: u64, exhaustive: bool },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
    #[error("min degree {target} exceeds n-1 = {max}")]
    DegreeInfeasible { target: usize, max: usize },
    #[error("{needed} cluster positions do not fit non-neighbouring into n = {n}")]
    InfeasibleGeometry { needed: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PipelineError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("a 2-factor with {k} cycles needs at least {} vertices, the graph has {n}", 3 * .k)]
    TargetTooLarge { k: usize, n: usize },
    #[error("no alternating cycle found: {0}")]
    NoAlternatingCycle(SearchError),
    #[error("blow-up could not be prepared: {0}")]
    Blowup(SearchError),
    #[error("transform steering stopped at {reached} cycles: {reason}")]
    Steering { reached: usize, reason: String },
    #[error("fallback search found no system within its budget of {budget}")]
    FallbackExhausted { budget: u64 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
