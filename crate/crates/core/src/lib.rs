//! Finding 2-factors with a prescribed number of cycles in Hamiltonian
//! graphs.
//!
//! Given a graph `G` with a fixed Hamilton cycle `H`, the crate builds an
//! ordered 2-edge-coloured auxiliary graph on the edges of `H`. Every
//! vertex-disjoint union `S` of colour-alternating cycles in it without
//! neighbouring vertices yields a 2-factor `F(S)` of `G`. Starting from an
//! alternating cycle found inside a consistently ordered blow-up, the
//! going-up and going-down patterns change the number of cycles of `F(S)`
//! by exactly one per step until the target count is reached.
//!
//! Module map:
//!
//! * [`graph`]: graphs, Hamilton instances, 2-factors, the text format.
//! * [`auxiliary`]: the auxiliary graph and its edge correspondence.
//! * [`altcycle`]: alternating cycles, the witness digraph, blow-up search,
//!   ordering and thinning.
//! * [`transforms`]: `F(S)`, going-up / going-down patterns, embeddings.
//! * [`pipeline`]: the end-to-end solver with its run report.
//! * [`oracle`] and [`generate`]: brute-force ground truth and instances.

pub mod altcycle;
pub mod auxiliary;
pub mod dot;
pub mod error;
pub mod exec;
pub mod generate;
pub mod graph;
pub mod oracle;
pub mod pipeline;
pub mod transforms;

pub use auxiliary::{build_auxiliary, AuxGraph, Colour};
pub use error::*;
pub use exec::Execution;
pub use graph::{
    count_components, parse_graph, parse_graph_file, validate_hamiltonian, verify_two_factor, write_graph, EdgeIndex,
    Graph, GraphFile, HamiltonianInstance, TwoFactor,
};
pub use pipeline::{solve, PipelineConfig, RunReport};
