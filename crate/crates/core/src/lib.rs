//! Engine for the Robber Locating game with `k` simultaneous distance probes.
//!
//! A cop names `k` vertices per turn and learns the robber's distance to
//! each; the robber then moves to a neighbouring vertex (or stays). The cop
//! wins once the probe history pins the robber to a single vertex.
//!
//! * [`graph`], [`vertex_set`]: the arena.
//! * [`families`], [`subdivision`]: graph generators and `G^{1/m}`.
//! * [`solver`]: exact `k`-locatability over belief states, `rlp`, metric
//!   dimension and strategy extraction.
//! * [`strategies`]: constructive cop strategies, adversarial robbers, and
//!   the simulation and verification engine.

pub mod families;
pub mod graph;
pub mod solver;
pub mod strategies;
pub mod subdivision;
pub mod vertex_set;

pub use graph::{Distance, Graph, GraphError, Vertex};
pub use vertex_set::VertexSet;
