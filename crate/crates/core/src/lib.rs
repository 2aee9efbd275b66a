//! Exact solvers for non-monotone target set selection with thresholds in
//! `{0, 1, deg}`.
//!
//! Vertex `u` is active at time `t` iff at least `tau(u)` of its neighbours
//! were active at time `t - 1`. A target set is an initial active set from
//! which the process eventually keeps every vertex active.
//!
//! * [`sim`] runs the process with exact cycle detection.
//! * [`kernel`] removes the closed neighbourhoods of components of adjacent
//!   `tau = deg` vertices, which every target set contains.
//! * [`characterize`] decides target sets of a kernel by hitting conditions.
//! * [`dp`] finds minimum target sets over a tree decomposition.
//! * [`brute`] is the exhaustive ground truth.
//! * [`hardness`] builds instances from restricted CNF formulas.

pub mod brute;
pub mod characterize;
pub mod dp;
pub mod error;
pub mod graph;
pub mod hardness;
pub mod instance;
pub mod kernel;
pub mod nice;
pub mod random;
pub mod sim;
pub mod td;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use instance::{
    format_vertex_set, parse_instance, parse_vertex_set, serialize_instance, Instance,
    ThresholdMap, VertexClass,
};
pub use sim::{is_target_set, ActiveSet};
