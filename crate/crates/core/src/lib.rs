//! Defensive alliances in graphs: the predicate, an exact solver, gadget
//! reductions from MRSS, Red-Blue Dominating Set, Vertex Cover and DA^F, the
//! circle-graph construction, text formats, and a seeded equivalence driver.

pub mod alliance;
pub mod circle;
pub mod format;
pub mod graph;
pub mod harness;
pub mod reductions;
pub mod solver;
pub mod vertex_set;

pub use alliance::{
    brute_force_da_within, brute_force_min_da, candidate_filter, is_daf_feasible,
    is_defensive_alliance, is_protected, DAFInstance, DAInstance, SolveError, Witness,
};
pub use graph::{Graph, GraphError, Role, RoleTag, VertexId};
pub use solver::{solve_da, solve_da_with, SolverConfig};
pub use vertex_set::VertexSet;
