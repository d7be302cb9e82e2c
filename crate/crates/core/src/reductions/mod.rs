//! Instance compilers from four source problems into defensive-alliance
//! instances, each paired with the forward certificate map (source solution
//! to alliance) and the reverse extraction map (alliance to source solution).
//!
//! Every compiler is a pure function of its input. Wherever the construction
//! says "arbitrary", the lowest-index choice is taken.

use thiserror::Error;

use crate::alliance::SolveError;
use crate::graph::{GraphError, VertexId};

pub mod daf;
pub mod mrss;
pub mod rbds;
pub mod vc;

pub use daf::{daf_extract_certificate, daf_forward_certificate, daf_to_da, DafMap};
pub use mrss::{
    mrss_extract_certificate, mrss_forward_certificate, mrss_to_da, solve_mrss_bruteforce,
    MrssInstance, MrssMap,
};
pub use rbds::{
    rbds_extract_certificate, rbds_forward_certificate, rbds_to_da, solve_rbds_bruteforce,
    RbdsInstance, RbdsMap,
};
pub use vc::{
    solve_vc_bruteforce, vc_extract_certificate, vc_forward_certificate, vc_to_da, Vc3Instance,
    VcMap,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("vertex {vertex} has degree {degree}, maximum allowed is 3")]
    DegreeTooHigh { vertex: VertexId, degree: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// A named vertex family of a constructed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub name: String,
    pub members: Vec<VertexId>,
}

impl Family {
    pub fn new(name: impl Into<String>, members: Vec<VertexId>) -> Self {
        Self {
            name: name.into(),
            members,
        }
    }
}

/// Provenance of a constructed graph: which vertices form which named
/// family of the gadget construction.
pub trait GadgetMap {
    /// Number of vertices of the constructed graph.
    fn vertex_count(&self) -> usize;

    /// Named families, in construction order. Families may nest (for example
    /// a union family listed next to its parts).
    fn families(&self) -> Vec<Family>;
}

/// Lowest-index-first subsets of `0..n` of size at most `max_size`, in order
/// of size and then lexicographically; returns the first accepted one.
pub(crate) fn first_subset<F>(n: usize, max_size: usize, mut accept: F) -> Option<Vec<usize>>
where
    F: FnMut(&[usize]) -> bool,
{
    use itertools::Itertools;
    for size in 0..=max_size.min(n) {
        for combo in (0..n).combinations(size) {
            if accept(&combo) {
                return Some(combo);
            }
        }
    }
    None
}
