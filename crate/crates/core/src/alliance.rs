//! The defensive-alliance predicate, its forbidden-vertex variant, and the
//! exhaustive oracle used to cross-check the exact solver.

use std::cmp::Ordering;

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{Graph, VertexId};
use crate::vertex_set::VertexSet;

/// Largest graph the exhaustive minimum search accepts.
pub const BRUTE_FORCE_MAX_N: usize = 20;

/// Largest number of candidate subsets a budget-bounded exhaustive search
/// will enumerate.
pub const BRUTE_FORCE_MAX_SUBSETS: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("instance too large for exhaustive search: n = {n}, limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("forbidden set has universe {got}, graph has {expected} vertices")]
    UniverseMismatch { got: usize, expected: usize },
}

/// `(G, k)`: is there a defensive alliance of size at most `k`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DAInstance {
    pub graph: Graph,
    pub budget: usize,
}

impl DAInstance {
    pub fn new(graph: Graph, budget: usize) -> Result<Self, SolveError> {
        if budget == 0 {
            return Err(SolveError::ZeroBudget);
        }
        Ok(Self { graph, budget })
    }
}

/// `(G, r, F)`: is there a defensive alliance of size at most `r` avoiding
/// every vertex of `F`?
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DAFInstance {
    pub graph: Graph,
    pub budget: usize,
    pub forbidden: VertexSet,
}

impl DAFInstance {
    pub fn new(graph: Graph, budget: usize, forbidden: VertexSet) -> Result<Self, SolveError> {
        if budget == 0 {
            return Err(SolveError::ZeroBudget);
        }
        if forbidden.universe() != graph.vertex_count() {
            return Err(SolveError::UniverseMismatch {
                got: forbidden.universe(),
                expected: graph.vertex_count(),
            });
        }
        Ok(Self {
            graph,
            budget,
            forbidden,
        })
    }
}

/// A nonempty solution set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub set: VertexSet,
}

impl Witness {
    pub fn new(set: VertexSet) -> Self {
        debug_assert!(!set.is_empty());
        Self { set }
    }

    pub fn size(&self) -> usize {
        self.set.len()
    }

    pub fn members(&self) -> Vec<VertexId> {
        self.set.to_vec()
    }
}

/// Orders witnesses by size, then by their ascending id sequence.
pub fn witness_order(a: &[VertexId], b: &[VertexId]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Whether `v` has at least as many closed-neighbourhood defenders in `s` as
/// attackers outside it.
#[inline]
pub fn is_protected(g: &Graph, v: VertexId, s: &VertexSet) -> bool {
    let inside = g.deg_in_unchecked(v, s);
    inside + 1 >= g.degree(v) - inside
}

pub fn is_defensive_alliance(g: &Graph, s: &VertexSet) -> bool {
    assert_eq!(s.universe(), g.vertex_count());
    !s.is_empty() && s.iter().all(|v| is_protected(g, v, s))
}

pub fn is_daf_feasible(inst: &DAFInstance, s: &VertexSet) -> bool {
    s.len() <= inst.budget
        && s.is_disjoint(&inst.forbidden)
        && is_defensive_alliance(&inst.graph, s)
}

/// Vertices of degree at most `2k`. An alliance of size at most `k` lies
/// inside this set: a member needs `d_S(v) >= floor(deg(v) / 2)` while
/// `d_S(v) <= k - 1`.
pub fn candidate_filter(g: &Graph, k: usize) -> VertexSet {
    g.set_of(g.vertices().filter(|&v| g.degree(v) <= 2 * k))
}

/// Minimum defensive alliance avoiding `forbidden`, by enumerating subsets in
/// order of size and then lexicographically.
pub fn brute_force_min_da(g: &Graph, forbidden: &VertexSet) -> Result<Option<Witness>, SolveError> {
    let n = g.vertex_count();
    if n > BRUTE_FORCE_MAX_N {
        return Err(SolveError::TooLarge {
            n,
            limit: BRUTE_FORCE_MAX_N,
        });
    }
    Ok(enumerate_up_to(g, forbidden, n))
}

/// Like [`brute_force_min_da`] but only looks at subsets of size at most
/// `budget`; the guard is on the number of subsets rather than on `n`.
pub fn brute_force_da_within(
    g: &Graph,
    forbidden: &VertexSet,
    budget: usize,
) -> Result<Option<Witness>, SolveError> {
    let n = g.vertex_count();
    if subset_count(n, budget) > BRUTE_FORCE_MAX_SUBSETS {
        return Err(SolveError::TooLarge {
            n,
            limit: BRUTE_FORCE_MAX_N,
        });
    }
    Ok(enumerate_up_to(g, forbidden, budget.min(n)))
}

/// `sum_{i=1..=k} C(n, i)`, saturating.
pub fn subset_count(n: usize, k: usize) -> u64 {
    let mut total: u64 = 0;
    let mut binom: u64 = 1;
    for i in 1..=k.min(n) {
        binom = binom.saturating_mul((n - i + 1) as u64) / i as u64;
        total = total.saturating_add(binom);
    }
    total
}

fn enumerate_up_to(g: &Graph, forbidden: &VertexSet, max_size: usize) -> Option<Witness> {
    assert_eq!(forbidden.universe(), g.vertex_count());
    let allowed: Vec<VertexId> = g.vertices().filter(|&v| !forbidden.contains(v)).collect();
    let mut set = g.empty_set();
    for size in 1..=max_size.min(allowed.len()) {
        for combo in allowed.iter().copied().combinations(size) {
            for &v in &combo {
                set.insert(v);
            }
            let ok = combo.iter().all(|&v| is_protected(g, v, &set));
            if ok {
                return Some(Witness::new(set));
            }
            for &v in &combo {
                set.remove(v);
            }
        }
    }
    None
}
