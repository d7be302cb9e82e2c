//! Red-Blue Dominating Set to Defensive Alliance, with output vertex cover
//! number at most `3|T| + 4`.

use std::collections::BTreeSet;

use crate::alliance::{DAInstance, SolveError};
use crate::graph::{Graph, Role, RoleTag, VertexId};
use crate::vertex_set::VertexSet;

use super::{first_subset, Family, GadgetMap, ReductionError};

pub const RBDS_BRUTE_FORCE_MAX_SOURCES: usize = 20;

/// Bipartite graph between terminals `0..terminals` and sources
/// `0..sources`; pick at most `budget` sources dominating every terminal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RbdsInstance {
    pub terminals: usize,
    pub sources: usize,
    /// `(terminal, source)` pairs, kept sorted.
    pub edges: Vec<(usize, usize)>,
    pub budget: usize,
}

impl RbdsInstance {
    pub fn new(
        terminals: usize,
        sources: usize,
        edges: Vec<(usize, usize)>,
        budget: usize,
    ) -> Result<Self, ReductionError> {
        if budget == 0 {
            return Err(ReductionError::InvalidInstance("budget must be at least 1".into()));
        }
        let mut seen = BTreeSet::new();
        for &(t, s) in &edges {
            if t >= terminals || s >= sources {
                return Err(ReductionError::InvalidInstance(format!(
                    "edge ({t}, {s}) out of range"
                )));
            }
            if !seen.insert((t, s)) {
                return Err(ReductionError::InvalidInstance(format!(
                    "duplicate edge ({t}, {s})"
                )));
            }
        }
        Ok(Self {
            terminals,
            sources,
            edges: seen.into_iter().collect(),
            budget,
        })
    }

    pub fn dominates(&self, picks: &[usize]) -> bool {
        (0..self.terminals)
            .all(|t| self.edges.iter().any(|&(et, s)| et == t && picks.contains(&s)))
    }
}

/// First source set (by size, then lexicographically) of size at most the
/// budget that dominates every terminal.
pub fn solve_rbds_bruteforce(inst: &RbdsInstance) -> Result<Option<Vec<usize>>, SolveError> {
    if inst.sources > RBDS_BRUTE_FORCE_MAX_SOURCES {
        return Err(SolveError::TooLarge {
            n: inst.sources,
            limit: RBDS_BRUTE_FORCE_MAX_SOURCES,
        });
    }
    Ok(first_subset(inst.sources, inst.budget, |picks| inst.dominates(picks)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RbdsMap {
    pub vertex_count: usize,
    pub budget: usize,
    /// `4 * budget`; each pendant family has `4 * ell` vertices.
    pub ell: usize,
    pub t0: Vec<VertexId>,
    pub t1: Vec<VertexId>,
    pub t2: Vec<VertexId>,
    pub s0: Vec<VertexId>,
    pub s1: Vec<VertexId>,
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
    pub x_star: VertexId,
    /// `(copy of t in T1 or T2, V_t)`, T1 copies first.
    pub pendants: Vec<(VertexId, Vec<VertexId>)>,
}

impl RbdsMap {
    /// `T0 ∪ T1 ∪ T2 ∪ {a, b, c, x*}`.
    pub fn cover_set(&self) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.t0.iter().chain(&self.t1).chain(&self.t2).copied().collect();
        out.extend([self.a, self.b, self.c, self.x_star]);
        out.sort_unstable();
        out
    }
}

impl GadgetMap for RbdsMap {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn families(&self) -> Vec<Family> {
        let mut out = vec![
            Family::new("T0", self.t0.clone()),
            Family::new("T1", self.t1.clone()),
            Family::new("T2", self.t2.clone()),
            Family::new("S0", self.s0.clone()),
            Family::new("S1", self.s1.clone()),
            Family::new("a", vec![self.a]),
            Family::new("b", vec![self.b]),
            Family::new("c", vec![self.c]),
            Family::new("x*", vec![self.x_star]),
        ];
        for (host, pend) in &self.pendants {
            out.push(Family::new(format!("V{host}"), pend.clone()));
        }
        out
    }
}

pub fn rbds_to_da(inst: &RbdsInstance) -> Result<(DAInstance, RbdsMap), ReductionError> {
    let budget = inst.terminals + inst.sources + inst.budget + 1;
    let ell = 4 * budget;

    let mut g = Graph::new();
    let copies = |g: &mut Graph, count: usize, role: Role| -> Vec<VertexId> {
        (0..count).map(|i| g.add_vertex(RoleTag::with(role, i))).collect()
    };
    let t0 = copies(&mut g, inst.terminals, Role::CopyT0);
    let t1 = copies(&mut g, inst.terminals, Role::CopyT1);
    let t2 = copies(&mut g, inst.terminals, Role::CopyT2);
    let s0 = copies(&mut g, inst.sources, Role::CopyS0);
    let s1 = copies(&mut g, inst.sources, Role::CopyS1);
    let a = g.add_vertex(RoleTag::with(Role::Apex, 0));
    let b = g.add_vertex(RoleTag::with(Role::Apex, 1));
    let c = g.add_vertex(RoleTag::with(Role::Apex, 2));
    let x_star = g.add_vertex(RoleTag::new(Role::Other));

    let mut pendants = Vec::with_capacity(2 * inst.terminals);
    for &host in t1.iter().chain(&t2) {
        let pend = g.add_vertices(4 * ell, RoleTag::with(Role::Pendant, host.index()));
        g.join(&[host, a, b, c], &pend)?;
        pendants.push((host, pend));
    }
    g.join(&[a, b], &t0)?;
    g.join(&[a], &s1)?;
    for &(t, s) in &inst.edges {
        g.add_edge(t0[t], s0[s])?;
        g.add_edge(t0[t], s1[s])?;
        g.add_edge(t1[t], s1[s])?;
        g.add_edge(t2[t], s0[s])?;
    }
    g.join(&[x_star], &s1)?;
    if let Some((_, first)) = pendants.first() {
        g.join(&[x_star], &first[..inst.sources])?;
    }

    let map = RbdsMap {
        vertex_count: g.vertex_count(),
        budget,
        ell,
        t0,
        t1,
        t2,
        s0,
        s1,
        a,
        b,
        c,
        x_star,
        pendants,
    };
    Ok((DAInstance::new(g, budget)?, map))
}

/// `S1 ∪ {s0 : s ∈ X} ∪ T0 ∪ {x*}`.
pub fn rbds_forward_certificate(map: &RbdsMap, picks: &[usize]) -> VertexSet {
    let mut set = VertexSet::from_ids(map.vertex_count, map.s1.iter().chain(&map.t0).copied());
    set.insert(map.x_star);
    for &s in picks {
        set.insert(map.s0[s]);
    }
    set
}

/// `{s : s0 ∈ R}`.
pub fn rbds_extract_certificate(map: &RbdsMap, alliance: &VertexSet) -> Vec<usize> {
    (0..map.s0.len()).filter(|&s| alliance.contains(map.s0[s])).collect()
}
