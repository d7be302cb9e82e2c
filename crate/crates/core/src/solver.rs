//! Exact minimum defensive alliance search.
//!
//! Minimum alliances are connected (each component of an alliance is an
//! alliance), so the search grows connected sets from a seed. At every node
//! it picks the member with the least slack and branches on one of that
//! member's free neighbours: include it, or block it for the rest of the
//! subtree. Budgets are tried in increasing order, so the first level that
//! yields a witness is the minimum; within that level the lexicographically
//! smallest witness is kept.

use thiserror::Error;

use crate::alliance::{candidate_filter, witness_order, DAInstance, Witness};
use crate::graph::{Graph, VertexId};
use crate::vertex_set::VertexSet;

#[derive(Clone, Copy, Debug, Default)]
pub struct SolverConfig {
    /// Abort once this many search nodes have been expanded.
    pub node_limit: Option<u64>,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("search aborted after {nodes} nodes")]
pub struct NodeLimitReached {
    pub nodes: u64,
}

/// Exact decision for "is there a defensive alliance of size at most
/// `inst.budget` that avoids `forbidden`?". The witness is a minimum one,
/// lexicographically first among minima.
pub fn solve_da(inst: &DAInstance, forbidden: &VertexSet) -> Option<Witness> {
    solve_da_with(inst, forbidden, SolverConfig::default()).expect("no node limit set")
}

pub fn solve_da_with(
    inst: &DAInstance,
    forbidden: &VertexSet,
    config: SolverConfig,
) -> Result<Option<Witness>, NodeLimitReached> {
    let g = &inst.graph;
    assert_eq!(forbidden.universe(), g.vertex_count());
    let mut nodes = 0u64;
    for level in 1..=inst.budget.min(g.vertex_count()) {
        let mut search = LevelSearch::new(g, forbidden, level, config.node_limit, nodes);
        let found = search.run()?;
        nodes = search.nodes;
        if let Some(members) = found {
            return Ok(Some(Witness::new(g.set_of(members))));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Blocked,
    Free,
    Member,
}

struct LevelSearch<'g> {
    g: &'g Graph,
    limit: usize,
    need: Vec<u32>,
    slot: Vec<Slot>,
    inside: Vec<u32>,
    free: Vec<u32>,
    members: Vec<VertexId>,
    best: Option<Vec<VertexId>>,
    nodes: u64,
    node_limit: Option<u64>,
}

impl<'g> LevelSearch<'g> {
    fn new(
        g: &'g Graph,
        forbidden: &VertexSet,
        limit: usize,
        node_limit: Option<u64>,
        nodes: u64,
    ) -> Self {
        let usable = candidate_filter(g, limit).difference(forbidden);
        let slot: Vec<Slot> = g
            .vertices()
            .map(|v| if usable.contains(v) { Slot::Free } else { Slot::Blocked })
            .collect();
        let free = g
            .vertices()
            .map(|v| {
                g.neighbors(v)
                    .iter()
                    .filter(|w| slot[w.index()] == Slot::Free)
                    .count() as u32
            })
            .collect();
        Self {
            g,
            limit,
            need: g.vertices().map(|v| (g.degree(v) / 2) as u32).collect(),
            slot,
            inside: vec![0; g.vertex_count()],
            free,
            members: Vec::with_capacity(limit),
            best: None,
            nodes,
            node_limit,
        }
    }

    fn run(&mut self) -> Result<Option<Vec<VertexId>>, NodeLimitReached> {
        for seed in self.g.vertices() {
            if self.slot[seed.index()] != Slot::Free {
                continue;
            }
            self.include(seed);
            self.branch()?;
            self.undo_include(seed);
            if self.best.is_some() {
                // later seeds only produce sets with a larger minimum id
                return Ok(self.best.take());
            }
            self.block(seed);
        }
        Ok(None)
    }

    fn branch(&mut self) -> Result<(), NodeLimitReached> {
        self.nodes += 1;
        if let Some(limit) = self.node_limit {
            if self.nodes > limit {
                return Err(NodeLimitReached { nodes: self.nodes });
            }
        }

        let mut worst_deficit = 0;
        let mut pick: Option<(u32, VertexId)> = None;
        for &u in &self.members {
            let i = u.index();
            let deficit = self.need[i].saturating_sub(self.inside[i]);
            if deficit == 0 {
                continue;
            }
            if self.free[i] < deficit {
                return Ok(());
            }
            worst_deficit = worst_deficit.max(deficit);
            let slack = self.free[i] - deficit;
            if pick.is_none_or(|(s, _)| slack < s) {
                pick = Some((slack, u));
            }
        }
        if self.members.len() + worst_deficit as usize > self.limit {
            return Ok(());
        }

        let Some((_, u)) = pick else {
            self.record();
            return Ok(());
        };
        let w = *self
            .g
            .neighbors(u)
            .iter()
            .find(|w| self.slot[w.index()] == Slot::Free)
            .expect("free neighbour exists when slack is non-negative");

        self.include(w);
        let r = self.branch();
        self.undo_include(w);
        r?;

        self.block(w);
        let r = self.branch();
        self.unblock(w);
        r
    }

    fn record(&mut self) {
        let mut found = self.members.clone();
        found.sort_unstable();
        let better = match &self.best {
            None => true,
            Some(best) => witness_order(&found, best).is_lt(),
        };
        if better {
            self.best = Some(found);
        }
    }

    fn include(&mut self, w: VertexId) {
        debug_assert!(self.slot[w.index()] == Slot::Free);
        self.slot[w.index()] = Slot::Member;
        self.members.push(w);
        for &x in self.g.neighbors(w) {
            self.inside[x.index()] += 1;
            self.free[x.index()] -= 1;
        }
    }

    fn undo_include(&mut self, w: VertexId) {
        self.slot[w.index()] = Slot::Free;
        let popped = self.members.pop();
        debug_assert_eq!(popped, Some(w));
        for &x in self.g.neighbors(w) {
            self.inside[x.index()] -= 1;
            self.free[x.index()] += 1;
        }
    }

    fn block(&mut self, w: VertexId) {
        self.slot[w.index()] = Slot::Blocked;
        for &x in self.g.neighbors(w) {
            self.free[x.index()] -= 1;
        }
    }

    fn unblock(&mut self, w: VertexId) {
        self.slot[w.index()] = Slot::Free;
        for &x in self.g.neighbors(w) {
            self.free[x.index()] += 1;
        }
    }
}
