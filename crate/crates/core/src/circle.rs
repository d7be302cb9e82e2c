//! Circle graphs given by chord diagrams, the diagram operations behind the
//! Dominating Set to DA^F compiler, and the compiler itself.
//!
//! A diagram is the circular sequence of chord endpoints; position 0 is the
//! traversal start and the traversal direction is ascending position.

use std::collections::HashMap;

use thiserror::Error;

use crate::alliance::{DAFInstance, SolveError, BRUTE_FORCE_MAX_N};
use crate::graph::{Graph, GraphError, Role, RoleTag, VertexId};
use crate::reductions::{first_subset, Family, GadgetMap};
use crate::vertex_set::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CircleError {
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("unknown chord {0}")]
    UnknownChord(VertexId),
    #[error("chords {0} and {1} do not cross")]
    ChordsDoNotCross(VertexId, VertexId),
    #[error("chords {0} and {1} have no adjacent endpoints on the requested side")]
    ChordsNotAdjacent(VertexId, VertexId),
    #[error("emitted diagram does not realise the constructed graph")]
    DiagramMismatch,
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordDiagram {
    seq: Vec<VertexId>,
    names: Vec<String>,
}

impl ChordDiagram {
    /// Chords named by their ids; every id in `0..len/2` must occur twice.
    pub fn from_sequence(seq: Vec<VertexId>) -> Result<Self, CircleError> {
        if seq.len() % 2 != 0 {
            return Err(CircleError::MalformedDiagram(format!(
                "odd number of endpoints ({})",
                seq.len()
            )));
        }
        let n = seq.len() / 2;
        let mut seen = vec![0u8; n];
        for &v in &seq {
            let slot = seen.get_mut(v.index()).ok_or_else(|| {
                CircleError::MalformedDiagram(format!("chord id {v} out of range for {n} chords"))
            })?;
            *slot += 1;
        }
        if let Some(v) = seen.iter().position(|&c| c != 2) {
            return Err(CircleError::MalformedDiagram(format!(
                "chord {v} has {} endpoints",
                seen[v]
            )));
        }
        Ok(Self {
            seq,
            names: (0..n).map(|i| i.to_string()).collect(),
        })
    }

    /// Chords named by arbitrary tokens. If the tokens are exactly `0..n` in
    /// canonical decimal form they keep those ids; otherwise ids follow first
    /// appearance.
    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self, CircleError> {
        let mut first_seen: Vec<&str> = Vec::new();
        let mut index: HashMap<&str, usize> = HashMap::new();
        let mut counts: Vec<u8> = Vec::new();
        for t in tokens {
            let t = t.as_ref();
            let id = *index.entry(t).or_insert_with(|| {
                first_seen.push(t);
                counts.push(0);
                first_seen.len() - 1
            });
            counts[id] += 1;
        }
        if let Some(id) = counts.iter().position(|&c| c != 2) {
            return Err(CircleError::MalformedDiagram(format!(
                "chord `{}` has {} endpoints",
                first_seen[id], counts[id]
            )));
        }
        let n = first_seen.len();
        let numeric: Option<Vec<usize>> = first_seen
            .iter()
            .map(|t| t.parse::<usize>().ok().filter(|&v| v < n && v.to_string() == *t))
            .collect();
        let relabel: Vec<usize> = match numeric {
            Some(ids) => ids,
            None => (0..n).collect(),
        };
        let mut names = vec![String::new(); n];
        for (id, t) in first_seen.iter().enumerate() {
            names[relabel[id]] = (*t).to_string();
        }
        let seq = tokens
            .iter()
            .map(|t| VertexId::from(relabel[index[t.as_ref()]]))
            .collect();
        Ok(Self { seq, names })
    }

    pub fn chord_count(&self) -> usize {
        self.names.len()
    }

    pub fn sequence(&self) -> &[VertexId] {
        &self.seq
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    /// Endpoint tokens in circular order, as written.
    pub fn tokens(&self) -> impl Iterator<Item = &str> + '_ {
        self.seq.iter().map(|v| self.names[v.index()].as_str())
    }

    /// `(first, second)` endpoint position of every chord.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut pos = vec![(usize::MAX, usize::MAX); self.chord_count()];
        for (i, v) in self.seq.iter().enumerate() {
            let p = &mut pos[v.index()];
            if p.0 == usize::MAX {
                p.0 = i;
            } else {
                p.1 = i;
            }
        }
        pos
    }

    pub fn rotated(&self, by: usize) -> Self {
        Self {
            seq: traversal_sequence(self, by),
            names: self.names.clone(),
        }
    }

    pub fn reversed(&self) -> Self {
        Self {
            seq: self.seq.iter().rev().copied().collect(),
            names: self.names.clone(),
        }
    }

    fn check_chord(&self, v: VertexId) -> Result<(), CircleError> {
        if v.index() < self.chord_count() {
            Ok(())
        } else {
            Err(CircleError::UnknownChord(v))
        }
    }

    fn fresh_name(&self, base: &str) -> String {
        let mut name = format!("{base}'");
        while self.names.contains(&name) {
            name.push('\'');
        }
        name
    }

    fn push_chord_name(&mut self, base: &str) {
        // numeric diagrams stay numeric so that reparsing keeps the ids
        let id = self.chord_count();
        let numeric = self.names.iter().enumerate().all(|(i, s)| *s == i.to_string());
        let name = if numeric { id.to_string() } else { self.fresh_name(base) };
        self.names.push(name);
    }
}

/// Chords are adjacent iff exactly one endpoint of one lies strictly between
/// the endpoints of the other.
pub fn intersection_graph(d: &ChordDiagram) -> Graph {
    let n = d.chord_count();
    let mut g = Graph::with_vertices(n);
    let pos = d.positions();
    let mut count = vec![0u8; n];
    let mut touched = Vec::new();
    for (a, &(p, q)) in pos.iter().enumerate() {
        for &b in &d.seq[p + 1..q] {
            if count[b.index()] == 0 {
                touched.push(b);
            }
            count[b.index()] += 1;
        }
        for &b in &touched {
            if count[b.index()] == 1 && b.index() > a {
                g.add_edge(VertexId::from(a), b).expect("each crossing is found once");
            }
            count[b.index()] = 0;
        }
        touched.clear();
    }
    g
}

/// The endpoint sequence read from position `start` onwards, wrapping around.
pub fn traversal_sequence(d: &ChordDiagram, start: usize) -> Vec<VertexId> {
    if d.seq.is_empty() {
        return Vec::new();
    }
    let start = start % d.seq.len();
    d.seq[start..].iter().chain(&d.seq[..start]).copied().collect()
}

/// Replaces chord `v` by two crossing chords with the same crossings: `v`
/// keeps its id and the twin gets the next free id. At each endpoint the
/// pair reads `v, twin`.
pub fn split_chord(d: &ChordDiagram, v: VertexId) -> Result<ChordDiagram, CircleError> {
    d.check_chord(v)?;
    let twin = VertexId::from(d.chord_count());
    let mut out = d.clone();
    out.push_chord_name(&d.names[v.index()]);
    out.seq = d
        .seq
        .iter()
        .flat_map(|&c| if c == v { vec![v, twin] } else { vec![c] })
        .collect();
    Ok(out)
}

/// Which endpoint pair of two crossing chords, in sequence order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    First,
    Second,
}

/// Adds `count` pairwise parallel chords crossing exactly `v1` and `v2`,
/// nested around the chosen endpoint pair, which must be adjacent in the
/// sequence. New ids are assigned innermost first.
pub fn add_parallel_chords(
    d: &ChordDiagram,
    v1: VertexId,
    v2: VertexId,
    count: usize,
    side: Side,
) -> Result<ChordDiagram, CircleError> {
    d.check_chord(v1)?;
    d.check_chord(v2)?;
    let pos = d.positions();
    let (a, b) = (pos[v1.index()], pos[v2.index()]);
    let crossing = (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1);
    if v1 == v2 || !crossing {
        return Err(CircleError::ChordsDoNotCross(v1, v2));
    }
    let mut ends = [a.0, a.1, b.0, b.1];
    ends.sort_unstable();
    let (lo, hi) = match side {
        Side::First => (ends[0], ends[1]),
        Side::Second => (ends[2], ends[3]),
    };
    if hi != lo + 1 {
        return Err(CircleError::ChordsNotAdjacent(v1, v2));
    }
    let mut out = d.clone();
    let base = d.chord_count();
    for _ in 0..count {
        out.push_chord_name(&d.names[v1.index()]);
    }
    let new: Vec<VertexId> = (base..base + count).map(VertexId::from).collect();
    let mut seq = Vec::with_capacity(d.seq.len() + 2 * count);
    seq.extend_from_slice(&d.seq[..lo]);
    seq.extend(new.iter().rev());
    seq.extend_from_slice(&d.seq[lo..=hi]);
    seq.extend(new.iter());
    seq.extend_from_slice(&d.seq[hi + 1..]);
    out.seq = seq;
    Ok(out)
}

/// Dominating Set on the circle graph of `diagram`, budget `k ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsCircleInstance {
    pub diagram: ChordDiagram,
    pub budget: usize,
}

impl DsCircleInstance {
    pub fn new(diagram: ChordDiagram, budget: usize) -> Result<Self, CircleError> {
        if budget == 0 {
            return Err(CircleError::ZeroBudget);
        }
        Ok(Self { diagram, budget })
    }
}

pub fn is_dominating(g: &Graph, s: &VertexSet) -> bool {
    g.vertices()
        .all(|v| s.contains(v) || g.neighbors(v).iter().any(|&w| s.contains(w)))
}

/// First dominating set (by size, then lexicographically) of size at most
/// the budget.
pub fn solve_ds_bruteforce(inst: &DsCircleInstance) -> Result<Option<VertexSet>, SolveError> {
    let n = inst.diagram.chord_count();
    if n > BRUTE_FORCE_MAX_N {
        return Err(SolveError::TooLarge {
            n,
            limit: BRUTE_FORCE_MAX_N,
        });
    }
    let g = intersection_graph(&inst.diagram);
    let found = first_subset(n, inst.budget, |picks| {
        is_dominating(&g, &g.set_of(picks.iter().map(|&i| VertexId::from(i))))
    });
    Ok(found.map(|picks| g.set_of(picks.into_iter().map(VertexId::from))))
}

/// The `2n+1` spine vertices of an `X^v` or `Y^v` set together with their
/// two triangles each.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ladder {
    pub spine: Vec<VertexId>,
    pub c1: Vec<[VertexId; 3]>,
    pub c2: Vec<[VertexId; 3]>,
}

impl Ladder {
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.spine
            .iter()
            .copied()
            .chain(self.c1.iter().flatten().copied())
            .chain(self.c2.iter().flatten().copied())
    }

    fn top_c1(&self) -> [VertexId; 3] {
        *self.c1.last().expect("nonempty ladder")
    }

    fn top_c2(&self) -> [VertexId; 3] {
        *self.c2.last().expect("nonempty ladder")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsMap {
    pub vertex_count: usize,
    pub budget: usize,
    pub g1: Vec<VertexId>,
    pub g2: Vec<VertexId>,
    /// `X^v`, on the first endpoint of `v`.
    pub x: Vec<Ladder>,
    /// `Y^v`, on the second endpoint of `v`.
    pub y: Vec<Ladder>,
    /// Forbidden pendants per host, cliques first, then spines, then copies.
    pub pendants: Vec<(VertexId, Vec<VertexId>)>,
}

impl DsMap {
    /// Spines and triangles of every ladder.
    pub fn triangle_set(&self) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.x.iter().chain(&self.y).flat_map(Ladder::vertices).collect();
        out.sort_unstable();
        out
    }

    pub fn forbidden(&self) -> Vec<VertexId> {
        self.pendants.iter().flat_map(|(_, p)| p.iter().copied()).collect()
    }
}

impl GadgetMap for DsMap {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn families(&self) -> Vec<Family> {
        let mut out = vec![
            Family::new("G1", self.g1.clone()),
            Family::new("G2", self.g2.clone()),
        ];
        for (v, (x, y)) in self.x.iter().zip(&self.y).enumerate() {
            for (label, ladder) in [("X", x), ("Y", y)] {
                out.push(Family::new(format!("{label}{v}"), ladder.spine.clone()));
                out.push(Family::new(
                    format!("C1{label}{v}"),
                    ladder.c1.iter().flatten().copied().collect(),
                ));
                out.push(Family::new(
                    format!("C2{label}{v}"),
                    ladder.c2.iter().flatten().copied().collect(),
                ));
            }
        }
        for (host, pend) in &self.pendants {
            out.push(Family::new(format!("P{host}"), pend.clone()));
        }
        out
    }
}

/// `7n(4n+2) + n + k`.
pub fn ds_budget(n: usize, k: usize) -> usize {
    7 * n * (4 * n + 2) + n + k
}

/// Builds the DA^F instance, a chord diagram for it, and the family map.
/// The diagram is checked to realise exactly the constructed graph.
pub fn ds_to_daf(
    inst: &DsCircleInstance,
) -> Result<(DAFInstance, ChordDiagram, DsMap), CircleError> {
    let src = &inst.diagram;
    let n = src.chord_count();
    if n == 0 {
        return Err(CircleError::MalformedDiagram("diagram has no chords".into()));
    }
    let h = intersection_graph(src);
    let len = 2 * n + 1;

    let mut g = Graph::new();
    let g1: Vec<VertexId> = (0..n).map(|v| g.add_vertex(RoleTag::with(Role::Original, v))).collect();
    let g2: Vec<VertexId> = (0..n).map(|v| g.add_vertex(RoleTag::with(Role::Other, v))).collect();
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for v in 0..n {
        for (role, out) in [(Role::XSet, &mut x), (Role::YSet, &mut y)] {
            let mut ladder = Ladder {
                spine: Vec::with_capacity(len),
                c1: Vec::with_capacity(len),
                c2: Vec::with_capacity(len),
            };
            for _ in 0..len {
                ladder.spine.push(g.add_vertex(RoleTag::with(role, v)));
                let c1 = g.add_vertices(3, RoleTag::with(Role::CliqueC1, v));
                ladder.c1.push([c1[0], c1[1], c1[2]]);
                let c2 = g.add_vertices(3, RoleTag::with(Role::CliqueC2, v));
                ladder.c2.push([c2[0], c2[1], c2[2]]);
            }
            out.push(ladder);
        }
    }

    // twins
    for v in 0..n {
        g.add_edge(g1[v], g2[v])?;
    }
    for (a, b) in h.edges() {
        let (a, b) = (a.index(), b.index());
        g.join(&[g1[a], g2[a]], &[g1[b], g2[b]])?;
    }
    // ladders
    for v in 0..n {
        for ladder in [&x[v], &y[v]] {
            for i in 0..len {
                g.join(&[ladder.spine[i]], &[g1[v], g2[v]])?;
                g.join(&[ladder.spine[i]], &ladder.c1[i])?;
                g.join(&[ladder.spine[i]], &ladder.c2[i])?;
                g.make_clique(&ladder.c1[i])?;
                g.make_clique(&ladder.c2[i])?;
                if i + 1 < len {
                    g.join(&ladder.c1[i], &ladder.c1[i + 1])?;
                    g.join(&ladder.c2[i], &ladder.c2[i + 1])?;
                }
            }
        }
    }
    // traversal wiring between consecutive endpoints
    let seq = traversal_sequence(src, 0);
    let mut seen = vec![false; n];
    let is_first: Vec<bool> = seq
        .iter()
        .map(|v| !std::mem::replace(&mut seen[v.index()], true))
        .collect();
    let blocks: Vec<&Ladder> = seq
        .iter()
        .zip(&is_first)
        .map(|(v, &first)| if first { &x[v.index()] } else { &y[v.index()] })
        .collect();
    // first/first, second/second and first/second pairs are wired;
    // second/first pairs (including the wrap-around) are not
    let wired = |j: usize| -> bool {
        let next = (j + 1) % seq.len();
        is_first[j] || !is_first[next]
    };
    for j in 0..seq.len() {
        if wired(j) {
            let next = (j + 1) % seq.len();
            g.join(&blocks[j].top_c2(), &blocks[next].top_c1())?;
        }
    }
    // forbidden pendants
    let mut hosts: Vec<(VertexId, usize)> = Vec::new();
    let mut cliques: Vec<VertexId> = x
        .iter()
        .chain(&y)
        .flat_map(|l| l.c1.iter().chain(&l.c2).flatten().copied())
        .collect();
    cliques.sort_unstable();
    hosts.extend(cliques.iter().map(|&c| (c, g.degree(c))));
    let mut spines: Vec<VertexId> = x.iter().chain(&y).flat_map(|l| l.spine.iter().copied()).collect();
    spines.sort_unstable();
    hosts.extend(spines.iter().map(|&s| (s, 6)));
    hosts.extend(g1.iter().chain(&g2).map(|&v| (v, 4 * n + 3)));
    let mut pendants = Vec::with_capacity(hosts.len());
    for (host, d) in hosts {
        let pend = g.add_vertices(d, RoleTag::with(Role::Pendant, host.index()));
        g.join(&[host], &pend)?;
        pendants.push((host, pend));
    }

    // diagram
    let mut tokens: Vec<VertexId> = Vec::with_capacity(2 * g.vertex_count());
    tokens.extend(blocks[0].top_c1());
    for (j, (&v, ladder)) in seq.iter().zip(&blocks).enumerate() {
        let top = len - 1;
        tokens.push(ladder.spine[top]);
        for i in (0..top).rev() {
            tokens.extend(ladder.c1[i]);
            tokens.extend(ladder.c1[i + 1]);
            tokens.push(ladder.spine[i]);
        }
        tokens.extend(ladder.c1[0]);
        tokens.push(g1[v.index()]);
        tokens.push(g2[v.index()]);
        tokens.extend(ladder.c2[0]);
        tokens.push(ladder.spine[0]);
        for i in 1..=top {
            tokens.extend(ladder.c2[i]);
            tokens.extend(ladder.c2[i - 1]);
            tokens.push(ladder.spine[i]);
        }
        if j + 1 < seq.len() {
            if wired(j) {
                tokens.extend(blocks[j + 1].top_c1());
                tokens.extend(ladder.top_c2());
            } else {
                tokens.extend(ladder.top_c2());
                tokens.extend(blocks[j + 1].top_c1());
            }
        } else {
            tokens.extend(ladder.top_c2());
        }
    }
    let mut nest: HashMap<VertexId, &[VertexId]> =
        pendants.iter().map(|(h, p)| (*h, p.as_slice())).collect();
    let mut full = Vec::with_capacity(2 * g.vertex_count());
    for t in tokens {
        match nest.remove(&t) {
            Some(pend) => {
                full.extend(pend.iter().rev());
                full.push(t);
                full.extend(pend.iter());
            }
            None => full.push(t),
        }
    }
    let diagram = ChordDiagram::from_sequence(full)?;
    let realised = intersection_graph(&diagram);
    if realised.vertex_count() != g.vertex_count() || !realised.edges().eq(g.edges()) {
        return Err(CircleError::DiagramMismatch);
    }

    let budget = ds_budget(n, inst.budget);
    let map = DsMap {
        vertex_count: g.vertex_count(),
        budget,
        g1,
        g2,
        x,
        y,
        pendants,
    };
    let forbidden = g.set_of(map.forbidden());
    let daf = DAFInstance::new(g, budget, forbidden)?;
    Ok((daf, diagram, map))
}

/// `{v_1 : v ∈ dom} ∪ V(G_2) ∪ V_△`.
pub fn ds_forward_certificate(map: &DsMap, dom: &VertexSet) -> VertexSet {
    let mut d = VertexSet::from_ids(map.vertex_count, map.g2.iter().copied());
    for v in map.triangle_set() {
        d.insert(v);
    }
    for v in dom.iter() {
        d.insert(map.g1[v.index()]);
    }
    d
}

/// `{v : v_1 ∈ D}`, over the source chords.
pub fn ds_extract_certificate(map: &DsMap, alliance: &VertexSet) -> VertexSet {
    VertexSet::from_ids(
        map.g1.len(),
        (0..map.g1.len())
            .filter(|&v| alliance.contains(map.g1[v]))
            .map(VertexId::from),
    )
}
