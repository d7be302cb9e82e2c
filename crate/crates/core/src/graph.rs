//! Simple undirected graphs with role-tagged vertices.
//!
//! Vertex ids are dense and assigned in construction order. Adjacency lists
//! are kept sorted, and inserting an edge that already exists is an error so
//! that gadget builders stay edge-exact.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::vertex_set::VertexSet;

#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VertexId {
    #[inline]
    fn from(i: usize) -> Self {
        VertexId(u32::try_from(i).expect("vertex index exceeds u32"))
    }
}

impl fmt::Debug for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The gadget family a vertex belongs to.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Role {
    #[default]
    Original,
    Square,
    Pendant,
    HubH,
    HubH0,
    StarCenter,
    StarLeafA,
    StarLeafB,
    CopyT0,
    CopyT1,
    CopyT2,
    CopyS0,
    CopyS1,
    Apex,
    CycleC,
    FVertex,
    CliqueC1,
    CliqueC2,
    XSet,
    YSet,
    Forbidden,
    TVertex,
    Other,
}

impl Role {
    pub const ALL: [Role; 23] = [
        Role::Original,
        Role::Square,
        Role::Pendant,
        Role::HubH,
        Role::HubH0,
        Role::StarCenter,
        Role::StarLeafA,
        Role::StarLeafB,
        Role::CopyT0,
        Role::CopyT1,
        Role::CopyT2,
        Role::CopyS0,
        Role::CopyS1,
        Role::Apex,
        Role::CycleC,
        Role::FVertex,
        Role::CliqueC1,
        Role::CliqueC2,
        Role::XSet,
        Role::YSet,
        Role::Forbidden,
        Role::TVertex,
        Role::Other,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Role::Original => "Original",
            Role::Square => "Square",
            Role::Pendant => "Pendant",
            Role::HubH => "HubH",
            Role::HubH0 => "HubH0",
            Role::StarCenter => "StarCenter",
            Role::StarLeafA => "StarLeafA",
            Role::StarLeafB => "StarLeafB",
            Role::CopyT0 => "CopyT0",
            Role::CopyT1 => "CopyT1",
            Role::CopyT2 => "CopyT2",
            Role::CopyS0 => "CopyS0",
            Role::CopyS1 => "CopyS1",
            Role::Apex => "Apex",
            Role::CycleC => "CycleC",
            Role::FVertex => "FVertex",
            Role::CliqueC1 => "CliqueC1",
            Role::CliqueC2 => "CliqueC2",
            Role::XSet => "XSet",
            Role::YSet => "YSet",
            Role::Forbidden => "Forbidden",
            Role::TVertex => "TVertex",
            Role::Other => "Other",
        }
    }
}

/// A role plus an optional index annotation (source vertex, dimension, pair
/// index, host vertex, ...).
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RoleTag {
    pub kind: Role,
    pub payload: Option<u32>,
}

impl RoleTag {
    pub const fn new(kind: Role) -> Self {
        Self {
            kind,
            payload: None,
        }
    }

    pub fn with(kind: Role, payload: usize) -> Self {
        Self {
            kind,
            payload: Some(u32::try_from(payload).expect("payload exceeds u32")),
        }
    }

    pub fn is_default(&self) -> bool {
        *self == RoleTag::default()
    }
}

impl fmt::Display for RoleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.payload {
            Some(p) => write!(f, "{}:{}", self.kind.name(), p),
            None => f.write_str(self.kind.name()),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown role tag `{0}`")]
pub struct UnknownRole(pub String);

impl FromStr for RoleTag {
    type Err = UnknownRole;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, payload) = match s.split_once(':') {
            Some((name, p)) => (name, Some(p)),
            None => (s, None),
        };
        let kind = Role::ALL
            .into_iter()
            .find(|r| r.name() == name)
            .ok_or_else(|| UnknownRole(s.to_string()))?;
        let payload = match payload {
            Some(p) => Some(p.parse().map_err(|_| UnknownRole(s.to_string()))?),
            None => None,
        };
        Ok(RoleTag { kind, payload })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(VertexId, VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<VertexId>>,
    tags: Vec<RoleTag>,
    edge_count: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A graph with `n` untagged (`Original`) vertices and no edges.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_vertex(RoleTag::default());
        }
        g
    }

    /// Builds a graph from an edge list over `n` vertices.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::with_vertices(n);
        for (u, v) in edges {
            g.add_edge(u.into(), v.into())?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, tag: RoleTag) -> VertexId {
        let id = VertexId::from(self.adjacency.len());
        self.adjacency.push(Vec::new());
        self.tags.push(tag);
        id
    }

    /// Adds `count` vertices with the same tag, returning their ids.
    pub fn add_vertices(&mut self, count: usize, tag: RoleTag) -> Vec<VertexId> {
        (0..count).map(|_| self.add_vertex(tag)).collect()
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let pos_u = match self.adjacency[u.index()].binary_search(&v) {
            Ok(_) => return Err(GraphError::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => pos,
        };
        self.adjacency[u.index()].insert(pos_u, v);
        let pos_v = self.adjacency[v.index()]
            .binary_search(&u)
            .expect_err("adjacency out of sync");
        self.adjacency[v.index()].insert(pos_v, u);
        self.edge_count += 1;
        Ok(())
    }

    /// Connects every vertex of `left` to every vertex of `right`.
    pub fn join(&mut self, left: &[VertexId], right: &[VertexId]) -> Result<(), GraphError> {
        for &u in left {
            for &v in right {
                self.add_edge(u, v)?;
            }
        }
        Ok(())
    }

    /// Makes `vertices` pairwise adjacent.
    pub fn make_clique(&mut self, vertices: &[VertexId]) -> Result<(), GraphError> {
        for (i, &u) in vertices.iter().enumerate() {
            for &v in &vertices[i + 1..] {
                self.add_edge(u, v)?;
            }
        }
        Ok(())
    }

    pub fn set_tag(&mut self, v: VertexId, tag: RoleTag) -> Result<(), GraphError> {
        self.check(v)?;
        self.tags[v.index()] = tag;
        Ok(())
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertex_count()).map(VertexId::from)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            let u = VertexId::from(u);
            nbrs.iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    #[inline]
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v.index()]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v.index()].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u.index() < self.vertex_count() && self.adjacency[u.index()].binary_search(&v).is_ok()
    }

    pub fn tag(&self, v: VertexId) -> RoleTag {
        self.tags[v.index()]
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v.index() < self.vertex_count()
    }

    pub fn empty_set(&self) -> VertexSet {
        VertexSet::empty(self.vertex_count())
    }

    pub fn set_of<I: IntoIterator<Item = VertexId>>(&self, ids: I) -> VertexSet {
        VertexSet::from_ids(self.vertex_count(), ids)
    }

    /// Number of neighbours of `v` inside `s`. Membership of `v` itself is
    /// irrelevant since there are no self-loops.
    pub fn deg_in(&self, v: VertexId, s: &VertexSet) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(self.deg_in_unchecked(v, s))
    }

    /// Number of neighbours of `v` outside `s`.
    pub fn deg_out(&self, v: VertexId, s: &VertexSet) -> Result<usize, GraphError> {
        Ok(self.degree(v) - self.deg_in(v, s)?)
    }

    #[inline]
    pub(crate) fn deg_in_unchecked(&self, v: VertexId, s: &VertexSet) -> usize {
        self.neighbors(v).iter().filter(|&&u| s.contains(u)).count()
    }

    /// A proper 2-colouring, if one exists. Each component is coloured from
    /// its lowest id, which goes to the first side.
    pub fn is_bipartite(&self) -> Option<(VertexSet, VertexSet)> {
        let n = self.vertex_count();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if colour[start].is_some() {
                continue;
            }
            colour[start] = Some(false);
            queue.push_back(VertexId::from(start));
            while let Some(u) = queue.pop_front() {
                let cu = colour[u.index()].unwrap();
                for &w in self.neighbors(u) {
                    match colour[w.index()] {
                        None => {
                            colour[w.index()] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        let mut first = self.empty_set();
        let mut second = self.empty_set();
        for (i, c) in colour.into_iter().enumerate() {
            if c == Some(false) {
                first.insert(i.into());
            } else {
                second.insert(i.into());
            }
        }
        Some((first, second))
    }

    /// Connected components of `G[s]`, ordered by their minimum id.
    pub fn components_of_induced(&self, s: &VertexSet) -> Vec<VertexSet> {
        let mut seen = self.empty_set();
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for root in s.iter() {
            if seen.contains(root) {
                continue;
            }
            let mut comp = self.empty_set();
            seen.insert(root);
            stack.push(root);
            while let Some(u) = stack.pop() {
                comp.insert(u);
                for &w in self.neighbors(u) {
                    if s.contains(w) && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// True iff every component of `G - deleted` is a star: an isolated
    /// vertex, a single edge, or `K_{1,m}` centred at its unique vertex of
    /// maximum degree.
    pub fn is_star_forest_after_deletion(&self, deleted: &VertexSet) -> bool {
        let rest = deleted.complement();
        self.components_of_induced(&rest).into_iter().all(|comp| {
            let size = comp.len();
            if size <= 2 {
                return true;
            }
            let mut twice_edges = 0;
            let mut max_deg = 0;
            for v in comp.iter() {
                let d = self.deg_in_unchecked(v, &comp);
                twice_edges += d;
                max_deg = max_deg.max(d);
            }
            twice_edges == 2 * (size - 1) && max_deg == size - 1
        })
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v))
        }
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    fn v(i: usize) -> VertexId {
        VertexId::from(i)
    }

    #[test]
    fn add_vertex_assigns_dense_ids() {
        let mut g = Graph::new();
        assert_eq!(g.add_vertex(RoleTag::new(Role::Original)), v(0));
        assert_eq!(g.add_vertex(RoleTag::new(Role::Square)), v(1));
        let mut g5 = Graph::with_vertices(5);
        assert_eq!(g5.add_vertex(RoleTag::default()), v(5));
        assert_eq!(g5.degree(v(5)), 0);
        assert_eq!(g.tag(v(1)).kind, Role::Square);
    }

    #[test]
    fn add_edge_errors() {
        let mut g = Graph::with_vertices(2);
        g.add_edge(v(0), v(1)).unwrap();
        assert_eq!(g.degree(v(0)), 1);
        assert_eq!(g.degree(v(1)), 1);
        assert_eq!(g.add_edge(v(0), v(0)), Err(GraphError::SelfLoop(v(0))));
        assert_eq!(
            g.add_edge(v(1), v(0)),
            Err(GraphError::DuplicateEdge(v(0), v(1)))
        );
        assert_eq!(
            g.add_edge(v(0), v(7)),
            Err(GraphError::UnknownVertex(v(7)))
        );
    }

    #[test]
    fn deg_in_examples() {
        let p = path(3);
        let ac = p.set_of([v(0), v(2)]);
        assert_eq!(p.deg_in(v(1), &ac).unwrap(), 2);
        assert_eq!(p.deg_in(v(1), &p.empty_set()).unwrap(), 0);

        let k4 = complete(4);
        let s = k4.set_of([v(1), v(2)]);
        assert_eq!(k4.deg_in(v(0), &s).unwrap(), 2);
        assert_eq!(k4.deg_out(v(0), &s).unwrap(), 1);
        assert!(k4.deg_in(v(9), &s).is_err());
    }

    #[test]
    fn bipartite_examples() {
        let (a, b) = cycle(4).is_bipartite().unwrap();
        assert_eq!(a.to_vec(), vec![v(0), v(2)]);
        assert_eq!(b.to_vec(), vec![v(1), v(3)]);
        assert!(cycle(3).is_bipartite().is_none());

        // two components: lowest id of each goes to the first side
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let (a, _) = g.is_bipartite().unwrap();
        assert_eq!(a.to_vec(), vec![v(0), v(2)]);
    }

    #[test]
    fn induced_components() {
        let p = path(3);
        let comps = p.components_of_induced(&p.set_of([v(0), v(2)]));
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].to_vec(), vec![v(0)]);
        assert_eq!(comps[1].to_vec(), vec![v(2)]);
        assert!(p.components_of_induced(&p.empty_set()).is_empty());

        let c6 = cycle(6);
        let comps = c6.components_of_induced(&c6.set_of([v(0), v(2), v(4)]));
        assert_eq!(comps.len(), 3);
        assert!(comps.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn star_forest_checks() {
        let k4 = complete(4);
        assert!(k4.is_star_forest_after_deletion(&k4.set_of([v(0), v(1), v(2)])));
        let c4 = cycle(4);
        assert!(!c4.is_star_forest_after_deletion(&c4.empty_set()));
        assert!(star(5).is_star_forest_after_deletion(&star(5).empty_set()));
        // P_4 is a tree but not a star
        assert!(!path(4).is_star_forest_after_deletion(&path(4).empty_set()));
        assert!(path(3).is_star_forest_after_deletion(&path(3).empty_set()));
    }

    #[test]
    fn role_tag_text_round_trip() {
        for role in Role::ALL {
            let plain = RoleTag::new(role);
            assert_eq!(plain.to_string().parse::<RoleTag>().unwrap(), plain);
            let with = RoleTag::with(role, 17);
            assert_eq!(with.to_string().parse::<RoleTag>().unwrap(), with);
        }
        assert!("Nope".parse::<RoleTag>().is_err());
        assert!("Square:x".parse::<RoleTag>().is_err());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let len = pairs.len();
            proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
                let edges = pairs.iter().zip(mask).filter(|(_, b)| *b).map(|(e, _)| *e);
                Graph::from_edges(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn deg_in_splits_degree(g in arb_graph(10), mask in any::<u16>()) {
            let s = g.set_of(g.vertices().filter(|v| mask >> v.index() & 1 == 1));
            let sc = s.complement();
            for v in g.vertices() {
                prop_assert_eq!(
                    g.deg_in(v, &s).unwrap() + g.deg_in(v, &sc).unwrap(),
                    g.degree(v)
                );
            }
        }

        #[test]
        fn adjacency_is_symmetric(g in arb_graph(10)) {
            for u in g.vertices() {
                for &w in g.neighbors(u) {
                    prop_assert!(g.has_edge(w, u));
                }
            }
            prop_assert_eq!(g.edges().count(), g.edge_count());
        }

        #[test]
        fn bipartition_is_proper(g in arb_graph(9)) {
            match g.is_bipartite() {
                Some((a, b)) => {
                    prop_assert!(a.is_disjoint(&b));
                    prop_assert_eq!(a.len() + b.len(), g.vertex_count());
                    for (u, w) in g.edges() {
                        prop_assert!(a.contains(u) != a.contains(w));
                    }
                }
                None => {
                    // an odd cycle exists: no 2-colouring of the vertex set works
                    let n = g.vertex_count();
                    for mask in 0u32..(1 << n) {
                        let proper = g.edges().all(|(u, w)| {
                            (mask >> u.index() & 1) != (mask >> w.index() & 1)
                        });
                        prop_assert!(!proper);
                    }
                }
            }
        }

        #[test]
        fn induced_components_partition(g in arb_graph(10), mask in any::<u16>()) {
            let s = g.set_of(g.vertices().filter(|v| mask >> v.index() & 1 == 1));
            let comps = g.components_of_induced(&s);
            let mut union = g.empty_set();
            for (i, c) in comps.iter().enumerate() {
                prop_assert!(union.is_disjoint(c));
                union = union.union(c);
                // connected inside G[S]
                prop_assert_eq!(g.components_of_induced(c).len(), 1);
                for other in &comps[i + 1..] {
                    for u in c.iter() {
                        for w in other.iter() {
                            prop_assert!(!g.has_edge(u, w));
                        }
                    }
                }
            }
            prop_assert_eq!(union, s);
            let mins: Vec<_> = comps.iter().map(|c| c.iter().next().unwrap()).collect();
            prop_assert!(mins.windows(2).all(|w| w[0] < w[1]));
        }
    }
}
