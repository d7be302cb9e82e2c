//! Vertex Cover on graphs of maximum degree 3 to Defensive Alliance, with a
//! linear blow-up in the number of vertices.

use crate::alliance::{DAInstance, SolveError, BRUTE_FORCE_MAX_N};
use crate::graph::{Graph, Role, RoleTag, VertexId};
use crate::vertex_set::VertexSet;

use super::{first_subset, Family, GadgetMap, ReductionError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vc3Instance {
    pub graph: Graph,
    pub budget: usize,
}

impl Vc3Instance {
    pub fn new(graph: Graph, budget: usize) -> Result<Self, ReductionError> {
        if let Some(v) = graph.vertices().find(|&v| graph.degree(v) > 3) {
            return Err(ReductionError::DegreeTooHigh {
                vertex: v,
                degree: graph.degree(v),
            });
        }
        Ok(Self { graph, budget })
    }

    pub fn is_cover(&self, cover: &VertexSet) -> bool {
        self.graph
            .edges()
            .all(|(u, v)| cover.contains(u) || cover.contains(v))
    }
}

/// First vertex cover (by size, then lexicographically) of size at most the
/// budget.
pub fn solve_vc_bruteforce(inst: &Vc3Instance) -> Result<Option<VertexSet>, SolveError> {
    let n = inst.graph.vertex_count();
    if n > BRUTE_FORCE_MAX_N {
        return Err(SolveError::TooLarge {
            n,
            limit: BRUTE_FORCE_MAX_N,
        });
    }
    let found = first_subset(n, inst.budget, |picks| {
        inst.is_cover(&VertexSet::from_ids(n, picks.iter().map(|&i| VertexId::from(i))))
    });
    Ok(found.map(|picks| VertexSet::from_ids(n, picks.into_iter().map(VertexId::from))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VcMap {
    pub vertex_count: usize,
    pub budget: usize,
    /// Source vertices; `x[v]` has id `v`.
    pub x: Vec<VertexId>,
    /// One vertex per source edge, in canonical edge order.
    pub y: Vec<VertexId>,
    pub edges: Vec<(VertexId, VertexId)>,
    /// `C_i`, a 4-cycle per edge index.
    pub cycles: Vec<[VertexId; 4]>,
    pub f: [VertexId; 8],
    pub pendants: Vec<Vec<VertexId>>,
    pub apex: VertexId,
}

impl VcMap {
    pub fn cycle_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.cycles.iter().flatten().copied()
    }
}

impl GadgetMap for VcMap {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn families(&self) -> Vec<Family> {
        let mut out = vec![
            Family::new("X", self.x.clone()),
            Family::new("Y", self.y.clone()),
        ];
        for (i, c) in self.cycles.iter().enumerate() {
            out.push(Family::new(format!("C{i}"), c.to_vec()));
        }
        out.push(Family::new("F", self.f.to_vec()));
        for (f, pend) in self.f.iter().zip(&self.pendants) {
            out.push(Family::new(format!("V{f}"), pend.clone()));
        }
        out.push(Family::new("a", vec![self.apex]));
        out
    }
}

/// Edge-index layout: `X`, `Y`, the cycles, `F`, the pendant families, then
/// the apex. With a single edge the only cycle attaches to `e_1` alone.
pub fn vc_to_da(inst: &Vc3Instance) -> Result<(DAInstance, VcMap), ReductionError> {
    let src = &inst.graph;
    let edges: Vec<(VertexId, VertexId)> = src.edges().collect();
    let m = edges.len();
    let budget = 5 * m + inst.budget;
    if budget == 0 {
        return Err(ReductionError::InvalidInstance(
            "edgeless graph with budget 0 yields budget 0".into(),
        ));
    }

    let mut g = Graph::new();
    let x: Vec<VertexId> = src
        .vertices()
        .map(|v| g.add_vertex(RoleTag::with(Role::Original, v.index())))
        .collect();
    let mut y = Vec::with_capacity(m);
    for (i, &(u, v)) in edges.iter().enumerate() {
        let e = g.add_vertex(RoleTag::with(Role::YSet, i));
        g.add_edge(x[u.index()], e)?;
        g.add_edge(x[v.index()], e)?;
        y.push(e);
    }
    let mut cycles = Vec::with_capacity(m);
    for i in 0..m {
        let c = g.add_vertices(4, RoleTag::with(Role::CycleC, i));
        let c = [c[0], c[1], c[2], c[3]];
        for j in 0..4 {
            g.add_edge(c[j], c[(j + 1) % 4])?;
        }
        let next = (i + 1) % m;
        if next == i {
            g.join(&c, &[y[i]])?;
        } else {
            g.join(&c, &[y[i], y[next]])?;
        }
        cycles.push(c);
    }
    let f_ids = g.add_vertices(8, RoleTag::new(Role::FVertex));
    let f: [VertexId; 8] = f_ids.clone().try_into().expect("eight vertices");
    for (j, &fj) in f.iter().enumerate() {
        g.set_tag(fj, RoleTag::with(Role::FVertex, j))?;
    }
    let all_cycle: Vec<VertexId> = cycles.iter().flatten().copied().collect();
    g.join(&f[..5], &all_cycle)?;
    g.join(&f, &y)?;
    let pendants: Vec<Vec<VertexId>> = f
        .iter()
        .map(|&fj| {
            let pend = g.add_vertices(4 * budget, RoleTag::with(Role::Pendant, fj.index()));
            g.join(&[fj], &pend).map(|_| pend)
        })
        .collect::<Result<_, _>>()?;
    let apex = g.add_vertex(RoleTag::with(Role::Apex, 0));
    g.join(&[apex], &x)?;
    for pend in &pendants {
        g.join(&[apex], pend)?;
    }

    let map = VcMap {
        vertex_count: g.vertex_count(),
        budget,
        x,
        y,
        edges,
        cycles,
        f,
        pendants,
        apex,
    };
    Ok((DAInstance::new(g, budget)?, map))
}

/// `D = S ∪ Y ∪ ⋃ V(C_i)`.
pub fn vc_forward_certificate(map: &VcMap, cover: &VertexSet) -> VertexSet {
    let mut d = VertexSet::from_ids(
        map.vertex_count,
        map.y.iter().copied().chain(map.cycle_vertices()),
    );
    for v in cover.iter() {
        d.insert(map.x[v.index()]);
    }
    d
}

/// `D ∩ X`, as a set over the source graph.
pub fn vc_extract_certificate(map: &VcMap, alliance: &VertexSet) -> VertexSet {
    VertexSet::from_ids(
        map.x.len(),
        map.x
            .iter()
            .enumerate()
            .filter(|(_, &xv)| alliance.contains(xv))
            .map(|(i, _)| VertexId::from(i)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alliance::is_defensive_alliance;
    use crate::graph::fixtures::*;
    use crate::solver::{solve_da_with, SolverConfig};

    fn ids(v: &[usize]) -> Vec<VertexId> {
        v.iter().copied().map(VertexId::from).collect()
    }

    fn set(n: usize, v: &[usize]) -> VertexSet {
        VertexSet::from_ids(n, ids(v))
    }

    fn expected_vertex_count(n: usize, m: usize, k: usize) -> usize {
        let kp = 5 * m + k;
        n + m + 4 * m + 8 * (1 + 4 * kp) + 1
    }

    #[test]
    fn brute_force_examples() {
        let k3 = Vc3Instance::new(complete(3), 2).unwrap();
        assert_eq!(solve_vc_bruteforce(&k3).unwrap(), Some(set(3, &[0, 1])));
        let p3 = Vc3Instance::new(path(3), 1).unwrap();
        assert_eq!(solve_vc_bruteforce(&p3).unwrap(), Some(set(3, &[1])));
        let empty = Vc3Instance::new(Graph::with_vertices(3), 0).unwrap();
        assert_eq!(solve_vc_bruteforce(&empty).unwrap(), Some(set(3, &[])));
        let k3_tight = Vc3Instance::new(complete(3), 1).unwrap();
        assert_eq!(solve_vc_bruteforce(&k3_tight).unwrap(), None);
    }

    #[test]
    fn degree_bound_is_enforced() {
        let err = Vc3Instance::new(star(4), 1).unwrap_err();
        assert!(matches!(err, ReductionError::DegreeTooHigh { degree: 4, .. }));
    }

    #[test]
    fn k3_parameters() {
        let (da, map) = vc_to_da(&Vc3Instance::new(complete(3), 2).unwrap()).unwrap();
        assert_eq!(da.budget, 17);
        assert_eq!(da.graph.vertex_count(), 571);
        assert_eq!(da.graph.vertex_count(), expected_vertex_count(3, 3, 2));
        assert!(map.pendants.iter().all(|p| p.len() == 68));
        // every cycle vertex: 2 cycle + 2 edge vertices + f_1..f_5
        for c in map.cycle_vertices() {
            assert_eq!(da.graph.degree(c), 9);
        }
        for &e in &map.y {
            assert_eq!(da.graph.degree(e), 2 + 8 + 8);
        }
    }

    #[test]
    fn k3_certificates() {
        let inst = Vc3Instance::new(complete(3), 2).unwrap();
        let (da, map) = vc_to_da(&inst).unwrap();
        let d = vc_forward_certificate(&map, &set(3, &[0, 1]));
        assert_eq!(d.len(), 17);
        assert!(is_defensive_alliance(&da.graph, &d));
        assert_eq!(vc_extract_certificate(&map, &d), set(3, &[0, 1]));

        let bad = vc_forward_certificate(&map, &set(3, &[0]));
        assert!(!is_defensive_alliance(&da.graph, &bad));
        assert!(vc_extract_certificate(&map, &da.graph.empty_set()).is_empty());
    }

    #[test]
    fn p3_certificate() {
        let inst = Vc3Instance::new(path(3), 1).unwrap();
        let (da, map) = vc_to_da(&inst).unwrap();
        assert_eq!(da.budget, 11);
        assert_eq!(da.graph.vertex_count(), expected_vertex_count(3, 2, 1));
        let d = vc_forward_certificate(&map, &set(3, &[1]));
        assert_eq!(d.len(), 11);
        assert!(is_defensive_alliance(&da.graph, &d));
    }

    /// With one edge the edge vertex sees only four cycle vertices, so the
    /// constructed set leaves it unprotected even for a valid cover.
    #[test]
    fn single_edge_forward_set_fails() {
        let inst = Vc3Instance::new(path(2), 1).unwrap();
        let (da, map) = vc_to_da(&inst).unwrap();
        assert_eq!(da.budget, 6);
        let d = vc_forward_certificate(&map, &set(2, &[0]));
        assert_eq!(d.len(), 6);
        assert!(!is_defensive_alliance(&da.graph, &d));
        assert_eq!(da.graph.degree(map.y[0]), 2 + 4 + 8);
        let r = solve_da_with(&da, &da.graph.empty_set(), SolverConfig { node_limit: Some(2_000_000) });
        assert_eq!(r, Ok(None));
    }

    #[test]
    fn edgeless_zero_budget_is_rejected() {
        let inst = Vc3Instance::new(Graph::with_vertices(2), 0).unwrap();
        assert!(matches!(vc_to_da(&inst), Err(ReductionError::InvalidInstance(_))));
    }

    #[test]
    fn solver_alliances_contain_edge_and_cycle_vertices() {
        for (g, k) in [(path(3), 1), (complete(3), 2), (cycle(4), 2)] {
            let inst = Vc3Instance::new(g, k).unwrap();
            let (da, map) = vc_to_da(&inst).unwrap();
            let config = SolverConfig { node_limit: Some(5_000_000) };
            let Ok(found) = solve_da_with(&da, &da.graph.empty_set(), config) else {
                continue;
            };
            let w = found.expect("yes-instance");
            for v in map.y.iter().copied().chain(map.cycle_vertices()) {
                assert!(w.set.contains(v));
            }
            assert!(inst.is_cover(&vc_extract_certificate(&map, &w.set)));
        }
    }
}
