//! Defensive Alliance with forbidden vertices to plain Defensive Alliance.
//!
//! Each forbidden vertex `x` receives a mirror `x'` and `2k` square vertices
//! adjacent to both. `x` then has too many outside neighbours to be defended
//! by a set of size at most `k`.

use crate::alliance::{DAFInstance, DAInstance};
use crate::graph::{Role, RoleTag, VertexId};
use crate::vertex_set::VertexSet;

use super::{Family, GadgetMap, ReductionError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DafMap {
    pub vertex_count: usize,
    pub original_count: usize,
    /// `(x, x', squares)` per forbidden vertex, ascending in `x`.
    pub mirrors: Vec<(VertexId, VertexId, Vec<VertexId>)>,
}

impl GadgetMap for DafMap {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn families(&self) -> Vec<Family> {
        let mut out = vec![Family::new(
            "V",
            (0..self.original_count).map(VertexId::from).collect(),
        )];
        for (x, mirror, squares) in &self.mirrors {
            out.push(Family::new(format!("{x}'"), vec![*mirror]));
            out.push(Family::new(format!("V{x}"), squares.clone()));
        }
        out
    }
}

pub fn daf_to_da(inst: &DAFInstance) -> Result<(DAInstance, DafMap), ReductionError> {
    let mut g = inst.graph.clone();
    let k = inst.budget;
    let mut mirrors = Vec::with_capacity(inst.forbidden.len());
    for x in inst.forbidden.iter() {
        let mirror = g.add_vertex(RoleTag::with(Role::Forbidden, x.index()));
        let squares = g.add_vertices(2 * k, RoleTag::with(Role::Square, x.index()));
        g.join(&[x, mirror], &squares)?;
        mirrors.push((x, mirror, squares));
    }
    let map = DafMap {
        vertex_count: g.vertex_count(),
        original_count: inst.graph.vertex_count(),
        mirrors,
    };
    Ok((DAInstance::new(g, k)?, map))
}

/// A feasible set of the source is an alliance of the target as is.
pub fn daf_forward_certificate(map: &DafMap, set: &VertexSet) -> VertexSet {
    set.grown(map.vertex_count)
}

/// Restriction to the original vertices.
pub fn daf_extract_certificate(map: &DafMap, alliance: &VertexSet) -> VertexSet {
    VertexSet::from_ids(
        map.original_count,
        alliance.iter().filter(|v| v.index() < map.original_count),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alliance::{brute_force_da_within, is_daf_feasible, is_defensive_alliance};
    use crate::graph::fixtures::*;
    use crate::graph::Graph;

    fn ids(v: &[usize]) -> Vec<VertexId> {
        v.iter().copied().map(VertexId::from).collect()
    }

    #[test]
    fn p3_middle_forbidden() {
        let g = path(3);
        let inst = DAFInstance::new(g.clone(), 1, g.set_of(ids(&[1]))).unwrap();
        let (da, map) = daf_to_da(&inst).unwrap();
        assert_eq!(da.graph.vertex_count(), 6);
        assert_eq!(da.budget, 1);
        assert_eq!(map.mirrors.len(), 1);

        let src = brute_force_da_within(&inst.graph, &inst.forbidden, 1).unwrap().unwrap();
        let tgt = brute_force_da_within(&da.graph, &da.graph.empty_set(), 1).unwrap().unwrap();
        assert_eq!(src.members(), ids(&[0]));
        assert_eq!(tgt.members(), ids(&[0]));

        let fwd = daf_forward_certificate(&map, &src.set);
        assert!(is_defensive_alliance(&da.graph, &fwd));
        let back = daf_extract_certificate(&map, &tgt.set);
        assert!(is_daf_feasible(&inst, &back));
    }

    #[test]
    fn nothing_forbidden_is_identity() {
        let g = cycle(5);
        let inst = DAFInstance::new(g.clone(), 2, g.empty_set()).unwrap();
        let (da, map) = daf_to_da(&inst).unwrap();
        assert_eq!(da.graph, g);
        assert_eq!(da.budget, 2);
        assert!(map.mirrors.is_empty());
    }

    #[test]
    fn k3_all_forbidden() {
        let g = complete(3);
        let inst = DAFInstance::new(g.clone(), 2, g.empty_set().complement()).unwrap();
        let (da, _) = daf_to_da(&inst).unwrap();
        assert_eq!(da.graph.vertex_count(), 3 + 3 * (1 + 4));
        assert_eq!(brute_force_da_within(&inst.graph, &inst.forbidden, 2).unwrap(), None);
        assert_eq!(brute_force_da_within(&da.graph, &da.graph.empty_set(), 2).unwrap(), None);
    }

    #[test]
    fn mirror_structure() {
        let g = Graph::with_vertices(2);
        let inst = DAFInstance::new(g.clone(), 3, g.set_of(ids(&[1]))).unwrap();
        let (da, map) = daf_to_da(&inst).unwrap();
        let (x, mirror, squares) = &map.mirrors[0];
        assert_eq!(*x, VertexId(1));
        assert_eq!(squares.len(), 6);
        assert_eq!(da.graph.degree(*x), 6);
        assert_eq!(da.graph.degree(*mirror), 6);
        assert_eq!(da.graph.tag(*mirror), RoleTag::with(Role::Forbidden, 1));
        assert!(squares.iter().all(|&s| da.graph.degree(s) == 2));
    }

    /// Both directions over every labelled graph on at most five vertices,
    /// every forbidden subset and budgets 1 and 2.
    #[test]
    fn iff_exhaustive_small() {
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for emask in 0u32..(1 << pairs.len()) {
                let g = Graph::from_edges(
                    n,
                    pairs.iter().enumerate().filter(|(i, _)| emask >> i & 1 == 1).map(|(_, e)| *e),
                )
                .unwrap();
                for fmask in 0u32..(1 << n) {
                    let forbidden = g.set_of(g.vertices().filter(|v| fmask >> v.index() & 1 == 1));
                    for k in 1..=2 {
                        let inst = DAFInstance::new(g.clone(), k, forbidden.clone()).unwrap();
                        let (da, map) = daf_to_da(&inst).unwrap();
                        let src = brute_force_da_within(&g, &forbidden, k).unwrap();
                        let tgt = brute_force_da_within(&da.graph, &da.graph.empty_set(), k).unwrap();
                        assert_eq!(src.is_some(), tgt.is_some());
                        if let Some(t) = tgt {
                            assert!(is_daf_feasible(&inst, &daf_extract_certificate(&map, &t.set)));
                        }
                    }
                }
            }
        }
    }
}
