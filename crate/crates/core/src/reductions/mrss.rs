//! Multidimensional Relaxed Subset Sum to Defensive Alliance.
//!
//! The output graph is bipartite and becomes a forest of stars after
//! deleting `3k + 16` vertices, where `k` is the vector dimension.

use crate::alliance::{DAInstance, SolveError};
use crate::graph::{Graph, Role, RoleTag, VertexId};
use crate::vertex_set::VertexSet;

use super::{first_subset, Family, GadgetMap, ReductionError};

/// Brute-force guard on the number of vectors.
pub const MRSS_BRUTE_FORCE_MAX_N: usize = 20;

/// Choose at most `max_picks` vectors whose coordinatewise sum dominates
/// `target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MrssInstance {
    pub dims: usize,
    pub vectors: Vec<Vec<u64>>,
    pub target: Vec<u64>,
    pub max_picks: usize,
}

impl MrssInstance {
    pub fn new(
        vectors: Vec<Vec<u64>>,
        target: Vec<u64>,
        max_picks: usize,
    ) -> Result<Self, ReductionError> {
        let dims = target.len();
        if dims == 0 {
            return Err(ReductionError::InvalidInstance("dimension must be at least 1".into()));
        }
        if vectors.is_empty() {
            return Err(ReductionError::InvalidInstance("need at least one vector".into()));
        }
        if let Some(i) = vectors.iter().position(|s| s.len() != dims) {
            return Err(ReductionError::InvalidInstance(format!(
                "vector {i} has {} coordinates, expected {dims}",
                vectors[i].len()
            )));
        }
        Ok(Self {
            dims,
            vectors,
            target,
            max_picks,
        })
    }

    pub fn max_entry(&self, s: usize) -> u64 {
        self.vectors[s].iter().copied().max().unwrap_or(0)
    }

    pub fn is_solution(&self, picks: &[usize]) -> bool {
        picks.len() <= self.max_picks
            && (0..self.dims).all(|i| picks.iter().map(|&s| self.vectors[s][i]).sum::<u64>() >= self.target[i])
    }
}

/// First subset (by size, then lexicographically) of at most `max_picks`
/// vectors dominating the target. Indices are 0-based.
pub fn solve_mrss_bruteforce(inst: &MrssInstance) -> Result<Option<Vec<usize>>, SolveError> {
    let n = inst.vectors.len();
    if n > MRSS_BRUTE_FORCE_MAX_N {
        return Err(SolveError::TooLarge {
            n,
            limit: MRSS_BRUTE_FORCE_MAX_N,
        });
    }
    Ok(first_subset(n, inst.max_picks, |picks| inst.is_solution(picks)))
}

/// Named vertex families of the MRSS construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MrssMap {
    pub vertex_count: usize,
    /// `N`, the sum over vectors of `2 max(s) + 2`.
    pub scale: usize,
    pub budget: usize,
    /// One vertex per coordinate.
    pub u: Vec<VertexId>,
    pub f: [VertexId; 3],
    /// Consecutive pairs of the cyclic order `u_1..u_k, f_1, f_2, f_3`.
    pub pairs: Vec<(VertexId, VertexId)>,
    pub hubs: Vec<Vec<VertexId>>,
    pub hub0: Vec<VertexId>,
    pub h_square: Vec<VertexId>,
    pub x: Vec<VertexId>,
    pub a: Vec<Vec<VertexId>>,
    pub y: Vec<VertexId>,
    pub b: Vec<Vec<VertexId>>,
    pub a_square: Vec<VertexId>,
    pub u_square: Vec<Vec<VertexId>>,
    pub f_square: Vec<Vec<VertexId>>,
    pub pair_square: Vec<Vec<VertexId>>,
    pub t: VertexId,
    pub t_prime: VertexId,
    /// `(square vertex, its pendant set)` in square creation order.
    pub pendants: Vec<(VertexId, Vec<VertexId>)>,
}

impl MrssMap {
    /// All square vertices, in creation order.
    pub fn squares(&self) -> Vec<VertexId> {
        self.pendants.iter().map(|(host, _)| *host).collect()
    }

    /// The vertices every small alliance must contain.
    pub fn triangle_set(&self) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.u.iter().chain(&self.f).copied().collect();
        for (hub, h0) in self.hubs.iter().zip(&self.hub0) {
            out.extend(hub);
            out.push(*h0);
        }
        out.sort_unstable();
        out
    }

    /// `U ∪ F ∪ H□ ∪ V_a□ ∪ {h0} ∪ {t, t'}`, whose removal leaves stars.
    pub fn deletion_set(&self) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self
            .u
            .iter()
            .chain(&self.f)
            .chain(&self.h_square)
            .chain(&self.a_square)
            .chain(&self.hub0)
            .copied()
            .collect();
        out.push(self.t);
        out.push(self.t_prime);
        out.sort_unstable();
        out
    }
}

impl GadgetMap for MrssMap {
    fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    fn families(&self) -> Vec<Family> {
        let mut out = vec![
            Family::new("U", self.u.clone()),
            Family::new("F", self.f.to_vec()),
        ];
        for (p, (hub, h0)) in self.hubs.iter().zip(&self.hub0).enumerate() {
            out.push(Family::new(format!("H{p}"), hub.clone()));
            out.push(Family::new(format!("h0_{p}"), vec![*h0]));
        }
        out.push(Family::new("Hsq", self.h_square.clone()));
        for s in 0..self.x.len() {
            out.push(Family::new(format!("x{s}"), vec![self.x[s]]));
            out.push(Family::new(format!("A{s}"), self.a[s].clone()));
            out.push(Family::new(format!("y{s}"), vec![self.y[s]]));
            out.push(Family::new(format!("B{s}"), self.b[s].clone()));
        }
        out.push(Family::new("Vasq", self.a_square.clone()));
        for (i, sq) in self.u_square.iter().enumerate() {
            out.push(Family::new(format!("Vusq{i}"), sq.clone()));
        }
        for (j, sq) in self.f_square.iter().enumerate() {
            out.push(Family::new(format!("Vfsq{j}"), sq.clone()));
        }
        for (p, sq) in self.pair_square.iter().enumerate() {
            out.push(Family::new(format!("Vpsq{p}"), sq.clone()));
        }
        out.push(Family::new("t", vec![self.t]));
        out.push(Family::new("t'", vec![self.t_prime]));
        for (host, pend) in &self.pendants {
            out.push(Family::new(format!("P{host}"), pend.clone()));
        }
        out
    }
}

pub fn mrss_to_da(inst: &MrssInstance) -> Result<(DAInstance, MrssMap), ReductionError> {
    if let Some(s) = (0..inst.vectors.len()).find(|&s| inst.max_entry(s) == 0) {
        return Err(ReductionError::InvalidInstance(format!(
            "vector {s} is the zero vector"
        )));
    }
    let k = inst.dims;
    let maxes: Vec<usize> = (0..inst.vectors.len()).map(|s| inst.max_entry(s) as usize).collect();
    let scale: usize = maxes.iter().map(|m| 2 * m + 2).sum();

    let mut g = Graph::new();
    let u: Vec<VertexId> = (0..k).map(|i| g.add_vertex(RoleTag::with(Role::Original, i))).collect();
    let f: [VertexId; 3] = std::array::from_fn(|j| g.add_vertex(RoleTag::with(Role::FVertex, j)));

    let order: Vec<VertexId> = u.iter().chain(&f).copied().collect();
    let pairs: Vec<(VertexId, VertexId)> = (0..order.len())
        .map(|i| (order[i], order[(i + 1) % order.len()]))
        .collect();
    let mut hubs = Vec::with_capacity(pairs.len());
    let mut hub0 = Vec::with_capacity(pairs.len());
    for (p, &(left, right)) in pairs.iter().enumerate() {
        let hub = g.add_vertices(scale, RoleTag::with(Role::HubH, p));
        g.join(&[left, right], &hub)?;
        let h0 = g.add_vertex(RoleTag::with(Role::HubH0, p));
        g.join(&[h0], &hub)?;
        hubs.push(hub);
        hub0.push(h0);
    }

    let square = RoleTag::new(Role::Square);
    let h_square = g.add_vertices(3, square);
    for hub in &hubs {
        g.join(hub, &h_square)?;
    }

    let mut x = Vec::new();
    let mut a = Vec::new();
    let mut y = Vec::new();
    let mut b = Vec::new();
    for (s, vector) in inst.vectors.iter().enumerate() {
        let leaves = maxes[s] + 1;
        let xs = g.add_vertex(RoleTag::with(Role::StarCenter, s));
        let a_s = g.add_vertices(leaves, RoleTag::with(Role::StarLeafA, s));
        let ys = g.add_vertex(RoleTag::with(Role::StarCenter, s));
        let b_s = g.add_vertices(leaves, RoleTag::with(Role::StarLeafB, s));
        g.join(&[xs], &a_s)?;
        g.join(&[ys], &b_s)?;
        for (i, &ui) in u.iter().enumerate() {
            g.join(&[ui], &a_s[..vector[i] as usize])?;
        }
        g.join(&f, &a_s)?;
        g.join(&f, &b_s)?;
        x.push(xs);
        a.push(a_s);
        y.push(ys);
        b.push(b_s);
    }

    let a_square = g.add_vertices(k + 5, square);
    for leaf in a.iter().flatten() {
        let n_u = u.iter().filter(|&&ui| g.has_edge(ui, *leaf)).count();
        g.join(&[*leaf], &a_square[..n_u + 5])?;
    }

    let mut u_square = Vec::with_capacity(k);
    for (i, &ui) in u.iter().enumerate() {
        let col: i64 = inst.vectors.iter().map(|s| s[i] as i64).sum();
        let size = col + 2 * scale as i64 - 2 * (col - inst.target[i] as i64);
        let sq = g.add_vertices(size as usize, square);
        g.join(&[ui], &sq)?;
        u_square.push(sq);
    }
    let mut f_square = Vec::with_capacity(3);
    for &fj in &f {
        let sq = g.add_vertices(2 * scale, square);
        g.join(&[fj], &sq)?;
        f_square.push(sq);
    }
    let mut pair_square = Vec::with_capacity(pairs.len());
    for &h0 in &hub0 {
        let sq = g.add_vertices(scale, square);
        g.join(&[h0], &sq)?;
        pair_square.push(sq);
    }

    let t = g.add_vertex(RoleTag::with(Role::TVertex, 0));
    let t_prime = g.add_vertex(RoleTag::with(Role::TVertex, 1));

    let budget = (k + 3) * scale + 2 * k + 6 + maxes.iter().map(|m| m + 1).sum::<usize>() + inst.max_picks;

    let primed: Vec<VertexId> = h_square.iter().chain(&a_square).copied().collect();
    let plain = u_square.iter().chain(&f_square).chain(&pair_square).flatten().copied();
    let mut pendants = Vec::new();
    for (host, hub) in primed.iter().map(|&h| (h, t_prime)).chain(plain.map(|h| (h, t))) {
        let pend = g.add_vertices(2 * budget + 2, RoleTag::with(Role::Pendant, host.index()));
        g.join(&[host, hub], &pend)?;
        pendants.push((host, pend));
    }

    let map = MrssMap {
        vertex_count: g.vertex_count(),
        scale,
        budget,
        u,
        f,
        pairs,
        hubs,
        hub0,
        h_square,
        x,
        a,
        y,
        b,
        a_square,
        u_square,
        f_square,
        pair_square,
        t,
        t_prime,
        pendants,
    };
    Ok((DAInstance::new(g, budget)?, map))
}

/// `U ∪ F ∪ ⋃(H_xy ∪ {h0_xy}) ∪ ⋃_{s∈S'}(A_s ∪ {x_s}) ∪ ⋃_{s∉S'} B_s`.
pub fn mrss_forward_certificate(map: &MrssMap, picks: &[usize]) -> VertexSet {
    let mut set = VertexSet::from_ids(map.vertex_count, map.triangle_set());
    for s in 0..map.x.len() {
        if picks.contains(&s) {
            set.insert(map.x[s]);
            for &v in &map.a[s] {
                set.insert(v);
            }
        } else {
            for &v in &map.b[s] {
                set.insert(v);
            }
        }
    }
    set
}

/// The vectors whose star centre `x_s` lies in the alliance.
pub fn mrss_extract_certificate(map: &MrssMap, alliance: &VertexSet) -> Vec<usize> {
    (0..map.x.len()).filter(|&s| alliance.contains(map.x[s])).collect()
}
