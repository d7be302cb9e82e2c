//! Seeded instance generators and the source-vs-target equivalence driver.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::alliance::{
    brute_force_da_within, is_daf_feasible, is_defensive_alliance, DAFInstance, DAInstance,
    SolveError,
};
use crate::circle::{
    ds_extract_certificate, ds_forward_certificate, ds_to_daf, solve_ds_bruteforce, ChordDiagram,
    CircleError, DsCircleInstance, DsMap,
};
use crate::format::{
    parse_diagram, parse_graph, parse_mrss, parse_rbds, write_diagram, write_gadget_map,
    write_instance, write_mrss, write_rbds, ParseError,
};
use crate::graph::{Graph, VertexId};
use crate::reductions::{
    daf_extract_certificate, daf_forward_certificate, daf_to_da, mrss_extract_certificate,
    mrss_forward_certificate, mrss_to_da, rbds_extract_certificate, rbds_forward_certificate,
    rbds_to_da, solve_mrss_bruteforce, solve_rbds_bruteforce, solve_vc_bruteforce,
    vc_extract_certificate, vc_forward_certificate, vc_to_da, DafMap, GadgetMap, MrssInstance,
    MrssMap, RbdsInstance, RbdsMap, ReductionError, Vc3Instance, VcMap,
};
use crate::vertex_set::VertexSet;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Circle(#[from] CircleError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Mrss,
    Rbds,
    Vc,
    DsCircle,
    Daf,
}

impl Kind {
    pub const ALL: [Kind; 5] = [Kind::Mrss, Kind::Rbds, Kind::Vc, Kind::DsCircle, Kind::Daf];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Mrss => "mrss",
            Kind::Rbds => "rbds",
            Kind::Vc => "vc",
            Kind::DsCircle => "ds-circle",
            Kind::Daf => "daf",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Kind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| HarnessError::BadParams(format!("unknown kind `{s}`")))
    }
}

/// A source instance of one of the five reductions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceInstance {
    Mrss(MrssInstance),
    Rbds(RbdsInstance),
    Vc(Vc3Instance),
    DsCircle(DsCircleInstance),
    Daf(DAFInstance),
}

impl SourceInstance {
    pub fn kind(&self) -> Kind {
        match self {
            SourceInstance::Mrss(_) => Kind::Mrss,
            SourceInstance::Rbds(_) => Kind::Rbds,
            SourceInstance::Vc(_) => Kind::Vc,
            SourceInstance::DsCircle(_) => Kind::DsCircle,
            SourceInstance::Daf(_) => Kind::Daf,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            SourceInstance::Mrss(i) => write_mrss(i),
            SourceInstance::Rbds(i) => write_rbds(i),
            SourceInstance::Vc(i) => write_instance(&i.graph, Some(i.budget), &[]),
            SourceInstance::DsCircle(i) => write_diagram(&i.diagram, Some(i.budget)),
            SourceInstance::Daf(i) => write_instance(&i.graph, Some(i.budget), &i.forbidden.to_vec()),
        }
    }

    /// Parses a source file. `budget` fills in a missing `k` line for the
    /// graph and diagram kinds.
    pub fn parse(kind: Kind, text: &str, budget: Option<usize>) -> Result<Self, HarnessError> {
        let need = |k: Option<usize>| {
            k.or(budget)
                .ok_or_else(|| HarnessError::BadParams("instance has no budget; pass one".into()))
        };
        Ok(match kind {
            Kind::Mrss => SourceInstance::Mrss(parse_mrss(text)?),
            Kind::Rbds => SourceInstance::Rbds(parse_rbds(text)?),
            Kind::Vc => {
                let f = parse_graph(text)?;
                SourceInstance::Vc(Vc3Instance::new(f.graph, need(f.budget)?)?)
            }
            Kind::DsCircle => {
                let (d, k) = parse_diagram(text)?;
                SourceInstance::DsCircle(DsCircleInstance::new(d, need(k)?)?)
            }
            Kind::Daf => {
                let f = parse_graph(text)?;
                let forbidden = f.forbidden_set();
                SourceInstance::Daf(DAFInstance::new(f.graph, need(f.budget)?, forbidden)?)
            }
        })
    }

    /// First 16 hex digits of the SHA-256 of the written instance.
    pub fn digest(&self) -> String {
        short_digest(self.to_text().as_bytes())
    }
}

pub fn short_digest(bytes: &[u8]) -> String {
    let full = hex::encode(Sha256::digest(bytes));
    full[..16].to_string()
}

/// A source solution, in the shape each source problem uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceSolution {
    Indices(Vec<usize>),
    Vertices(VertexSet),
}

impl SourceSolution {
    pub fn size(&self) -> usize {
        match self {
            SourceSolution::Indices(v) => v.len(),
            SourceSolution::Vertices(s) => s.len(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            SourceSolution::Indices(v) => v.iter().join(" "),
            SourceSolution::Vertices(s) => s.iter().join(" "),
        }
    }
}

/// Exhaustive source solver (each has its own size guard).
pub fn solve_source(src: &SourceInstance) -> Result<Option<SourceSolution>, HarnessError> {
    Ok(match src {
        SourceInstance::Mrss(i) => solve_mrss_bruteforce(i)?.map(SourceSolution::Indices),
        SourceInstance::Rbds(i) => solve_rbds_bruteforce(i)?.map(SourceSolution::Indices),
        SourceInstance::Vc(i) => solve_vc_bruteforce(i)?.map(SourceSolution::Vertices),
        SourceInstance::DsCircle(i) => solve_ds_bruteforce(i)?.map(SourceSolution::Vertices),
        SourceInstance::Daf(i) => {
            brute_force_da_within(&i.graph, &i.forbidden, i.budget)?.map(|w| SourceSolution::Vertices(w.set))
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReducedMap {
    Mrss(MrssMap),
    Rbds(RbdsMap),
    Vc(VcMap),
    DsCircle(DsMap),
    Daf(DafMap),
}

impl ReducedMap {
    pub fn gadget_map(&self) -> &dyn GadgetMap {
        match self {
            ReducedMap::Mrss(m) => m,
            ReducedMap::Rbds(m) => m,
            ReducedMap::Vc(m) => m,
            ReducedMap::DsCircle(m) => m,
            ReducedMap::Daf(m) => m,
        }
    }
}

/// The compiled target: a graph, a budget and (for DA^F targets) a
/// forbidden set, plus the family map and, for circle sources, a diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduced {
    pub target: DAFInstance,
    pub map: ReducedMap,
    pub diagram: Option<ChordDiagram>,
}

impl Reduced {
    fn plain(da: DAInstance, map: ReducedMap) -> Self {
        let forbidden = da.graph.empty_set();
        let target = DAFInstance::new(da.graph, da.budget, forbidden).expect("same universe");
        Self {
            target,
            map,
            diagram: None,
        }
    }

    pub fn graph_text(&self) -> String {
        write_instance(&self.target.graph, Some(self.target.budget), &self.target.forbidden.to_vec())
    }

    pub fn gadget_text(&self) -> String {
        write_gadget_map(self.map.gadget_map())
    }

    pub fn diagram_text(&self) -> Option<String> {
        self.diagram.as_ref().map(|d| write_diagram(d, None))
    }

    /// Size within budget, no forbidden vertex, and the alliance predicate.
    pub fn is_feasible(&self, set: &VertexSet) -> bool {
        is_daf_feasible(&self.target, set)
    }

    pub fn forward(&self, sol: &SourceSolution) -> VertexSet {
        match (&self.map, sol) {
            (ReducedMap::Mrss(m), SourceSolution::Indices(p)) => mrss_forward_certificate(m, p),
            (ReducedMap::Rbds(m), SourceSolution::Indices(p)) => rbds_forward_certificate(m, p),
            (ReducedMap::Vc(m), SourceSolution::Vertices(s)) => vc_forward_certificate(m, s),
            (ReducedMap::DsCircle(m), SourceSolution::Vertices(s)) => ds_forward_certificate(m, s),
            (ReducedMap::Daf(m), SourceSolution::Vertices(s)) => daf_forward_certificate(m, s),
            _ => panic!("solution shape does not match the reduction"),
        }
    }

    pub fn extract(&self, set: &VertexSet) -> SourceSolution {
        match &self.map {
            ReducedMap::Mrss(m) => SourceSolution::Indices(mrss_extract_certificate(m, set)),
            ReducedMap::Rbds(m) => SourceSolution::Indices(rbds_extract_certificate(m, set)),
            ReducedMap::Vc(m) => SourceSolution::Vertices(vc_extract_certificate(m, set)),
            ReducedMap::DsCircle(m) => SourceSolution::Vertices(ds_extract_certificate(m, set)),
            ReducedMap::Daf(m) => SourceSolution::Vertices(daf_extract_certificate(m, set)),
        }
    }
}

pub fn reduce(src: &SourceInstance) -> Result<Reduced, HarnessError> {
    Ok(match src {
        SourceInstance::Mrss(i) => {
            let (da, m) = mrss_to_da(i)?;
            Reduced::plain(da, ReducedMap::Mrss(m))
        }
        SourceInstance::Rbds(i) => {
            let (da, m) = rbds_to_da(i)?;
            Reduced::plain(da, ReducedMap::Rbds(m))
        }
        SourceInstance::Vc(i) => {
            let (da, m) = vc_to_da(i)?;
            Reduced::plain(da, ReducedMap::Vc(m))
        }
        SourceInstance::DsCircle(i) => {
            let (daf, d, m) = ds_to_daf(i)?;
            Reduced {
                target: daf,
                map: ReducedMap::DsCircle(m),
                diagram: Some(d),
            }
        }
        SourceInstance::Daf(i) => {
            let (da, m) = daf_to_da(i)?;
            Reduced::plain(da, ReducedMap::Daf(m))
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GenParams {
    pub max_n: usize,
    /// MRSS only: entries are drawn from `1..=max_entry`.
    pub max_entry: u64,
    /// MRSS only: dimension drawn from `1..=max_dims`.
    pub max_dims: usize,
    /// Edge probability (RBDS, DA^F) or pairing acceptance (VC).
    pub density: f64,
    /// Fixed budget instead of a drawn one.
    pub budget: Option<usize>,
}

impl GenParams {
    /// Sizes that keep the source oracles fast and the targets small enough
    /// to check quickly.
    pub fn defaults(kind: Kind) -> Self {
        let max_n = match kind {
            Kind::Mrss => 3,
            Kind::Rbds => 4,
            Kind::Vc => 8,
            Kind::DsCircle => 4,
            Kind::Daf => 6,
        };
        Self {
            max_n,
            max_entry: 2,
            max_dims: 2,
            density: 0.5,
            budget: None,
        }
    }

    fn validate(&self, kind: Kind) -> Result<(), HarnessError> {
        let bad = |m: String| Err(HarnessError::BadParams(m));
        if !(0.0..=1.0).contains(&self.density) {
            return bad(format!("density {} outside [0, 1]", self.density));
        }
        let min_n = if kind == Kind::Vc { 3 } else { 1 };
        if self.max_n < min_n {
            return bad(format!("{kind} needs max-n >= {min_n}"));
        }
        if self.max_n > 20 {
            return bad(format!("max-n {} exceeds the oracle limit 20", self.max_n));
        }
        if self.max_entry == 0 || self.max_dims == 0 {
            return bad("max-entry and max-dims must be at least 1".into());
        }
        if self.budget == Some(0) {
            return bad("budget must be at least 1".into());
        }
        Ok(())
    }
}

/// The RNG for case `index` of a run with `seed`: one ChaCha8 stream per case.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn generate(kind: Kind, params: &GenParams, rng: &mut ChaCha8Rng) -> Result<SourceInstance, HarnessError> {
    params.validate(kind)?;
    Ok(match kind {
        Kind::Mrss => SourceInstance::Mrss(gen_mrss(params, rng)),
        Kind::Rbds => SourceInstance::Rbds(gen_rbds(params, rng)),
        Kind::Vc => SourceInstance::Vc(gen_vc(params, rng)),
        Kind::DsCircle => SourceInstance::DsCircle(gen_ds(params, rng)),
        Kind::Daf => SourceInstance::Daf(gen_daf(params, rng)),
    })
}

fn gen_mrss(p: &GenParams, rng: &mut ChaCha8Rng) -> MrssInstance {
    let dims = rng.random_range(1..=p.max_dims);
    let n = rng.random_range(1..=p.max_n);
    let vectors: Vec<Vec<u64>> = (0..n)
        .map(|_| (0..dims).map(|_| rng.random_range(1..=p.max_entry)).collect())
        .collect();
    let target = (0..dims)
        .map(|i| {
            let total: u64 = vectors.iter().map(|v| v[i]).sum();
            rng.random_range(0..=total)
        })
        .collect();
    let picks = p.budget.unwrap_or_else(|| rng.random_range(1..=n));
    MrssInstance::new(vectors, target, picks).expect("entries are positive")
}

fn gen_rbds(p: &GenParams, rng: &mut ChaCha8Rng) -> RbdsInstance {
    let terminals = rng.random_range(1..=p.max_n);
    let sources = rng.random_range(1..=p.max_n);
    let edges = (0..terminals)
        .cartesian_product(0..sources)
        .filter(|_| rng.random_bool(p.density))
        .collect();
    let k = p.budget.unwrap_or_else(|| rng.random_range(1..=sources));
    RbdsInstance::new(terminals, sources, edges, k).expect("generated in range")
}

/// Random pairing: candidate pairs in random order, each accepted with the
/// density probability while both ends still have degree below 3. Redrawn
/// until there are at least two edges. The budget is the minimum cover size
/// plus 0 or 1, so generated instances are yes-instances.
fn gen_vc(p: &GenParams, rng: &mut ChaCha8Rng) -> Vc3Instance {
    let density = p.density.max(0.05);
    loop {
        let n = rng.random_range(3..=p.max_n);
        let mut pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
        pairs.shuffle(rng);
        let mut g = Graph::with_vertices(n);
        for (u, v) in pairs {
            let (u, v) = (VertexId::from(u), VertexId::from(v));
            if g.degree(u) < 3 && g.degree(v) < 3 && rng.random_bool(density) {
                g.add_edge(u, v).expect("pairs are distinct");
            }
        }
        if g.edge_count() < 2 {
            continue;
        }
        let k = match p.budget {
            Some(k) => k,
            None => {
                let probe = Vc3Instance::new(g.clone(), n).expect("degree bounded");
                let tau = solve_vc_bruteforce(&probe).expect("n <= 20").expect("V covers").len();
                (tau + rng.random_range(0..=1)).min(n)
            }
        };
        return Vc3Instance::new(g, k).expect("degree bounded");
    }
}

fn gen_ds(p: &GenParams, rng: &mut ChaCha8Rng) -> DsCircleInstance {
    let n = rng.random_range(1..=p.max_n);
    let mut seq: Vec<VertexId> = (0..n).flat_map(|v| [v, v]).map(VertexId::from).collect();
    seq.shuffle(rng);
    let d = ChordDiagram::from_sequence(seq).expect("each id twice");
    let k = p.budget.unwrap_or_else(|| rng.random_range(1..=n));
    DsCircleInstance::new(d, k).expect("k >= 1")
}

fn gen_daf(p: &GenParams, rng: &mut ChaCha8Rng) -> DAFInstance {
    let n = rng.random_range(1..=p.max_n);
    let edges: Vec<(usize, usize)> = (0..n)
        .tuple_combinations()
        .filter(|_| rng.random_bool(p.density))
        .collect();
    let g = Graph::from_edges(n, edges).expect("distinct pairs");
    let forbidden = g.set_of(g.vertices().filter(|_| rng.random_bool(0.3)));
    let k = p.budget.unwrap_or_else(|| rng.random_range(1..=2));
    DAFInstance::new(g, k, forbidden).expect("k >= 1")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ForwardOk,
    ForwardFail,
    IffOk,
    IffFail,
    SkippedTooLarge,
}

impl Verdict {
    pub const ALL: [Verdict; 5] = [
        Verdict::ForwardOk,
        Verdict::ForwardFail,
        Verdict::IffOk,
        Verdict::IffFail,
        Verdict::SkippedTooLarge,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Verdict::ForwardOk => "forward-ok",
            Verdict::ForwardFail => "forward-fail",
            Verdict::IffOk => "iff-ok",
            Verdict::IffFail => "iff-fail",
            Verdict::SkippedTooLarge => "skipped-too-large",
        }
    }

    pub fn is_failure(self) -> bool {
        matches!(self, Verdict::ForwardFail | Verdict::IffFail)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivRecord {
    pub case: usize,
    pub digest: String,
    pub source_yes: bool,
    /// Forward certificate passed the target check (yes-instances only).
    pub certificate_valid: Option<bool>,
    pub certificate_size: Option<usize>,
    pub target_budget: usize,
    pub target_vertices: usize,
    /// Exhaustive answer on the target, when attempted.
    pub target_yes: Option<bool>,
    pub verdict: Verdict,
    pub error: Option<String>,
}

impl fmt::Display for EquivRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |b: Option<bool>| match b {
            Some(true) => "yes",
            Some(false) => "no",
            None => "-",
        };
        write!(
            f,
            "case {} {} source={} cert={} size={} budget={} n'={} target={} {}",
            self.case,
            self.digest,
            if self.source_yes { "yes" } else { "no" },
            opt(self.certificate_valid),
            self.certificate_size.map_or("-".to_string(), |s| s.to_string()),
            self.target_budget,
            self.target_vertices,
            opt(self.target_yes),
            self.verdict
        )?;
        if let Some(e) = &self.error {
            write!(f, " error: {e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivReport {
    pub kind: Kind,
    pub seed: u64,
    pub records: Vec<EquivRecord>,
}

impl EquivReport {
    pub fn count(&self, verdict: Verdict) -> usize {
        self.records.iter().filter(|r| r.verdict == verdict).count()
    }

    pub fn failures(&self) -> usize {
        self.records.iter().filter(|r| r.verdict.is_failure()).count()
    }

    pub fn summary(&self) -> String {
        let parts = Verdict::ALL
            .iter()
            .map(|v| format!("{}={}", v, self.count(*v)))
            .join(" ");
        format!("{} seed={} cases={} {}", self.kind, self.seed, self.records.len(), parts)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }

    pub fn digest(&self) -> String {
        short_digest(self.to_text().as_bytes())
    }
}

/// Checks one source instance: solve it exhaustively, compile it, and on a
/// yes-answer validate the forward certificate and the extraction round
/// trip. DA^F sources are also solved on the target for the converse.
pub fn check_instance(case: usize, src: &SourceInstance) -> EquivRecord {
    let mut record = EquivRecord {
        case,
        digest: src.digest(),
        source_yes: false,
        certificate_valid: None,
        certificate_size: None,
        target_budget: 0,
        target_vertices: 0,
        target_yes: None,
        verdict: Verdict::ForwardFail,
        error: None,
    };
    if let Err(e) = check_into(src, &mut record) {
        record.verdict = Verdict::ForwardFail;
        record.error = Some(e.to_string());
    }
    record
}

fn check_into(src: &SourceInstance, record: &mut EquivRecord) -> Result<(), HarnessError> {
    let solution = solve_source(src)?;
    let reduced = reduce(src)?;
    record.source_yes = solution.is_some();
    record.target_budget = reduced.target.budget;
    record.target_vertices = reduced.target.graph.vertex_count();

    let mut forward_ok = true;
    if let Some(sol) = &solution {
        let cert = reduced.forward(sol);
        let valid = reduced.is_feasible(&cert) && reduced.extract(&cert) == *sol;
        record.certificate_valid = Some(valid);
        record.certificate_size = Some(cert.len());
        forward_ok = valid;
    }

    if let SourceInstance::Daf(_) = src {
        let t = &reduced.target;
        let target = brute_force_da_within(&t.graph, &t.forbidden, t.budget)?;
        record.target_yes = Some(target.is_some());
        let back_ok = target
            .as_ref()
            .map(|w| match (src, reduced.extract(&w.set)) {
                (SourceInstance::Daf(i), SourceSolution::Vertices(s)) => is_daf_feasible(i, &s),
                _ => false,
            })
            .unwrap_or(true);
        let agree = target.is_some() == solution.is_some();
        record.verdict = if forward_ok && agree && back_ok {
            Verdict::IffOk
        } else {
            Verdict::IffFail
        };
        return Ok(());
    }

    record.verdict = match (&solution, forward_ok) {
        (Some(_), true) => Verdict::ForwardOk,
        (Some(_), false) => Verdict::ForwardFail,
        (None, _) => Verdict::SkippedTooLarge,
    };
    Ok(())
}

/// Generates `count` instances from `seed` and checks them in parallel;
/// records come back in case order.
pub fn run_equiv_test(
    kind: Kind,
    count: usize,
    params: &GenParams,
    seed: u64,
) -> Result<EquivReport, HarnessError> {
    params.validate(kind)?;
    let records = (0..count)
        .into_par_iter()
        .map(|case| {
            let mut rng = case_rng(seed, case as u64);
            let src = generate(kind, params, &mut rng).expect("parameters validated");
            check_instance(case, &src)
        })
        .collect();
    Ok(EquivReport { kind, seed, records })
}

/// Whether `set` is a defensive alliance of `g` within `budget`.
pub fn is_alliance_within(g: &Graph, set: &VertexSet, budget: usize) -> bool {
    set.len() <= budget && is_defensive_alliance(g, set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_parse() {
        for k in Kind::ALL {
            assert_eq!(k.name().parse::<Kind>().unwrap(), k);
        }
        assert!("nope".parse::<Kind>().is_err());
    }

    #[test]
    fn generators_are_reproducible_and_valid() {
        for kind in Kind::ALL {
            let params = GenParams::defaults(kind);
            for case in 0..20 {
                let a = generate(kind, &params, &mut case_rng(7, case)).unwrap();
                let b = generate(kind, &params, &mut case_rng(7, case)).unwrap();
                assert_eq!(a.to_text(), b.to_text());
                let back = SourceInstance::parse(kind, &a.to_text(), None).unwrap();
                assert_eq!(back.to_text(), a.to_text());
                match &a {
                    SourceInstance::Vc(i) => {
                        assert!(i.graph.max_degree() <= 3);
                        assert!(i.graph.edge_count() >= 2);
                    }
                    SourceInstance::Mrss(i) => {
                        assert!(i.vectors.iter().flatten().all(|&e| e >= 1));
                    }
                    SourceInstance::DsCircle(i) => {
                        let mut counts = vec![0; i.diagram.chord_count()];
                        for v in i.diagram.sequence() {
                            counts[v.index()] += 1;
                        }
                        assert!(counts.iter().all(|&c| c == 2));
                    }
                    _ => {}
                }
            }
        }
    }

    #[test]
    fn bad_params_rejected() {
        let mut p = GenParams::defaults(Kind::Vc);
        p.max_n = 2;
        assert!(matches!(generate(Kind::Vc, &p, &mut case_rng(0, 0)), Err(HarnessError::BadParams(_))));
        let mut p = GenParams::defaults(Kind::Rbds);
        p.density = 1.5;
        assert!(run_equiv_test(Kind::Rbds, 1, &p, 0).is_err());
    }

    #[test]
    fn small_runs_have_no_failures() {
        for kind in [Kind::Rbds, Kind::Vc, Kind::Daf, Kind::DsCircle] {
            let mut params = GenParams::defaults(kind);
            params.max_n = params.max_n.min(4);
            let report = run_equiv_test(kind, 6, &params, 11).unwrap();
            assert_eq!(report.failures(), 0, "{}", report.to_text());
            assert_eq!(report.records.len(), 6);
            assert!(report.records.iter().enumerate().all(|(i, r)| r.case == i));
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let params = GenParams::defaults(Kind::Daf);
        let a = run_equiv_test(Kind::Daf, 10, &params, 3).unwrap();
        let b = run_equiv_test(Kind::Daf, 10, &params, 3).unwrap();
        assert_eq!(a.to_text(), b.to_text());
        assert_eq!(a.digest(), b.digest());
        assert_eq!(a.digest().len(), 16);
    }
}
