//! Re-validation of a serialized proof trace against nothing but graph
//! primitives. The replay rebuilds every branch's partial adjacency from
//! scratch, re-derives which apexes were viable at every node, and checks
//! each leaf certificate by recomputing the violated count. A trace passes
//! only if the recorded tree is exactly the exhaustive one and every
//! contradiction is real.

use super::apex::{base_edges, cycle_edges, ApexContext, CycleEdge};
use super::structures::{admissible_cycle_structures, raw_cycle_structures};
use super::trace::{Assignment, CaseTrace, Certificate, ProofTrace};
use super::ProofError;
use crate::graph::Graph;
use std::collections::{BTreeMap, HashMap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReplayError {
    #[error("trace header is inconsistent: {0}")]
    Header(String),
    #[error("case {case} {structure}: invalid layout: {message}")]
    Layout {
        case: usize,
        structure: String,
        message: String,
    },
    #[error("case {case} {structure}: broken leaf at path {path:?}: {message}")]
    BrokenLeaf {
        case: usize,
        structure: String,
        path: Vec<(usize, usize)>,
        message: String,
    },
    #[error("case {case} {structure}: tree not exhaustive at path {path:?}: {message}")]
    NotExhaustive {
        case: usize,
        structure: String,
        path: Vec<(usize, usize)>,
        message: String,
    },
    #[error("trace stats are inconsistent: {0}")]
    Stats(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReplaySummary {
    pub cases: usize,
    pub nodes_verified: usize,
    pub leaves_verified: usize,
    pub completions_verified: usize,
    pub certificates: BTreeMap<String, usize>,
}

fn header_err(msg: impl Into<String>) -> ReplayError {
    ReplayError::Header(msg.into())
}

/// Replays a trace produced by the proof engine. Returns a summary of what
/// was re-verified, or the first broken leaf or exhaustiveness gap found.
pub fn replay_trace(trace: &ProofTrace) -> Result<ReplaySummary, ReplayError> {
    let p = trace.params;
    if p.lambda != 1 {
        return Err(header_err(format!(
            "replay handles lambda = 1 traces, got {p}"
        )));
    }
    let counts = crate::params::expected_counts(&p)
        .map_err(|e| header_err(format!("expected counts: {e}")))?;
    let ctx = ApexContext::for_params(&p).map_err(|e| header_err(format!("context: {e}")))?;
    if trace.labeling != ctx.labeling {
        return Err(header_err(
            "labeling differs from the canonical block labeling",
        ));
    }
    let anchor = super::partition::anchor_triangle_count(&p)
        .map_err(|e: ProofError| header_err(e.to_string()))?;
    let w_apex = counts.partition.3 * counts.triangles_per_vertex;
    let d = &trace.derived;
    if d.partition_sizes != counts.partition
        || d.total_triangles != counts.triangles
        || d.anchor_triangles != anchor
        || d.w_apex_triangles != w_apex
        || d.triangles_inside_classes != counts.triangles as i64 - anchor as i64 - w_apex as i64
    {
        return Err(header_err(
            "derived counting facts do not match the parameters",
        ));
    }
    if d.raw_structures != raw_cycle_structures(ctx.class_size()) {
        return Err(header_err("raw cycle structures differ from enumeration"));
    }
    let admissible =
        admissible_cycle_structures(ctx.class_size()).map_err(|e| header_err(e.to_string()))?;
    if d.admissible_structures != admissible {
        return Err(header_err(
            "admissible cycle structures differ from enumeration",
        ));
    }
    if trace
        .cases
        .iter()
        .map(|c| &c.structure)
        .ne(admissible.iter())
    {
        return Err(header_err(
            "trace cases do not cover the admissible structures in order",
        ));
    }

    let mut summary = ReplaySummary {
        cases: trace.cases.len(),
        nodes_verified: 0,
        leaves_verified: 0,
        completions_verified: 0,
        certificates: BTreeMap::new(),
    };
    for (index, case) in trace.cases.iter().enumerate() {
        let mut replay = CaseReplay::new(index, case, &ctx)?;
        replay.walk(0, &mut Vec::new())?;
        replay.finish()?;
        summary.nodes_verified += replay.nodes_seen;
        summary.leaves_verified += replay.leaves_seen;
        summary.completions_verified += replay.completions_seen;
        for (kind, count) in case.certificate_histogram() {
            *summary.certificates.entry(kind).or_insert(0) += count;
        }
        if case.nodes != replay.nodes_seen {
            return Err(ReplayError::Stats(format!(
                "case {index} records {} nodes, replay visited {}",
                case.nodes, replay.nodes_seen
            )));
        }
    }
    if trace.surviving_completions != summary.completions_verified {
        return Err(ReplayError::Stats(
            "surviving_completions does not match the cases".into(),
        ));
    }
    if trace.stats.leaves != summary.leaves_verified
        || trace.stats.nodes_explored != summary.nodes_verified
        || trace.stats.certificates != summary.certificates
    {
        return Err(ReplayError::Stats(
            "aggregate stats do not match the cases".into(),
        ));
    }
    Ok(summary)
}

type PathKey = Vec<(usize, usize)>;

struct CaseReplay<'a> {
    case: usize,
    structure: String,
    ctx: &'a ApexContext,
    edges: Vec<CycleEdge>,
    g: Graph,
    owned: Vec<Vec<usize>>,
    leaves: HashMap<PathKey, &'a Certificate>,
    completions: HashSet<PathKey>,
    nodes_seen: usize,
    leaves_seen: usize,
    completions_seen: usize,
}

fn key(path: &[Assignment]) -> PathKey {
    path.iter().map(|a| (a.edge, a.apex)).collect()
}

impl<'a> CaseReplay<'a> {
    fn new(case: usize, trace: &'a CaseTrace, ctx: &'a ApexContext) -> Result<Self, ReplayError> {
        let structure = trace.structure.to_string();
        let layout_err = |message: String| ReplayError::Layout {
            case,
            structure: structure.clone(),
            message,
        };
        // the cycles must rename the classes exactly once, alternating A,B,C
        let lengths: Vec<usize> = trace.cycles.iter().map(|c| c.len()).collect();
        if lengths != trace.structure.0 {
            return Err(layout_err(
                "cycle lengths do not match the structure".into(),
            ));
        }
        let mut used = HashSet::new();
        for cycle in &trace.cycles {
            for (pos, &v) in cycle.iter().enumerate() {
                if ctx.labeling.class_of(v) != Some(pos % 3) {
                    return Err(layout_err(format!("vertex {v} breaks the class rotation")));
                }
                if !used.insert(v) {
                    return Err(layout_err(format!(
                        "vertex {v} appears twice on the cycles"
                    )));
                }
            }
        }
        if used.len() != 3 * ctx.class_size() {
            return Err(layout_err("cycles do not cover the classes".into()));
        }
        let edges = cycle_edges(&trace.cycles, &ctx.labeling);
        if trace.edges != edges.iter().map(|e| [e.u, e.v]).collect::<Vec<_>>() {
            return Err(layout_err("edge list does not match the cycles".into()));
        }

        let mut g = Graph::empty(ctx.labeling.order()).expect("order within limits");
        for (u, v) in base_edges(&ctx.labeling, &edges) {
            g.add_edge(u, v).expect("labels in range");
        }

        let mut leaves = HashMap::new();
        for leaf in &trace.leaves {
            for (i, a) in leaf.path.iter().enumerate() {
                if a.edge != i || !ctx.labeling.is_w(a.apex) {
                    return Err(ReplayError::BrokenLeaf {
                        case,
                        structure: structure.clone(),
                        path: key(&leaf.path),
                        message: "path is not a valid in-order assignment".into(),
                    });
                }
            }
            if leaves.insert(key(&leaf.path), &leaf.certificate).is_some() {
                return Err(ReplayError::BrokenLeaf {
                    case,
                    structure: structure.clone(),
                    path: key(&leaf.path),
                    message: "duplicate leaf".into(),
                });
            }
        }
        let completions = trace
            .completions
            .iter()
            .map(|c| key(&c.assignment))
            .collect();
        Ok(CaseReplay {
            case,
            structure,
            ctx,
            edges,
            g,
            owned: vec![Vec::new(); ctx.labeling.class_w.len()],
            leaves,
            completions,
            nodes_seen: 0,
            leaves_seen: 0,
            completions_seen: 0,
        })
    }

    fn broken(&self, path: &PathKey, message: impl Into<String>) -> ReplayError {
        ReplayError::BrokenLeaf {
            case: self.case,
            structure: self.structure.clone(),
            path: path.clone(),
            message: message.into(),
        }
    }

    fn gap(&self, path: &PathKey, message: impl Into<String>) -> ReplayError {
        ReplayError::NotExhaustive {
            case: self.case,
            structure: self.structure.clone(),
            path: path.clone(),
            message: message.into(),
        }
    }

    fn w_index(&self, label: usize) -> Option<usize> {
        self.ctx.labeling.class_w.iter().position(|&w| w == label)
    }

    /// The structural viability rules, independently re-derived from the
    /// partial adjacency: spent apex, repeated class pair, apex already
    /// adjacent to an endpoint, or a foreign cycle edge fully covered.
    fn viable(&self, ei: usize, wi: usize) -> bool {
        if self.owned[wi].len() == self.ctx.triangles_per_w {
            return false;
        }
        let edge = self.edges[ei];
        if self.owned[wi]
            .iter()
            .any(|&o| self.edges[o].class_pair == edge.class_pair)
        {
            return false;
        }
        let w = self.ctx.labeling.class_w[wi];
        if self.g.has_edge(w, edge.u) || self.g.has_edge(w, edge.v) {
            return false;
        }
        let covered = |x: usize| x == edge.u || x == edge.v || self.g.has_edge(w, x);
        for (oi, other) in self.edges.iter().enumerate() {
            if oi != ei && !self.owned[wi].contains(&oi) && covered(other.u) && covered(other.v) {
                return false;
            }
        }
        true
    }

    fn commit(&mut self, ei: usize, wi: usize) {
        let (u, v) = (self.edges[ei].u, self.edges[ei].v);
        let w = self.ctx.labeling.class_w[wi];
        self.g.add_edge(u, w).expect("in range");
        self.g.add_edge(v, w).expect("in range");
        self.owned[wi].push(ei);
    }

    fn rollback(&mut self, ei: usize, wi: usize) {
        let (u, v) = (self.edges[ei].u, self.edges[ei].v);
        let w = self.ctx.labeling.class_w[wi];
        self.g.remove_edge(u, w).expect("in range");
        self.g.remove_edge(v, w).expect("in range");
        self.owned[wi].pop();
    }

    fn mu_violated(&self) -> bool {
        let ws = &self.ctx.labeling.class_w;
        for (i, &w1) in ws.iter().enumerate() {
            for &w2 in &ws[i + 1..] {
                let common = self
                    .g
                    .neighbors(w1)
                    .intersection(self.g.neighbors(w2))
                    .len();
                if common > self.ctx.mu {
                    return true;
                }
            }
        }
        false
    }

    fn mu_exact_everywhere(&self) -> bool {
        let ws = &self.ctx.labeling.class_w;
        for (i, &w1) in ws.iter().enumerate() {
            for &w2 in &ws[i + 1..] {
                if self
                    .g
                    .neighbors(w1)
                    .intersection(self.g.neighbors(w2))
                    .len()
                    != self.ctx.mu
                {
                    return false;
                }
            }
        }
        true
    }

    fn walk(&mut self, depth: usize, path: &mut PathKey) -> Result<(), ReplayError> {
        self.nodes_seen += 1;
        if depth == self.edges.len() {
            if self.mu_exact_everywhere() {
                if !self.completions.contains(path) {
                    return Err(self.gap(path, "a surviving completion is not recorded"));
                }
                if self.leaves.contains_key(path) {
                    return Err(self.broken(path, "completion also recorded as a leaf"));
                }
                self.completions_seen += 1;
                return Ok(());
            }
            let cert = self
                .leaves
                .get(path)
                .copied()
                .ok_or_else(|| self.gap(path, "a mu-deficient completion has no leaf"))?;
            self.check_certificate(path, cert, true)?;
            self.leaves_seen += 1;
            return Ok(());
        }

        let viable: Vec<usize> = (0..self.owned.len())
            .filter(|&wi| self.viable(depth, wi))
            .collect();
        if viable.is_empty() {
            let cert = self
                .leaves
                .get(path)
                .copied()
                .ok_or_else(|| self.gap(path, "no apex is viable but no leaf is recorded"))?;
            let Certificate::NoApexAvailable { edge, eliminations } = cert else {
                return Err(self.broken(path, "expected a no_apex_available certificate"));
            };
            let e = self.edges[depth];
            if *edge != [e.u, e.v] {
                return Err(self.broken(path, "no_apex_available names the wrong edge"));
            }
            let mut named: Vec<usize> = eliminations.iter().map(|el| el.apex).collect();
            named.sort_unstable();
            let mut all_w = self.ctx.labeling.class_w.clone();
            all_w.sort_unstable();
            if named != all_w {
                return Err(self.broken(path, "eliminations do not cover W exactly once"));
            }
            for el in eliminations {
                let wi = self
                    .w_index(el.apex)
                    .expect("apex is in W by the check above");
                // evaluate the reason with the candidate assignment in place
                self.commit(depth, wi);
                let ok = self.check_certificate(path, &el.reason, false);
                self.rollback(depth, wi);
                ok.map_err(|e| match e {
                    ReplayError::BrokenLeaf { message, .. } => self.broken(
                        path,
                        format!("elimination of apex {} is unjustified: {message}", el.apex),
                    ),
                    other => other,
                })?;
            }
            self.leaves_seen += 1;
            return Ok(());
        }

        if self.leaves.contains_key(path) {
            return Err(self.broken(
                path,
                format!("leaf recorded but apexes {viable:?} are viable"),
            ));
        }
        for wi in viable {
            let w = self.ctx.labeling.class_w[wi];
            self.commit(depth, wi);
            path.push((depth, w));
            let result = if self.mu_violated() {
                match self.leaves.get(path).copied() {
                    Some(cert @ Certificate::MuViolationWithWitnesses { .. }) => {
                        self.nodes_seen += 1;
                        self.check_certificate(path, cert, false)
                            .map(|()| self.leaves_seen += 1)
                    }
                    Some(_) => Err(self.broken(path, "expected a mu violation certificate")),
                    None => Err(self.gap(path, "mu cap is violated but no leaf is recorded")),
                }
            } else {
                self.walk(depth + 1, path)
            };
            path.pop();
            self.rollback(depth, wi);
            result?;
        }
        Ok(())
    }

    /// Checks one certificate against the current partial adjacency.
    fn check_certificate(
        &self,
        path: &PathKey,
        cert: &Certificate,
        complete: bool,
    ) -> Result<(), ReplayError> {
        let fail = |message: String| Err(self.broken(path, message));
        let triangle_present = |t: &[usize; 3]| {
            t[0] != t[1]
                && t[1] != t[2]
                && t[0] != t[2]
                && self.g.has_edge(t[0], t[1])
                && self.g.has_edge(t[1], t[2])
                && self.g.has_edge(t[0], t[2])
        };
        match cert {
            Certificate::EdgeInTwoTriangles {
                edge,
                first,
                second,
            } => {
                let on_edge = |t: &[usize; 3]| t.contains(&edge[0]) && t.contains(&edge[1]);
                if !triangle_present(first) || !triangle_present(second) {
                    return fail("a claimed triangle is not present".into());
                }
                let mut a = *first;
                let mut b = *second;
                a.sort_unstable();
                b.sort_unstable();
                if a == b || !on_edge(first) || !on_edge(second) {
                    return fail("the triangles do not share the edge distinctly".into());
                }
                Ok(())
            }
            Certificate::VertexExceedsThreeTriangles { vertex, triangles } => {
                if triangles.len() <= self.ctx.triangles_per_w {
                    return fail("triangle list does not exceed the per-vertex count".into());
                }
                let mut seen = HashSet::new();
                for t in triangles {
                    if !t.contains(vertex) || !triangle_present(t) {
                        return fail(format!("triangle {t:?} is not present through {vertex}"));
                    }
                    let mut sorted = *t;
                    sorted.sort_unstable();
                    if !seen.insert(sorted) {
                        return fail(format!("triangle {t:?} is listed twice"));
                    }
                }
                Ok(())
            }
            Certificate::MuViolationWithWitnesses { pair, common } => {
                let [w1, w2] = *pair;
                if w1 == w2 || !self.ctx.labeling.is_w(w1) || !self.ctx.labeling.is_w(w2) {
                    return fail("pair is not two distinct W vertices".into());
                }
                if self.g.has_edge(w1, w2) {
                    return fail("pair is adjacent".into());
                }
                let mut dedup = common.clone();
                dedup.sort_unstable();
                dedup.dedup();
                if dedup.len() != common.len() {
                    return fail("witness list repeats a vertex".into());
                }
                for &x in common {
                    if !self.g.has_edge(w1, x) || !self.g.has_edge(w2, x) {
                        return fail(format!("witness {x} is not a common neighbor"));
                    }
                }
                let violated =
                    common.len() > self.ctx.mu || (complete && common.len() != self.ctx.mu);
                if !violated {
                    return fail(format!("{} common neighbors do not break mu", common.len()));
                }
                Ok(())
            }
            Certificate::WAdjacencyQuotaViolation { w, edges } => {
                if !self.ctx.labeling.is_w(*w) {
                    return fail(format!("{w} is not a W vertex"));
                }
                let mut pairs = Vec::new();
                let mut counts = [0usize; 3];
                for e in edges {
                    let is_cycle_edge = self
                        .edges
                        .iter()
                        .any(|c| (c.u == e[0] && c.v == e[1]) || (c.u == e[1] && c.v == e[0]));
                    if !is_cycle_edge {
                        return fail(format!("{e:?} is not a cycle edge"));
                    }
                    if !self.g.has_edge(*w, e[0]) || !self.g.has_edge(*w, e[1]) {
                        return fail(format!("{w} is not the apex of {e:?}"));
                    }
                    let cu = self.ctx.labeling.class_of(e[0]).expect("cycle vertex");
                    let cv = self.ctx.labeling.class_of(e[1]).expect("cycle vertex");
                    counts[cu] += 1;
                    counts[cv] += 1;
                    pairs.push((cu.min(cv), cu.max(cv)));
                }
                let mut sorted = pairs.clone();
                sorted.sort_unstable();
                sorted.dedup();
                let duplicate_pair = sorted.len() != pairs.len();
                let overflow = counts.iter().any(|&c| c > self.ctx.per_class_quota);
                if !duplicate_pair && !overflow {
                    return fail("the listed edges do not overflow any class quota".into());
                }
                Ok(())
            }
            Certificate::NoApexAvailable { .. } => {
                fail("no_apex_available cannot justify an elimination".into())
            }
        }
    }

    fn finish(&self) -> Result<(), ReplayError> {
        if self.leaves_seen != self.leaves.len() {
            return Err(ReplayError::Stats(format!(
                "case {} {} records {} leaves, replay reached {}",
                self.case,
                self.structure,
                self.leaves.len(),
                self.leaves_seen
            )));
        }
        if self.completions_seen != self.completions.len() {
            return Err(ReplayError::Stats(format!(
                "case {} {} records {} completions, replay reached {}",
                self.case,
                self.structure,
                self.completions.len(),
                self.completions_seen
            )));
        }
        Ok(())
    }
}
