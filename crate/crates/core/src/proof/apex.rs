//! Exhaustion of W-apex assignments over the cycle edges of one admissible
//! cycle structure.
//!
//! In the forced structure of a lambda = 1, mu = 2 graph, every cross-class
//! cycle edge is the base of exactly one triangle whose apex lies in W.
//! Candidates for an edge are filtered by the structural rules the case
//! analysis runs on:
//!
//! * a W vertex already carrying k*lambda/2 triangles is spent;
//! * two edges with the same class pair would overflow the mu-per-class
//!   neighbor quota of their shared apex;
//! * an apex adjacent to both endpoints of a cycle edge it does not own puts
//!   that edge in a second triangle, violating lambda = 1 (edges sharing an
//!   endpoint with an owned edge are the simplest instance).
//!
//! The mu cap on W pairs is checked when an assignment commits. An edge with
//! no surviving candidate closes the branch with a `no_apex_available` leaf
//! whose eliminations record, per candidate, the violated rule.

use super::trace::{
    Assignment, CaseTrace, Certificate, Completion, Elimination, Labeling, LeafRecord,
};
use super::{CycleStructure, ProofError};
use crate::graph::Graph;
use crate::graph6::to_graph6;

/// Sizes and quotas the assignment problem runs under, all derived from the
/// parameter set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApexContext {
    pub labeling: Labeling,
    /// Exact members of W each apex must take per class (= mu).
    pub per_class_quota: usize,
    /// Triangles through every vertex (= k*lambda/2).
    pub triangles_per_w: usize,
    /// The mu cap checked across W pairs.
    pub mu: usize,
}

impl ApexContext {
    pub fn for_params(p: &crate::params::SrgParams) -> Result<Self, ProofError> {
        let counts = crate::params::expected_counts(p)?;
        let (cs, w) = (counts.partition.0 as usize, counts.partition.3 as usize);
        Ok(ApexContext {
            labeling: Labeling::canonical(cs, w),
            per_class_quota: p.mu as usize,
            triangles_per_w: counts.triangles_per_vertex as usize,
            mu: p.mu as usize,
        })
    }

    pub fn class_size(&self) -> usize {
        self.labeling.class_a.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) struct CycleEdge {
    pub(super) u: usize,
    pub(super) v: usize,
    /// Unordered pair of class indices {0,1}, {1,2} or {0,2}.
    pub(super) class_pair: (usize, usize),
}

/// Lays the cycles of `structure` onto the canonical labels: each cycle
/// consumes its vertices class by class in rotation, so a 6-cycle reads
/// a1 b1 c1 a2 b2 c2. Class-internal labels are free up to isomorphism,
/// which is exactly the freedom this layout spends.
fn lay_out_cycles(structure: &CycleStructure, labeling: &Labeling) -> Vec<Vec<usize>> {
    let classes = [&labeling.class_a, &labeling.class_b, &labeling.class_c];
    let mut next = [0usize; 3];
    let mut cycles = Vec::new();
    for &len in &structure.0 {
        let mut cycle = Vec::with_capacity(len);
        for pos in 0..len {
            let class = pos % 3;
            cycle.push(classes[class][next[class]]);
            next[class] += 1;
        }
        cycles.push(cycle);
    }
    cycles
}

struct ApexSearch<'a> {
    ctx: &'a ApexContext,
    edges: Vec<CycleEdge>,
    /// Per W index: edge indices currently assigned.
    w_edges: Vec<Vec<usize>>,
    path: Vec<Assignment>,
    nodes: usize,
    leaves: Vec<LeafRecord>,
    completions: Vec<Completion>,
}

impl<'a> ApexSearch<'a> {
    fn w_label(&self, wi: usize) -> usize {
        self.ctx.labeling.class_w[wi]
    }

    /// Vertices currently adjacent to W index `wi` (endpoints of its edges).
    fn cover(&self, wi: usize) -> Vec<usize> {
        let mut cover = Vec::with_capacity(2 * self.w_edges[wi].len());
        for &ei in &self.w_edges[wi] {
            cover.push(self.edges[ei].u);
            cover.push(self.edges[ei].v);
        }
        cover
    }

    fn triangle(&self, ei: usize, wi: usize) -> [usize; 3] {
        [self.edges[ei].u, self.edges[ei].v, self.w_label(wi)]
    }

    /// Structural filter: why `wi` cannot take edge `ei`, if it cannot.
    fn eliminate(&self, ei: usize, wi: usize) -> Option<Certificate> {
        let owned = &self.w_edges[wi];
        if owned.len() == self.ctx.triangles_per_w {
            let mut triangles: Vec<[usize; 3]> =
                owned.iter().map(|&e| self.triangle(e, wi)).collect();
            triangles.push(self.triangle(ei, wi));
            return Some(Certificate::VertexExceedsThreeTriangles {
                vertex: self.w_label(wi),
                triangles,
            });
        }
        let edge = self.edges[ei];
        if let Some(&dup) = owned
            .iter()
            .find(|&&e| self.edges[e].class_pair == edge.class_pair)
        {
            return Some(Certificate::WAdjacencyQuotaViolation {
                w: self.w_label(wi),
                edges: vec![[self.edges[dup].u, self.edges[dup].v], [edge.u, edge.v]],
            });
        }
        // shared endpoint: the edge from the shared vertex to the apex would
        // lie in both base triangles
        let w = self.w_label(wi);
        for &owned_ei in owned {
            let other = self.edges[owned_ei];
            for shared in [edge.u, edge.v] {
                if other.u == shared || other.v == shared {
                    let third = if other.u == shared { other.v } else { other.u };
                    let opposite = if edge.u == shared { edge.v } else { edge.u };
                    return Some(Certificate::EdgeInTwoTriangles {
                        edge: [shared, w],
                        first: [shared, third, w],
                        second: [shared, opposite, w],
                    });
                }
            }
        }
        // covered cycle edge: taking `ei` makes `wi` adjacent to both ends of
        // some other cycle edge x-y, so the edge x-w sits in the triangle of
        // the owned base through x and in x-y-w
        let mut cover = self.cover(wi);
        cover.push(edge.u);
        cover.push(edge.v);
        for (other_i, other) in self.edges.iter().enumerate() {
            if other_i == ei || owned.contains(&other_i) {
                continue;
            }
            if cover.contains(&other.u) && cover.contains(&other.v) {
                let x = other.u;
                let base = owned
                    .iter()
                    .map(|&e| self.edges[e])
                    .chain(std::iter::once(edge))
                    .find(|b| b.u == x || b.v == x)
                    .expect("x is covered by some base");
                let third = if base.u == x { base.v } else { base.u };
                return Some(Certificate::EdgeInTwoTriangles {
                    edge: [x, w],
                    first: [x, third, w],
                    second: [x, other.v, w],
                });
            }
        }
        None
    }

    /// The mu cap across W pairs, evaluated after `wi` gained `ei`.
    fn mu_violation(&self, wi: usize) -> Option<Certificate> {
        let cover = self.cover(wi);
        for other in 0..self.w_edges.len() {
            if other == wi {
                continue;
            }
            let common: Vec<usize> = self
                .cover(other)
                .into_iter()
                .filter(|x| cover.contains(x))
                .collect();
            if common.len() > self.ctx.mu {
                let mut common = common;
                common.sort_unstable();
                let mut pair = [self.w_label(wi), self.w_label(other)];
                pair.sort_unstable();
                return Some(Certificate::MuViolationWithWitnesses { pair, common });
            }
        }
        None
    }

    fn search(&mut self, depth: usize) {
        self.nodes += 1;
        if depth == self.edges.len() {
            self.record_completion();
            return;
        }
        let mut eliminations = Vec::new();
        let mut viable = Vec::new();
        for wi in 0..self.w_edges.len() {
            match self.eliminate(depth, wi) {
                Some(reason) => eliminations.push(Elimination {
                    apex: self.w_label(wi),
                    reason,
                }),
                None => viable.push(wi),
            }
        }
        if viable.is_empty() {
            let edge = [self.edges[depth].u, self.edges[depth].v];
            self.leaves.push(LeafRecord {
                path: self.path.clone(),
                certificate: Certificate::NoApexAvailable { edge, eliminations },
            });
            return;
        }
        for wi in viable {
            self.w_edges[wi].push(depth);
            self.path.push(Assignment {
                edge: depth,
                apex: self.w_label(wi),
            });
            if let Some(cert) = self.mu_violation(wi) {
                self.nodes += 1;
                self.leaves.push(LeafRecord {
                    path: self.path.clone(),
                    certificate: cert,
                });
            } else {
                self.search(depth + 1);
            }
            self.path.pop();
            self.w_edges[wi].pop();
        }
    }

    fn record_completion(&mut self) {
        // complete assignments must give every W pair exactly mu common
        // neighbors; an excess was caught at commit time, and a deficit
        // cannot occur because both incident edges of every class vertex got
        // distinct apexes. Verified here so a falsified run never reports a
        // bogus counterexample.
        for wi in 0..self.w_edges.len() {
            let cover = self.cover(wi);
            for other in (wi + 1)..self.w_edges.len() {
                let common: Vec<usize> = self
                    .cover(other)
                    .into_iter()
                    .filter(|x| cover.contains(x))
                    .collect();
                if common.len() != self.ctx.mu {
                    let mut common = common;
                    common.sort_unstable();
                    self.leaves.push(LeafRecord {
                        path: self.path.clone(),
                        certificate: Certificate::MuViolationWithWitnesses {
                            pair: [self.w_label(wi), self.w_label(other)],
                            common,
                        },
                    });
                    return;
                }
            }
        }
        let graph6 = {
            let mut g = Graph::empty(self.ctx.labeling.order()).expect("within limits");
            for (u, v) in base_edges(&self.ctx.labeling, &self.edges) {
                g.add_edge(u, v).expect("labels in range");
            }
            for a in &self.path {
                let e = self.edges[a.edge];
                g.add_edge(e.u, a.apex).expect("labels in range");
                g.add_edge(e.v, a.apex).expect("labels in range");
            }
            to_graph6(&g)
        };
        self.completions.push(Completion {
            assignment: self.path.clone(),
            decided_edges_graph6: graph6,
        });
    }
}

/// Edges decided before any apex is placed: the anchor triangle, each anchor
/// vertex to its class, and the cycle edges themselves.
pub(super) fn base_edges(labeling: &Labeling, edges: &[CycleEdge]) -> Vec<(usize, usize)> {
    let [a, b, c] = labeling.anchor;
    let mut out = vec![(a, b), (b, c), (a, c)];
    for (&anchor, class) in
        [a, b, c]
            .iter()
            .zip([&labeling.class_a, &labeling.class_b, &labeling.class_c])
    {
        out.extend(class.iter().map(|&v| (anchor, v)));
    }
    out.extend(edges.iter().map(|e| (e.u, e.v)));
    out
}

pub(super) fn cycle_edges(cycles: &[Vec<usize>], labeling: &Labeling) -> Vec<CycleEdge> {
    let mut edges = Vec::new();
    for cycle in cycles {
        let len = cycle.len();
        for i in 0..len {
            let (u, v) = (cycle[i], cycle[(i + 1) % len]);
            let (cu, cv) = (
                labeling.class_of(u).expect("cycle vertex in a class"),
                labeling.class_of(v).expect("cycle vertex in a class"),
            );
            let class_pair = (cu.min(cv), cu.max(cv));
            edges.push(CycleEdge { u, v, class_pair });
        }
    }
    edges
}

/// Exhausts every assignment of W apexes to the cycle edges of `structure`,
/// in cyclic edge order with apexes tried in ascending label. Every branch
/// ends in a certificate or a recorded completion; for srg(19,6,1,2) both
/// admissible structures close with zero completions.
///
/// When W is empty no triangle needs a W apex and the empty assignment is
/// the single vacuous completion.
pub fn exhaust_apex_assignments(
    structure: &CycleStructure,
    ctx: &ApexContext,
) -> Result<CaseTrace, ProofError> {
    let admissible = super::structures::admissible_cycle_structures(ctx.class_size())?;
    if !admissible.contains(structure) {
        return Err(ProofError::StructureNotAdmissible {
            structure: structure.clone(),
        });
    }
    let cycles = lay_out_cycles(structure, &ctx.labeling);
    let edges = cycle_edges(&cycles, &ctx.labeling);
    let w_count = ctx.labeling.class_w.len();

    if w_count == 0 {
        // zero W-apex triangles are required, nothing to assign
        return Ok(CaseTrace {
            structure: structure.clone(),
            cycles,
            edges: edges.iter().map(|e| [e.u, e.v]).collect(),
            nodes: 1,
            leaves: Vec::new(),
            completions: vec![Completion {
                assignment: Vec::new(),
                decided_edges_graph6: {
                    let mut g = Graph::empty(ctx.labeling.order()).expect("within limits");
                    for (u, v) in base_edges(&ctx.labeling, &edges) {
                        g.add_edge(u, v).expect("labels in range");
                    }
                    to_graph6(&g)
                },
            }],
        });
    }
    if w_count * ctx.triangles_per_w != edges.len() {
        return Err(ProofError::InconsistentApexContext {
            required: w_count * ctx.triangles_per_w,
            edges: edges.len(),
        });
    }

    let mut search = ApexSearch {
        ctx,
        edges,
        w_edges: vec![Vec::new(); w_count],
        path: Vec::new(),
        nodes: 0,
        leaves: Vec::new(),
        completions: Vec::new(),
    };
    search.search(0);
    Ok(CaseTrace {
        structure: structure.clone(),
        cycles,
        edges: search.edges.iter().map(|e| [e.u, e.v]).collect(),
        nodes: search.nodes,
        leaves: search.leaves,
        completions: search.completions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::SrgParams;

    fn ctx19() -> ApexContext {
        ApexContext::for_params(&SrgParams::new(19, 6, 1, 2)).unwrap()
    }

    #[test]
    fn layout_covers_the_classes() {
        let ctx = ctx19();
        let structure = CycleStructure::new(vec![6, 6]);
        let cycles = lay_out_cycles(&structure, &ctx.labeling);
        assert_eq!(
            cycles,
            vec![vec![3, 7, 11, 4, 8, 12], vec![5, 9, 13, 6, 10, 14]]
        );
        let edges = cycle_edges(&cycles, &ctx.labeling);
        assert_eq!(edges.len(), 12);
        assert_eq!(
            edges[0],
            CycleEdge {
                u: 3,
                v: 7,
                class_pair: (0, 1)
            }
        );
        assert_eq!(
            edges[5],
            CycleEdge {
                u: 12,
                v: 3,
                class_pair: (0, 2)
            }
        );
    }

    #[test]
    fn case_6_6_runs_out_of_apexes() {
        let trace = exhaust_apex_assignments(&CycleStructure::new(vec![6, 6]), &ctx19()).unwrap();
        assert_eq!(trace.completions.len(), 0);
        assert!(!trace.leaves.is_empty());
        assert!(trace
            .leaves
            .iter()
            .any(|l| matches!(l.certificate, Certificate::NoApexAvailable { .. })));
        // every no-apex leaf eliminates all four W vertices
        for leaf in &trace.leaves {
            if let Certificate::NoApexAvailable { eliminations, .. } = &leaf.certificate {
                assert_eq!(eliminations.len(), 4);
            }
        }
    }

    #[test]
    fn case_12_hits_the_mu_cap() {
        let trace = exhaust_apex_assignments(&CycleStructure::new(vec![12]), &ctx19()).unwrap();
        assert_eq!(trace.completions.len(), 0);
        let mu_leaf = trace
            .leaves
            .iter()
            .find_map(|l| match &l.certificate {
                Certificate::MuViolationWithWitnesses { pair, common } => Some((pair, common)),
                _ => None,
            })
            .expect("a W pair with three common neighbors");
        assert_eq!(mu_leaf.1.len(), 3);
    }

    #[test]
    fn paley_scale_structure_is_vacuous() {
        // at (9,4,1,2) W is empty: no cycle edge needs a W apex, so the run
        // records a single empty completion and no contradiction
        let ctx = ApexContext::for_params(&SrgParams::new(9, 4, 1, 2)).unwrap();
        let trace = exhaust_apex_assignments(&CycleStructure::new(vec![6]), &ctx).unwrap();
        assert!(trace.leaves.is_empty());
        assert_eq!(trace.completions.len(), 1);
        assert!(trace.completions[0].assignment.is_empty());
    }

    #[test]
    fn inadmissible_structure_is_rejected() {
        let err = exhaust_apex_assignments(&CycleStructure::new(vec![3, 9]), &ctx19());
        assert!(matches!(
            err,
            Err(ProofError::StructureNotAdmissible { .. })
        ));
    }
}
