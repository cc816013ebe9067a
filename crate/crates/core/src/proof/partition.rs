//! The triangle-anchored partition: an anchor triangle {a,b,c}, the classes
//! A, B, C of remaining neighbors of each anchor vertex, and the distance-2
//! set W. Under lambda = 1 the classes are disjoint and the partition carries
//! the whole structure of the graph; each lemma here isolates one forced
//! property and reports concrete witnesses when it fails.

use super::{CycleStructure, ProofError};
use crate::graph::{Graph, VertexSet};
use crate::params::{expected_counts, SrgParams};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrianglePartition {
    pub anchor: [usize; 3],
    pub class_a: Vec<usize>,
    pub class_b: Vec<usize>,
    pub class_c: Vec<usize>,
    pub w: Vec<usize>,
}

impl TrianglePartition {
    pub fn classes(&self) -> [&[usize]; 3] {
        [&self.class_a, &self.class_b, &self.class_c]
    }

    pub fn class_union(&self) -> VertexSet {
        self.classes()
            .iter()
            .flat_map(|c| c.iter().copied())
            .collect()
    }

    pub fn w_set(&self) -> VertexSet {
        self.w.iter().copied().collect()
    }
}

/// Builds the partition anchored at the triangle {a,b,c}. Errs when the
/// three vertices do not induce a triangle, or when two classes overlap,
/// which witnesses an adjacent pair with two common neighbors and therefore
/// a graph that is not lambda = 1.
pub fn build_triangle_partition(
    g: &Graph,
    a: usize,
    b: usize,
    c: usize,
) -> Result<TrianglePartition, ProofError> {
    for &v in &[a, b, c] {
        if v >= g.n() {
            return Err(ProofError::Graph(
                crate::graph::GraphError::VertexOutOfRange {
                    vertex: v,
                    order: g.n(),
                },
            ));
        }
    }
    if a == b || b == c || a == c || !(g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
        return Err(ProofError::NotATriangle {
            vertices: [a, b, c],
        });
    }
    let anchor: VertexSet = [a, b, c].into_iter().collect();
    let class_sets = [
        g.neighbors(a).difference(anchor),
        g.neighbors(b).difference(anchor),
        g.neighbors(c).difference(anchor),
    ];
    for i in 0..3 {
        for j in (i + 1)..3 {
            let overlap = class_sets[i].intersection(class_sets[j]);
            if let Some(vertex) = overlap.iter().next() {
                return Err(ProofError::ClassesOverlap {
                    vertex,
                    anchors: [[a, b, c][i], [a, b, c][j]],
                });
            }
        }
    }
    let covered = anchor
        .union(class_sets[0])
        .union(class_sets[1])
        .union(class_sets[2]);
    let w = VertexSet::full(g.n()).difference(covered);
    Ok(TrianglePartition {
        anchor: [a, b, c],
        class_a: class_sets[0].iter().collect(),
        class_b: class_sets[1].iter().collect(),
        class_c: class_sets[2].iter().collect(),
        w: w.iter().collect(),
    })
}

/// Triangles with at least one vertex on the anchor triangle of a lambda = 1
/// graph: each anchor vertex lies in k*lambda/2 triangles and any two anchor
/// vertices share only the anchor triangle itself, which is counted three
/// times, so the union has 3*(k*lambda/2) - 2 members.
pub fn anchor_triangle_count(p: &SrgParams) -> Result<u64, ProofError> {
    if p.lambda != 1 {
        return Err(ProofError::LambdaMustBeOne { params: *p });
    }
    Ok(3 * (p.k * p.lambda / 2) - 2)
}

/// Two-route triangle bookkeeping around a partition: the direct count of
/// triangles induced inside A + B + C against the counting route
/// total - through-anchor - W-apex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleBookkeeping {
    pub total: u64,
    pub through_anchor: u64,
    pub with_w_apex: u64,
    pub inside_classes_direct: u64,
    pub inside_classes_counted: i64,
    pub routes_agree: bool,
}

/// Outcome of the partition lemma checks. `failures` holds one line per
/// violated lemma with its witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub class_sizes_match: bool,
    pub w_is_independent: bool,
    pub w_class_quotas_hold: bool,
    pub in_class_matchings_hold: bool,
    pub bookkeeping: TriangleBookkeeping,
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.class_sizes_match
            && self.w_is_independent
            && self.w_class_quotas_hold
            && self.in_class_matchings_hold
            && self.bookkeeping.routes_agree
    }
}

/// Checks the five partition lemmas on a concrete graph:
/// (1) class cardinalities match the expected (k-2, k-2, k-2, rest);
/// (2) W induces no edge;
/// (3) every w in W has exactly mu neighbors in each class;
/// (4) every class vertex has exactly one neighbor inside its own class;
/// (5) the direct count of triangles inside the classes agrees with
///     total - anchor-count - |W| * (k*lambda/2).
pub fn check_partition_lemmas(
    g: &Graph,
    part: &TrianglePartition,
    p: &SrgParams,
) -> Result<LemmaReport, ProofError> {
    let counts = expected_counts(p)?;
    let mut failures = Vec::new();

    let observed = (
        part.class_a.len() as u64,
        part.class_b.len() as u64,
        part.class_c.len() as u64,
        part.w.len() as u64,
    );
    let class_sizes_match = observed == counts.partition;
    if !class_sizes_match {
        failures.push(format!(
            "class sizes {observed:?} differ from expected {:?}",
            counts.partition
        ));
    }

    let w_set = part.w_set();
    let mut w_is_independent = true;
    for &w in &part.w {
        let inside = g.neighbors(w).intersection(w_set);
        if !inside.is_empty() {
            w_is_independent = false;
            failures.push(format!("W is not independent: {w} ~ {:?}", inside));
            break;
        }
    }

    let mut w_class_quotas_hold = true;
    'quota: for &w in &part.w {
        for (class, &anchor) in part.classes().into_iter().zip(&part.anchor) {
            let class_set: VertexSet = class.iter().copied().collect();
            let hits = g.neighbors(w).intersection(class_set).len() as u64;
            if hits != p.mu {
                w_class_quotas_hold = false;
                failures.push(format!(
                    "w = {w} has {hits} neighbors in the class of {anchor}, expected {}",
                    p.mu
                ));
                break 'quota;
            }
        }
    }

    let mut in_class_matchings_hold = true;
    'matching: for class in part.classes() {
        let class_set: VertexSet = class.iter().copied().collect();
        for &v in class {
            let inside = g.neighbors(v).intersection(class_set).len();
            if inside != 1 {
                in_class_matchings_hold = false;
                failures.push(format!(
                    "{v} has {inside} neighbors inside its own class, expected a perfect matching"
                ));
                break 'matching;
            }
        }
    }

    let total = g.triangle_count() as u64;
    let through_anchor = anchor_triangle_count(p)?;
    let with_w_apex = part.w.len() as u64 * counts.triangles_per_vertex;
    let inside_classes_direct = g.induced_subgraph(part.class_union()).triangle_count() as u64;
    let inside_classes_counted = total as i64 - through_anchor as i64 - with_w_apex as i64;
    let routes_agree = inside_classes_counted == inside_classes_direct as i64;
    if !routes_agree {
        failures.push(format!(
            "triangle bookkeeping disagrees: direct {inside_classes_direct}, counted {inside_classes_counted}"
        ));
    }

    Ok(LemmaReport {
        class_sizes_match,
        w_is_independent,
        w_class_quotas_hold,
        in_class_matchings_hold,
        bookkeeping: TriangleBookkeeping {
            total,
            through_anchor,
            with_w_apex,
            inside_classes_direct,
            inside_classes_counted,
            routes_agree,
        },
        failures,
    })
}

/// The three cross-class adjacency maps, as index maps between the sorted
/// class vectors: `a_to_b[i] = j` means the i-th vertex of A is adjacent to
/// the j-th vertex of B.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbcBijections {
    pub a_to_b: Vec<usize>,
    pub b_to_c: Vec<usize>,
    pub c_to_a: Vec<usize>,
}

impl AbcBijections {
    /// The composition A -> B -> C -> A as a permutation of A positions.
    pub fn composition(&self) -> Vec<usize> {
        self.a_to_b
            .iter()
            .map(|&b| self.c_to_a[self.b_to_c[b]])
            .collect()
    }

    /// Cycle type of the composition scaled by 3: each composition cycle of
    /// length m corresponds to a closed walk of 3m bijection edges.
    pub fn cycle_structure(&self) -> CycleStructure {
        let perm = self.composition();
        let mut seen = vec![false; perm.len()];
        let mut parts = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                at = perm[at];
                len += 1;
            }
            parts.push(3 * len);
        }
        CycleStructure::new(parts)
    }
}

fn cross_map(
    g: &Graph,
    from: &[usize],
    to: &[usize],
    from_anchor: usize,
    to_anchor: usize,
) -> Result<Vec<usize>, ProofError> {
    let to_set: VertexSet = to.iter().copied().collect();
    let mut map = vec![usize::MAX; from.len()];
    let mut hit = vec![false; to.len()];
    for (i, &v) in from.iter().enumerate() {
        let targets: Vec<usize> = g.neighbors(v).intersection(to_set).iter().collect();
        match targets.len() {
            0 => {
                return Err(ProofError::MissingCrossNeighbor {
                    vertex: v,
                    to_anchor,
                });
            }
            1 => {
                let j = to
                    .iter()
                    .position(|&t| t == targets[0])
                    .expect("member of to");
                if hit[j] {
                    // two sources share one image: the image and the opposite
                    // anchor are a non-adjacent pair with three common neighbors
                    let image = to[j];
                    let common: Vec<usize> = g
                        .neighbors(image)
                        .intersection(g.neighbors(from_anchor))
                        .iter()
                        .collect();
                    return Err(ProofError::BijectionViolation {
                        vertex: image,
                        targets: g
                            .neighbors(image)
                            .intersection(from.iter().copied().collect())
                            .iter()
                            .collect(),
                        pair: [image, from_anchor],
                        common,
                    });
                }
                hit[j] = true;
                map[i] = j;
            }
            _ => {
                // v and the target class anchor are non-adjacent with three
                // common neighbors: the shared anchor plus both targets
                let common: Vec<usize> = g
                    .neighbors(v)
                    .intersection(g.neighbors(to_anchor))
                    .iter()
                    .collect();
                return Err(ProofError::BijectionViolation {
                    vertex: v,
                    targets,
                    pair: [v, to_anchor],
                    common,
                });
            }
        }
    }
    Ok(map)
}

/// Derives the three cross-class bijections of a lambda = 1 partition.
/// Uniqueness of each image follows from mu = 2 on the non-adjacent pair
/// (vertex, opposite anchor); a vertex with zero or two cross-class
/// neighbors yields a violation report naming that pair and its common
/// neighbors.
pub fn abc_bijections(g: &Graph, part: &TrianglePartition) -> Result<AbcBijections, ProofError> {
    let [a, b, c] = part.anchor;
    Ok(AbcBijections {
        a_to_b: cross_map(g, &part.class_a, &part.class_b, a, b)?,
        b_to_c: cross_map(g, &part.class_b, &part.class_c, b, c)?,
        c_to_a: cross_map(g, &part.class_c, &part.class_a, c, a)?,
    })
}
