//! Serializable case-analysis traces. A trace is the whole proof object:
//! the fixed labeling, the facts forced by counting, and one subtree per
//! admissible cycle structure in which every leaf carries a contradiction
//! certificate that can be replayed against nothing but graph primitives.

use super::CycleStructure;
use crate::params::SrgParams;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// The fixed vertex labeling: anchor triangle first, then the three
/// neighbor classes, then the distance-2 set W.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Labeling {
    pub anchor: [usize; 3],
    pub class_a: Vec<usize>,
    pub class_b: Vec<usize>,
    pub class_c: Vec<usize>,
    pub class_w: Vec<usize>,
}

impl Labeling {
    /// Canonical labeling for parameters with lambda = 1: anchor 0,1,2,
    /// classes in consecutive blocks of k-2, W last. Fixing labels is sound
    /// because the partition exists for every triangle and relabeling is free
    /// up to isomorphism.
    pub fn canonical(class_size: usize, w_size: usize) -> Labeling {
        let block = |start: usize, len: usize| (start..start + len).collect::<Vec<_>>();
        Labeling {
            anchor: [0, 1, 2],
            class_a: block(3, class_size),
            class_b: block(3 + class_size, class_size),
            class_c: block(3 + 2 * class_size, class_size),
            class_w: block(3 + 3 * class_size, w_size),
        }
    }

    pub fn order(&self) -> usize {
        3 + self.class_a.len() + self.class_b.len() + self.class_c.len() + self.class_w.len()
    }

    /// Which of A, B, C a vertex belongs to, if any.
    pub fn class_of(&self, v: usize) -> Option<usize> {
        [&self.class_a, &self.class_b, &self.class_c]
            .iter()
            .position(|class| class.contains(&v))
    }

    pub fn is_w(&self, v: usize) -> bool {
        self.class_w.contains(&v)
    }
}

/// Quantities forced before any branching happens.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedFacts {
    pub partition_sizes: (u64, u64, u64, u64),
    pub total_triangles: u64,
    pub anchor_triangles: u64,
    pub w_apex_triangles: u64,
    /// total - anchor - W-apex; zero means the classes induce no triangle.
    pub triangles_inside_classes: i64,
    pub raw_structures: Vec<CycleStructure>,
    pub admissible_structures: Vec<CycleStructure>,
}

/// One apex assignment: cycle edge (by index into the case edge list) to a
/// W vertex (by label).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub edge: usize,
    pub apex: usize,
}

/// Contradiction certificates. Witnesses are concrete vertices; replaying a
/// certificate re-derives the violated count from the partial adjacency the
/// leaf's path builds. Serializes as `{kind, witnesses}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "witnesses", rename_all = "snake_case")]
pub enum Certificate {
    /// The edge lies in both triangles, so its endpoints are an adjacent
    /// pair with two common neighbors, impossible under lambda = 1.
    EdgeInTwoTriangles {
        edge: [usize; 2],
        first: [usize; 3],
        second: [usize; 3],
    },
    /// More triangles through `vertex` than k*lambda/2 allows.
    VertexExceedsThreeTriangles {
        vertex: usize,
        triangles: Vec<[usize; 3]>,
    },
    /// A non-adjacent W pair with more than mu common neighbors.
    MuViolationWithWitnesses {
        pair: [usize; 2],
        common: Vec<usize>,
    },
    /// The listed cycle edges give `w` more than mu neighbors in one class
    /// (two edges with the same class pair already overflow on completion).
    WAdjacencyQuotaViolation { w: usize, edges: Vec<[usize; 2]> },
    /// Every W vertex is eliminated for this cycle edge; one sub-certificate
    /// per candidate records why.
    NoApexAvailable {
        edge: [usize; 2],
        eliminations: Vec<Elimination>,
    },
}

impl Certificate {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Certificate::EdgeInTwoTriangles { .. } => "edge_in_two_triangles",
            Certificate::VertexExceedsThreeTriangles { .. } => "vertex_exceeds_three_triangles",
            Certificate::MuViolationWithWitnesses { .. } => "mu_violation_with_witnesses",
            Certificate::WAdjacencyQuotaViolation { .. } => "w_adjacency_quota_violation",
            Certificate::NoApexAvailable { .. } => "no_apex_available",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    pub apex: usize,
    pub reason: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafRecord {
    pub path: Vec<Assignment>,
    pub certificate: Certificate,
}

/// An apex assignment that survived every constraint. Never produced for
/// srg(19,6,1,2); carried so that a falsified run reports its counterexample
/// structure verbatim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Completion {
    pub assignment: Vec<Assignment>,
    /// graph6 of the decided edges (in-class matchings stay undetermined).
    pub decided_edges_graph6: String,
}

/// Search record for one cycle structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseTrace {
    pub structure: CycleStructure,
    /// Vertices along each cycle; consecutive (wrapping) pairs are the edges.
    pub cycles: Vec<Vec<usize>>,
    /// Cycle edges in assignment order.
    pub edges: Vec<[usize; 2]>,
    pub nodes: usize,
    pub leaves: Vec<LeafRecord>,
    pub completions: Vec<Completion>,
}

impl CaseTrace {
    pub fn surviving_completions(&self) -> usize {
        self.completions.len()
    }

    pub fn certificate_histogram(&self) -> BTreeMap<String, usize> {
        let mut hist = BTreeMap::new();
        for leaf in &self.leaves {
            *hist
                .entry(leaf.certificate.kind_name().to_string())
                .or_insert(0) += 1;
        }
        hist
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStats {
    pub nodes_explored: usize,
    pub leaves: usize,
    pub certificates: BTreeMap<String, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub params: SrgParams,
    pub labeling: Labeling,
    pub derived: DerivedFacts,
    pub cases: Vec<CaseTrace>,
    pub surviving_completions: usize,
    pub stats: TraceStats,
}

impl ProofTrace {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<ProofTrace, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_labeling_blocks() {
        let lab = Labeling::canonical(4, 4);
        assert_eq!(lab.anchor, [0, 1, 2]);
        assert_eq!(lab.class_a, vec![3, 4, 5, 6]);
        assert_eq!(lab.class_b, vec![7, 8, 9, 10]);
        assert_eq!(lab.class_c, vec![11, 12, 13, 14]);
        assert_eq!(lab.class_w, vec![15, 16, 17, 18]);
        assert_eq!(lab.order(), 19);
        assert_eq!(lab.class_of(5), Some(0));
        assert_eq!(lab.class_of(14), Some(2));
        assert_eq!(lab.class_of(16), None);
        assert!(lab.is_w(16));
    }

    #[test]
    fn certificate_serialization_shape() {
        let cert = Certificate::MuViolationWithWitnesses {
            pair: [15, 18],
            common: vec![3, 8, 13],
        };
        let json = serde_json::to_string(&cert).unwrap();
        assert!(json.contains("\"kind\":\"mu_violation_with_witnesses\""));
        assert!(json.contains("\"witnesses\":{\"pair\":[15,18],\"common\":[3,8,13]}"));
        let back: Certificate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, cert);
    }
}
