//! Mechanized case analysis showing srg(19,6,1,2) does not exist.
//!
//! The run fixes the canonical labeling (anchor triangle 0,1,2; classes
//! A = 3..6, B = 7..10, C = 11..14; W = 15..18), derives the structure every
//! such graph is forced into — partition sizes (4,4,4,4), an independent W
//! with two neighbors per class per W vertex, cross-class bijections whose
//! edges form cycles of length 6,6 or 12, in-class perfect matchings — and
//! then exhausts the assignment of W apexes to cycle edges in each of the
//! two admissible cycle structures. Every branch terminates in a typed
//! contradiction certificate; zero branches complete, which is the theorem.
//!
//! Fixing labels is sound because every lambda = 1 graph contains a triangle
//! and both the class blocks and the positions of class vertices along the
//! bijection cycles can be renamed freely without changing the isomorphism
//! type; the in-class matchings and the A,B,C-to-W edges are left open and
//! the exhaustion never fixes them. The search oracle cross-checks the same
//! labeling freedom independently at n = 9 and n = 19.

mod apex;
mod partition;
mod replay;
mod structures;
mod trace;

pub use apex::{exhaust_apex_assignments, ApexContext};
pub use partition::{
    abc_bijections, anchor_triangle_count, build_triangle_partition, check_partition_lemmas,
    AbcBijections, LemmaReport, TriangleBookkeeping, TrianglePartition,
};
pub use replay::{replay_trace, ReplayError, ReplaySummary};
pub use structures::{admissible_cycle_structures, raw_cycle_structures, CycleStructure};
pub use trace::{
    Assignment, CaseTrace, Certificate, Completion, DerivedFacts, Elimination, Labeling,
    LeafRecord, ProofTrace, TraceStats,
};

use crate::params::{expected_counts, SrgParams};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProofError {
    #[error(transparent)]
    Graph(#[from] crate::graph::GraphError),
    #[error(transparent)]
    Params(#[from] crate::params::ParamsError),
    #[error("vertices {vertices:?} do not induce a triangle")]
    NotATriangle { vertices: [usize; 3] },
    #[error("vertex {vertex} is adjacent to anchors {anchors:?}, so their classes overlap and the graph is not lambda = 1")]
    ClassesOverlap { vertex: usize, anchors: [usize; 2] },
    #[error("the anchor-triangle counting argument requires lambda = 1, got {params}")]
    LambdaMustBeOne { params: SrgParams },
    #[error("vertex {vertex} has no neighbor in the class of {to_anchor}")]
    MissingCrossNeighbor { vertex: usize, to_anchor: usize },
    #[error("vertex {vertex} has cross-class neighbors {targets:?}; the non-adjacent pair {pair:?} has common neighbors {common:?}")]
    BijectionViolation {
        vertex: usize,
        targets: Vec<usize>,
        pair: [usize; 2],
        common: Vec<usize>,
    },
    #[error("class size {class_size} is out of scope: a 9-cycle would not force a 3-cycle")]
    UnsupportedClassSize { class_size: usize },
    #[error("cycle structure {structure} is not admissible here")]
    StructureNotAdmissible { structure: CycleStructure },
    #[error(
        "apex context requires {required} assignments but the structure has {edges} cycle edges"
    )]
    InconsistentApexContext { required: usize, edges: usize },
}

/// Runs the whole nonexistence proof for srg(19,6,1,2) and assembles the
/// trace: forced structure first, then one exhausted subtree per admissible
/// cycle structure. The two cases run in parallel; the trace is assembled in
/// structure order, so the output does not depend on scheduling.
///
/// If any completion survived (it never does; this is the falsifiability
/// contract), the trace carries it verbatim and `surviving_completions` is
/// nonzero.
pub fn prove_nonexistence_19() -> ProofTrace {
    let params = SrgParams::new(19, 6, 1, 2);
    build_proof_trace(&params).expect("the 19,6,1,2 context is well-formed")
}

fn build_proof_trace(params: &SrgParams) -> Result<ProofTrace, ProofError> {
    let counts = expected_counts(params)?;
    let ctx = ApexContext::for_params(params)?;
    let anchor_triangles = anchor_triangle_count(params)?;
    let w_apex_triangles = counts.partition.3 * counts.triangles_per_vertex;
    let admissible = admissible_cycle_structures(ctx.class_size())?;
    let derived = DerivedFacts {
        partition_sizes: counts.partition,
        total_triangles: counts.triangles,
        anchor_triangles,
        w_apex_triangles,
        triangles_inside_classes: counts.triangles as i64
            - anchor_triangles as i64
            - w_apex_triangles as i64,
        raw_structures: raw_cycle_structures(ctx.class_size()),
        admissible_structures: admissible.clone(),
    };

    let cases: Vec<Result<CaseTrace, ProofError>> = std::thread::scope(|scope| {
        let ctx = &ctx;
        let handles: Vec<_> = admissible
            .iter()
            .map(|structure| scope.spawn(move || exhaust_apex_assignments(structure, ctx)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("case worker never panics"))
            .collect()
    });
    let cases = cases.into_iter().collect::<Result<Vec<_>, _>>()?;

    let mut certificates = std::collections::BTreeMap::new();
    for case in &cases {
        for (kind, count) in case.certificate_histogram() {
            *certificates.entry(kind).or_insert(0) += count;
        }
    }
    let stats = TraceStats {
        nodes_explored: cases.iter().map(|c| c.nodes).sum(),
        leaves: cases.iter().map(|c| c.leaves.len()).sum(),
        certificates,
    };
    Ok(ProofTrace {
        params: *params,
        labeling: ctx.labeling.clone(),
        derived,
        surviving_completions: cases.iter().map(|c| c.surviving_completions()).sum(),
        cases,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_runs_to_zero_completions() {
        let trace = prove_nonexistence_19();
        assert_eq!(trace.surviving_completions, 0);
        assert_eq!(trace.cases.len(), 2, "two top-level cases");
        assert_eq!(trace.cases[0].structure, CycleStructure::new(vec![6, 6]));
        assert_eq!(trace.cases[1].structure, CycleStructure::new(vec![12]));
        assert_eq!(trace.derived.partition_sizes, (4, 4, 4, 4));
        assert_eq!(trace.derived.total_triangles, 19);
        assert_eq!(trace.derived.anchor_triangles, 7);
        assert_eq!(trace.derived.w_apex_triangles, 12);
        assert_eq!(trace.derived.triangles_inside_classes, 0);
        assert!(trace.stats.leaves > 0);
        assert_eq!(
            trace.stats.nodes_explored,
            trace.cases.iter().map(|c| c.nodes).sum::<usize>()
        );
    }

    #[test]
    fn trace_round_trips_through_json() {
        let trace = prove_nonexistence_19();
        let json = trace.to_json();
        let back = ProofTrace::from_json(&json).unwrap();
        assert_eq!(back, trace);
    }
}
