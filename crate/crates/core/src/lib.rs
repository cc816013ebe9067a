//! Toolkit for strongly regular graphs srg(n, k, lambda, mu).
//!
//! Three independent evidence paths are provided for existence questions in
//! the small-parameter regime:
//!
//! * [`params`] — exact integer spectral feasibility: the multiplicities of
//!   the two non-principal eigenvalues must be non-negative integers, which
//!   already rules out srg(19,6,1,2).
//! * [`proof`] — a mechanized combinatorial case analysis that re-derives the
//!   nonexistence of srg(19,6,1,2) without spectral arguments, emitting a
//!   machine-checkable trace whose every leaf carries a replayable
//!   contradiction certificate.
//! * [`search`] — a lemma-free exhaustive search oracle that enumerates all
//!   strongly regular graphs with given parameters (n <= 19) up to
//!   isomorphism by adjacency completion with constraint propagation.
//!
//! [`graph`] and [`graph6`] supply the shared graph representation and the
//! text serialization the three paths exchange.

pub mod graph;
pub mod graph6;
pub mod params;
pub mod proof;
pub mod search;

pub use graph::{paley_graph, Graph, GraphError, SrgReport, VertexSet, MAX_VERTICES};
pub use graph6::{parse_graph6, to_graph6, Graph6Error};
pub use params::{
    check_identity, enumerate_family, expected_counts, family_order, integrality_test, spectrum_of,
    Eigenvalue, ExpectedCounts, FeasibilityReason, FeasibilityVerdict, ParamsError, Spectrum,
    SrgParams,
};
pub use proof::{
    abc_bijections, admissible_cycle_structures, anchor_triangle_count, build_triangle_partition,
    check_partition_lemmas, exhaust_apex_assignments, prove_nonexistence_19, replay_trace,
    AbcBijections, ApexContext, Certificate, CycleStructure, LemmaReport, ProofError, ProofTrace,
    TrianglePartition,
};
pub use search::{
    canonical_form, exhaustive_search, PartialGraph, Propagation, SearchError, SearchOutcome,
};
