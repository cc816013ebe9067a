//! Lemma-free exhaustive existence search: complete enumeration of strongly
//! regular graphs with given parameters up to isomorphism, by adjacency
//! completion over the pair variables with constraint propagation.
//!
//! Two symmetry-breaking modes exist and are compared against each other in
//! the tests:
//!
//! * unseeded — only the row-0 canonical prefix (vertex 0's neighbors are
//!   relabeled to 1..k, valid for any regular graph), plus full
//!   canonical-form deduplication at the leaves;
//! * seeded — the anchor-triangle labeling of the proof engine is
//!   pre-committed. For lambda = 1 that is the full block labeling (anchor
//!   0,1,2 with classes in consecutive blocks, sound because the classes of
//!   a lambda = 1 graph are disjoint); for lambda = 0 no triangle exists and
//!   the seed degenerates to the row-0 prefix; for lambda >= 2 classes
//!   overlap, so only the triangle edge 1-2 is added on top of row 0.

mod canon;
mod partial;

pub use canon::canonical_form;
pub use partial::{Contradiction, PartialGraph, Propagation};

use crate::params::{check_identity, SrgParams};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::collections::VecDeque;
use thiserror::Error;

/// Hard ceiling on the search order. Larger instances (the open
/// srg(99,14,1,2) in particular) are refused, not attempted.
pub const MAX_SEARCH_ORDER: u64 = 19;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("order {n} exceeds the n <= {MAX_SEARCH_ORDER} guard; larger searches are refused")]
    OrderAboveGuard { n: u64 },
    #[error("parameters {params} violate the counting identity or basic bounds")]
    InfeasibleParams { params: SrgParams },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub params: SrgParams,
    pub seeded: bool,
    /// Canonical graph6 of every isomorphism class found, sorted.
    pub solutions: Vec<String>,
    pub nodes_explored: u64,
    pub max_depth: usize,
    pub wall_time_ms: u64,
}

struct Searcher<'a> {
    p: &'a SrgParams,
    nodes: u64,
    max_depth: usize,
    solutions: BTreeSet<String>,
}

impl<'a> Searcher<'a> {
    fn new(p: &'a SrgParams) -> Self {
        Searcher {
            p,
            nodes: 0,
            max_depth: 0,
            solutions: BTreeSet::new(),
        }
    }

    fn record_leaf(&mut self, pg: &PartialGraph) {
        let g = pg.to_graph();
        let report = g.is_strongly_regular(self.p).expect("orders match");
        assert!(
            report.is_srg,
            "a completed assignment must satisfy {}",
            self.p
        );
        self.solutions.insert(canonical_form(&g));
    }

    fn dfs(&mut self, pg: &mut PartialGraph, depth: usize) {
        self.nodes += 1;
        self.max_depth = self.max_depth.max(depth);
        if let Propagation::Contradiction(_) = pg.propagate(self.p) {
            return;
        }
        match pg.first_undecided() {
            None => self.record_leaf(pg),
            Some((u, v)) => {
                // edge-first branching on the first open pair in row-major order
                for edge in [true, false] {
                    let mark = pg.checkpoint();
                    pg.decide(u, v, edge);
                    self.dfs(pg, depth + 1);
                    pg.rewind(mark);
                }
            }
        }
    }
}

/// Pre-commits the symmetry-breaking decisions. Returns `false` when the
/// seed itself proves the parameter set empty (a lambda = 1 graph needs
/// room for three disjoint classes of size k-2).
fn apply_seed(pg: &mut PartialGraph, p: &SrgParams, seeded: bool) -> bool {
    let n = p.n as usize;
    let k = p.k as usize;
    // row-0 canonical prefix: any k-regular graph can be relabeled this way
    for v in 1..n {
        pg.decide(0, v, v <= k);
    }
    if !seeded || p.lambda == 0 {
        return true;
    }
    if p.lambda >= 2 {
        // a triangle through vertex 0 exists; fixing one edge inside the
        // neighborhood is all the relabeling freedom left
        pg.decide(1, 2, true);
        return true;
    }
    // lambda = 1: the full anchor-triangle block labeling
    let class = k - 2;
    if n < 3 + 3 * class {
        return false;
    }
    let block = |i: usize| (3 + i * class)..(3 + (i + 1) * class);
    pg.decide(1, 2, true);
    for (anchor, classmates) in [(1usize, block(1)), (2usize, block(2))] {
        for v in 3..n {
            if v != anchor {
                pg.decide(anchor, v, classmates.contains(&v));
            }
        }
    }
    true
}

fn merge(outcomes: Vec<Searcher<'_>>) -> (BTreeSet<String>, u64, usize) {
    let mut solutions = BTreeSet::new();
    let mut nodes = 0;
    let mut depth = 0;
    for s in outcomes {
        solutions.extend(s.solutions);
        nodes += s.nodes;
        depth = depth.max(s.max_depth);
    }
    (solutions, nodes, depth)
}

/// Complete enumeration of srg(p) up to isomorphism. `jobs > 1` distributes
/// top-level branches to a worker pool; results merge by canonical-form set
/// union, so the outcome does not depend on the worker count.
pub fn exhaustive_search(
    p: &SrgParams,
    seeded: bool,
    jobs: usize,
) -> Result<SearchOutcome, SearchError> {
    if p.n > MAX_SEARCH_ORDER {
        return Err(SearchError::OrderAboveGuard { n: p.n });
    }
    if !check_identity(p) || !p.bounds_ok() {
        return Err(SearchError::InfeasibleParams { params: *p });
    }
    let start = std::time::Instant::now();
    let mut root = PartialGraph::new(p.n as usize);
    let feasible = apply_seed(&mut root, p, seeded);
    let depth_offset = root.decided_count();

    let (solutions, nodes, max_depth) = if !feasible {
        (BTreeSet::new(), 0, 0)
    } else if jobs <= 1 {
        let mut searcher = Searcher::new(p);
        searcher.dfs(&mut root, 0);
        let _ = depth_offset;
        merge(vec![searcher])
    } else {
        // expand a frontier of independent subproblems, then farm them out
        let mut expander = Searcher::new(p);
        let mut frontier: VecDeque<(PartialGraph, usize)> = VecDeque::from([(root, 0)]);
        let mut ready: Vec<(PartialGraph, usize)> = Vec::new();
        while let Some((mut pg, depth)) = frontier.pop_front() {
            if frontier.len() + ready.len() >= 4 * jobs {
                ready.push((pg, depth));
                continue;
            }
            expander.nodes += 1;
            expander.max_depth = expander.max_depth.max(depth);
            if let Propagation::Contradiction(_) = pg.propagate(p) {
                continue;
            }
            match pg.first_undecided() {
                None => expander.record_leaf(&pg),
                Some((u, v)) => {
                    for edge in [true, false] {
                        let mut child = pg.clone();
                        child.decide(u, v, edge);
                        frontier.push_back((child, depth + 1));
                    }
                }
            }
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("worker pool builds");
        let workers: Vec<Searcher> = pool.install(|| {
            use rayon::prelude::*;
            ready
                .into_par_iter()
                .map(|(mut pg, depth)| {
                    let mut worker = Searcher::new(p);
                    worker.dfs(&mut pg, depth);
                    worker
                })
                .collect()
        });
        let mut all = vec![expander];
        all.extend(workers);
        merge(all)
    };

    Ok(SearchOutcome {
        params: *p,
        seeded,
        solutions: solutions.into_iter().collect(),
        nodes_explored: nodes,
        max_depth,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{paley_graph, Graph};

    #[test]
    fn paley9_is_the_unique_srg_9_4_1_2() {
        let p = SrgParams::new(9, 4, 1, 2);
        let outcome = exhaustive_search(&p, true, 1).unwrap();
        assert_eq!(outcome.solutions.len(), 1);
        assert_eq!(
            outcome.solutions[0],
            canonical_form(&paley_graph(9).unwrap())
        );
    }

    #[test]
    fn pentagon_is_the_unique_srg_5_2_0_1() {
        let p = SrgParams::new(5, 2, 0, 1);
        let outcome = exhaustive_search(&p, true, 1).unwrap();
        assert_eq!(outcome.solutions.len(), 1);
        assert_eq!(
            outcome.solutions[0],
            canonical_form(&Graph::cycle(5).unwrap())
        );
    }

    #[test]
    fn seeded_root_survives_propagation_at_19() {
        let p = SrgParams::new(19, 6, 1, 2);
        let mut pg = PartialGraph::new(19);
        assert!(apply_seed(&mut pg, &p, true));
        assert_eq!(pg.propagate(&p), Propagation::Consistent);
        assert!(pg.first_undecided().is_some());
    }

    #[test]
    fn guard_refuses_large_orders() {
        let err = exhaustive_search(&SrgParams::new(99, 14, 1, 2), true, 1).unwrap_err();
        assert_eq!(err, SearchError::OrderAboveGuard { n: 99 });
    }

    #[test]
    fn identity_violations_are_refused() {
        let err = exhaustive_search(&SrgParams::new(19, 6, 1, 3), true, 1).unwrap_err();
        assert!(matches!(err, SearchError::InfeasibleParams { .. }));
    }

    #[test]
    fn worker_pool_matches_single_thread() {
        let p = SrgParams::new(9, 4, 1, 2);
        let single = exhaustive_search(&p, false, 1).unwrap();
        let pooled = exhaustive_search(&p, false, 3).unwrap();
        assert_eq!(single.solutions, pooled.solutions);
    }
}
