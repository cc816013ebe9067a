//! Tri-state adjacency under completion: every unordered pair is an edge, a
//! non-edge, or undecided. Propagation drives the pair states to a fixpoint
//! of the strong-regularity constraints and reports a contradiction as a
//! value, never as a panic. Decisions append to a trail so a branch can be
//! unwound in O(length).

use crate::graph::Graph;
use crate::params::SrgParams;
use serde::Serialize;

/// Outcome of constraint propagation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Propagation {
    Consistent,
    Contradiction(Contradiction),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "reason")]
pub enum Contradiction {
    /// Vertex already has more than k committed edges.
    DegreeOverflow { vertex: usize },
    /// Vertex cannot reach degree k with the pairs still open.
    DegreeUnreachable { vertex: usize },
    /// A pair holds more committed common neighbors than its cap allows.
    CommonOverflow { u: usize, v: usize },
    /// A pair cannot reach its exact common-neighbor count any more.
    CommonUnreachable { u: usize, v: usize },
    /// A pair is forced to be an edge and a non-edge at once.
    PairConflict { u: usize, v: usize },
}

#[derive(Clone)]
pub struct PartialGraph {
    n: usize,
    adj: Vec<u32>,
    non: Vec<u32>,
    trail: Vec<(usize, usize)>,
}

impl PartialGraph {
    pub fn new(n: usize) -> PartialGraph {
        assert!(n <= 32, "the completion search works on u32 rows");
        PartialGraph {
            n,
            adj: vec![0; n],
            // no loops: the diagonal is decided as a non-edge up front
            non: (0..n).map(|v| 1 << v).collect(),
            trail: Vec::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn mask(&self) -> u32 {
        if self.n == 32 {
            u32::MAX
        } else {
            (1 << self.n) - 1
        }
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn is_decided(&self, u: usize, v: usize) -> bool {
        (self.adj[u] | self.non[u]) >> v & 1 == 1
    }

    /// Undecided slots in the row of `v`.
    pub fn undecided_row(&self, v: usize) -> u32 {
        self.mask() & !(self.adj[v] | self.non[v])
    }

    pub fn first_undecided(&self) -> Option<(usize, usize)> {
        for u in 0..self.n {
            let open = self.undecided_row(u) >> (u + 1) << (u + 1);
            if open != 0 {
                return Some((u, open.trailing_zeros() as usize));
            }
        }
        None
    }

    pub fn decided_count(&self) -> usize {
        self.trail.len()
    }

    /// Commits one pair. A decision that contradicts an existing one reports
    /// `PairConflict`; deciding an already-identical pair is a no-op.
    pub fn decide(&mut self, u: usize, v: usize, edge: bool) -> Propagation {
        debug_assert!(u != v && u < self.n && v < self.n);
        if self.is_decided(u, v) {
            return if self.is_edge(u, v) == edge {
                Propagation::Consistent
            } else {
                Propagation::Contradiction(Contradiction::PairConflict { u, v })
            };
        }
        let rows = if edge { &mut self.adj } else { &mut self.non };
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
        self.trail.push((u, v));
        Propagation::Consistent
    }

    /// Snapshot for backtracking: the current trail length.
    pub fn checkpoint(&self) -> usize {
        self.trail.len()
    }

    /// Unwinds every decision made after `checkpoint`.
    pub fn rewind(&mut self, checkpoint: usize) {
        while self.trail.len() > checkpoint {
            let (u, v) = self.trail.pop().expect("trail is long enough");
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
            self.non[u] &= !(1 << v);
            self.non[v] &= !(1 << u);
        }
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    /// Committed common neighbors of a pair.
    pub fn committed_common(&self, u: usize, v: usize) -> usize {
        (self.adj[u] & self.adj[v]).count_ones() as usize
    }

    /// Upper bound on the eventual common-neighbor count of a pair.
    pub fn possible_common(&self, u: usize, v: usize) -> usize {
        let pot_u = self.mask() & !self.non[u];
        let pot_v = self.mask() & !self.non[v];
        (pot_u & pot_v & !(1 << u) & !(1 << v)).count_ones() as usize
    }

    /// Drives the pair states to a fixpoint of the degree and
    /// common-neighbor constraints:
    ///
    /// * a vertex at degree k closes its open pairs, a vertex that needs all
    ///   of them opens none;
    /// * a decided pair at its exact cap forbids further shared neighbors,
    ///   and one that can only just reach its target commits every potential
    ///   shared neighbor;
    /// * an undecided pair whose committed count already exceeds a target is
    ///   forced the other way, and contradiction when both targets are dead.
    pub fn propagate(&mut self, p: &SrgParams) -> Propagation {
        let k = p.k as usize;
        let (lambda, mu) = (p.lambda as usize, p.mu as usize);
        loop {
            let before = self.trail.len();
            for v in 0..self.n {
                let deg = self.degree(v);
                let open = self.undecided_row(v);
                if deg > k {
                    return Propagation::Contradiction(Contradiction::DegreeOverflow { vertex: v });
                }
                if deg + (open.count_ones() as usize) < k {
                    return Propagation::Contradiction(Contradiction::DegreeUnreachable {
                        vertex: v,
                    });
                }
                if deg == k && open != 0 {
                    for w in bits(open) {
                        self.decide(v, w, false);
                    }
                } else if deg + open.count_ones() as usize == k && open != 0 {
                    for w in bits(open) {
                        self.decide(v, w, true);
                    }
                }
            }
            for u in 0..self.n {
                for v in (u + 1)..self.n {
                    let committed = self.committed_common(u, v);
                    let possible = self.possible_common(u, v);
                    if self.is_decided(u, v) {
                        let target = if self.is_edge(u, v) { lambda } else { mu };
                        if committed > target {
                            return Propagation::Contradiction(Contradiction::CommonOverflow {
                                u,
                                v,
                            });
                        }
                        if possible < target {
                            return Propagation::Contradiction(Contradiction::CommonUnreachable {
                                u,
                                v,
                            });
                        }
                        if committed == target {
                            // no further shared neighbor may appear
                            for w in bits(self.adj[u] & self.undecided_row(v)) {
                                self.decide(v, w, false);
                            }
                            for w in bits(self.adj[v] & self.undecided_row(u)) {
                                self.decide(u, w, false);
                            }
                        } else if possible == target {
                            // every potential shared neighbor must materialize
                            let pot =
                                self.mask() & !self.non[u] & !self.non[v] & !(1 << u) & !(1 << v);
                            for w in bits(pot) {
                                if !self.is_decided(u, w) {
                                    self.decide(u, w, true);
                                }
                                if !self.is_decided(v, w) {
                                    self.decide(v, w, true);
                                }
                            }
                        }
                    } else {
                        let edge_dead = committed > lambda || possible < lambda;
                        let non_dead = committed > mu || possible < mu;
                        match (edge_dead, non_dead) {
                            (true, true) => {
                                let reason = if committed > lambda.min(mu) {
                                    Contradiction::CommonOverflow { u, v }
                                } else {
                                    Contradiction::CommonUnreachable { u, v }
                                };
                                return Propagation::Contradiction(reason);
                            }
                            (true, false) => {
                                self.decide(u, v, false);
                            }
                            (false, true) => {
                                self.decide(u, v, true);
                            }
                            (false, false) => {}
                        }
                    }
                }
            }
            if self.trail.len() == before {
                return Propagation::Consistent;
            }
        }
    }

    /// The committed edges as a concrete graph; meaningful once every pair
    /// is decided.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("n <= 32 fits");
        for u in 0..self.n {
            for v in bits(self.adj[u] >> (u + 1) << (u + 1)) {
                g.add_edge(u, v).expect("in range");
            }
        }
        g
    }

    /// Loads a fully decided graph, for consistency checks on fixtures.
    pub fn from_graph(g: &Graph) -> PartialGraph {
        let mut pg = PartialGraph::new(g.n());
        for u in 0..g.n() {
            for v in (u + 1)..g.n() {
                pg.decide(u, v, g.has_edge(u, v));
            }
        }
        pg
    }
}

fn bits(word: u32) -> impl Iterator<Item = usize> {
    let mut bits = word;
    std::iter::from_fn(move || {
        if bits == 0 {
            None
        } else {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(v)
        }
    })
}
