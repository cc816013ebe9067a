//! Undirected simple graphs on at most 62 vertices, stored as one 64-bit
//! adjacency row per vertex. Everything downstream (feasibility checks, the
//! proof engine, the search oracle) consumes this representation.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest order we represent. Keeps graph6 in its short form and every
/// adjacency row in one machine word; all graphs in scope have n <= 19.
pub const MAX_VERTICES: usize = 62;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph order {0} exceeds the supported maximum of {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("operation requires two distinct vertices, got {0} twice")]
    IdenticalVertices(usize),
    #[error("graph has {graph_order} vertices but the parameters claim n = {param_order}")]
    OrderMismatch {
        graph_order: usize,
        param_order: usize,
    },
    #[error("paley graph order {q} is not admissible: {reason}")]
    InadmissiblePaleyOrder { q: u64, reason: &'static str },
}

/// Set of vertices as a 64-bit mask. Iteration is in ascending vertex order.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexSet(pub u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 64);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> VertexSet {
        VertexSet(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
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
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = VertexSet::EMPTY;
        for v in iter {
            set.insert(v);
        }
        set
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Undirected simple graph. Adjacency is kept symmetric and loop-free by
/// construction; rows are immutable for all read operations, so values can be
/// shared freely between threads.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices (`n` may be zero).
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        for v in 0..n {
            g.adj[v] = VertexSet::full(n).0 & !(1u64 << v);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n)?;
        if n >= 3 {
            for v in 0..n {
                g.add_edge(v, (v + 1) % n)?;
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                order: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::IdenticalVertices(u));
        }
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        self.adj[u] &= !(1u64 << v);
        self.adj[v] &= !(1u64 << u);
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|row| row.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Relabels the graph by `perm`, mapping vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::empty(self.n).expect("same order");
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v])
                .expect("permutation stays in range");
        }
        g
    }

    /// Number of common neighbors of two distinct vertices.
    pub fn common_neighbors(&self, u: usize, v: usize) -> Result<usize, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(GraphError::IdenticalVertices(u));
        }
        Ok((self.adj[u] & self.adj[v]).count_ones() as usize)
    }

    /// Number of unordered vertex triples inducing a triangle.
    pub fn triangle_count(&self) -> usize {
        let mut total = 0;
        for u in 0..self.n {
            // neighbors v > u only; each triangle is counted once, at the
            // edge on its two smallest vertices with the third above
            let mut row = self.adj[u] >> (u + 1) << (u + 1);
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                let above_v = if v + 1 >= 64 { 0 } else { !0u64 << (v + 1) };
                total += (self.adj[u] & self.adj[v] & above_v).count_ones() as usize;
            }
        }
        total
    }

    /// Number of triangles containing `v`, i.e. edges inside its neighborhood.
    pub fn triangles_through(&self, v: usize) -> Result<usize, GraphError> {
        self.check_vertex(v)?;
        let nbrs = self.adj[v];
        let mut twice = 0;
        let mut row = nbrs;
        while row != 0 {
            let u = row.trailing_zeros() as usize;
            row &= row - 1;
            twice += (self.adj[u] & nbrs).count_ones() as usize;
        }
        Ok(twice / 2)
    }

    /// Subgraph induced on `s`, relabeled by ascending original index.
    /// Bits of `s` beyond the vertex range are ignored.
    pub fn induced_subgraph(&self, s: VertexSet) -> Graph {
        let members: Vec<usize> = s.intersection(VertexSet::full(self.n)).iter().collect();
        let mut g = Graph::empty(members.len()).expect("subset is no larger");
        for (i, &u) in members.iter().enumerate() {
            for (j, &v) in members.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j).expect("indices in range");
                }
            }
        }
        g
    }

    /// Full strong-regularity check against claimed parameters.
    ///
    /// Every vertex must have degree `k`, adjacent pairs exactly `lambda`
    /// common neighbors and non-adjacent pairs exactly `mu`. A complete graph
    /// has no non-adjacent pair, so any claimed `mu` is vacuously accepted and
    /// the report shows `mu_checked_pairs == 0`.
    pub fn is_strongly_regular(
        &self,
        p: &crate::params::SrgParams,
    ) -> Result<SrgReport, GraphError> {
        if p.n as usize != self.n {
            return Err(GraphError::OrderMismatch {
                graph_order: self.n,
                param_order: p.n as usize,
            });
        }
        let mut report = SrgReport {
            is_srg: true,
            degree_violation: None,
            violating_pair: None,
            mu_checked_pairs: 0,
        };
        for v in 0..self.n {
            let d = self.degree(v);
            if d as u64 != p.k {
                report.is_srg = false;
                report.degree_violation = Some(DegreeViolation {
                    vertex: v,
                    observed: d,
                });
                return Ok(report);
            }
        }
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                let common = (self.adj[u] & self.adj[v]).count_ones() as u64;
                let adjacent = self.has_edge(u, v);
                let expected = if adjacent {
                    p.lambda
                } else {
                    report.mu_checked_pairs += 1;
                    p.mu
                };
                if common != expected {
                    report.is_srg = false;
                    report.violating_pair = Some(PairViolation {
                        u,
                        v,
                        adjacent,
                        observed_common: common as usize,
                        expected: expected as usize,
                    });
                    return Ok(report);
                }
            }
        }
        Ok(report)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Graph(n={}, edges={:?})",
            self.n,
            self.edges().collect::<Vec<_>>()
        )
    }
}

/// Outcome of a strong-regularity check, with a witness for the first failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrgReport {
    pub is_srg: bool,
    pub degree_violation: Option<DegreeViolation>,
    pub violating_pair: Option<PairViolation>,
    /// Non-adjacent pairs examined before the verdict; 0 for complete graphs.
    pub mu_checked_pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeViolation {
    pub vertex: usize,
    pub observed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairViolation {
    pub u: usize,
    pub v: usize,
    pub adjacent: bool,
    pub observed_common: usize,
    pub expected: usize,
}

/// Multiplication table for GF(9) = GF(3)[x]/(x^2+1), elements indexed as
/// a + 3b for a + bx. Only q in {5, 9, 13} is exercised, so a fixed table
/// beats a general finite-field dependency.
const GF9_MUL: [[u8; 9]; 9] = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 2, 3, 4, 5, 6, 7, 8],
    [0, 2, 1, 6, 8, 7, 3, 5, 4],
    [0, 3, 6, 2, 5, 8, 1, 4, 7],
    [0, 4, 8, 5, 6, 1, 7, 2, 3],
    [0, 5, 7, 8, 1, 3, 4, 6, 2],
    [0, 6, 3, 1, 7, 4, 2, 8, 5],
    [0, 7, 5, 4, 2, 6, 8, 3, 1],
    [0, 8, 4, 7, 3, 2, 5, 1, 6],
];

fn gf9_sub(u: usize, v: usize) -> usize {
    let (a1, b1) = (u % 3, u / 3);
    let (a2, b2) = (v % 3, v / 3);
    (a1 + 3 - a2) % 3 + 3 * ((b1 + 3 - b2) % 3)
}

fn is_prime(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Paley graph on `q` vertices: field elements, adjacent when the difference
/// is a nonzero square. Admissible orders are primes q = 1 (mod 4) up to 61,
/// plus the prime power 9 via the fixed GF(9) table.
pub fn paley_graph(q: u64) -> Result<Graph, GraphError> {
    if q == 9 {
        let squares: VertexSet = (1..9).map(|i| GF9_MUL[i][i] as usize).collect();
        let mut g = Graph::empty(9)?;
        for u in 0..9 {
            for v in (u + 1)..9 {
                if squares.contains(gf9_sub(u, v)) {
                    g.add_edge(u, v)?;
                }
            }
        }
        return Ok(g);
    }
    if !is_prime(q) {
        return Err(GraphError::InadmissiblePaleyOrder {
            q,
            reason: "not a prime (9 is the only prime power supported)",
        });
    }
    if q % 4 != 1 {
        return Err(GraphError::InadmissiblePaleyOrder {
            q,
            reason: "not congruent to 1 mod 4, so -1 is a non-residue",
        });
    }
    if q as usize > MAX_VERTICES {
        return Err(GraphError::InadmissiblePaleyOrder {
            q,
            reason: "exceeds the 62-vertex representation limit",
        });
    }
    let n = q as usize;
    let mut residue = vec![false; n];
    for i in 1..n {
        residue[i * i % n] = true;
    }
    let mut g = Graph::empty(n)?;
    for u in 0..n {
        for v in (u + 1)..n {
            if residue[(v - u) % n] {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}
