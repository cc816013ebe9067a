//! Fixtures shared by the integration suites.
#![allow(dead_code)] // each suite uses its own subset

use srg_core::{Graph, SrgParams};

pub fn petersen() -> Graph {
    Graph::from_edges(
        10,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 0),
            (5, 7),
            (7, 9),
            (9, 6),
            (6, 8),
            (8, 5),
            (0, 5),
            (1, 6),
            (2, 7),
            (3, 8),
            (4, 9),
        ],
    )
    .expect("fixture is well-formed")
}

/// The five reference graphs with their parameters.
pub fn reference_srgs() -> Vec<(&'static str, Graph, SrgParams)> {
    vec![
        (
            "K3",
            Graph::complete(3).unwrap(),
            SrgParams::new(3, 2, 1, 2),
        ),
        ("C5", Graph::cycle(5).unwrap(), SrgParams::new(5, 2, 0, 1)),
        (
            "Paley(9)",
            srg_core::paley_graph(9).unwrap(),
            SrgParams::new(9, 4, 1, 2),
        ),
        (
            "Paley(13)",
            srg_core::paley_graph(13).unwrap(),
            SrgParams::new(13, 6, 2, 3),
        ),
        ("Petersen", petersen(), SrgParams::new(10, 3, 0, 1)),
    ]
}

/// Brute-force triangle enumeration, independent of the bitset counters.
pub fn triangles_by_enumeration(g: &Graph) -> usize {
    let n = g.n();
    let mut count = 0;
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// All triangles of a graph as ordered triples a < b < c.
pub fn all_triangles(g: &Graph) -> Vec<[usize; 3]> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}
