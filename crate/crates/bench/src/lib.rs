//! Shared fixtures for the benchmark targets.

use srg_core::{paley_graph, Graph};

pub fn paley13() -> Graph {
    paley_graph(13).expect("13 is admissible")
}

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
