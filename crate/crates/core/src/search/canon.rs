//! Canonical labeling by iterative partition refinement with backtracking
//! over the refinement-minimal labelings. Equal canonical strings certify
//! isomorphism; the graph6 line of the relabeled graph doubles as the
//! canonical form because its body is the upper-triangle bit stream.

use crate::graph::Graph;
use crate::graph6::to_graph6;

/// Ordered partition of the vertices into cells; refinement keeps it
/// equitable (every vertex in a cell sees the same cell-degree vector).
type Partition = Vec<Vec<usize>>;

/// Initial cells grouped by degree, ascending.
fn degree_partition(g: &Graph) -> Partition {
    let mut by_degree: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for v in g.vertices() {
        by_degree.entry(g.degree(v)).or_default().push(v);
    }
    by_degree.into_values().collect()
}

/// One-dimensional Weisfeiler-Leman refinement: split cells by the vector of
/// neighbor counts into every cell, until stable. Cell order is inherited
/// from the split key so the refinement is isomorphism-invariant.
fn refine(g: &Graph, mut cells: Partition) -> Partition {
    loop {
        let mut changed = false;
        let mut next: Partition = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut by_signature: std::collections::BTreeMap<Vec<usize>, Vec<usize>> =
                Default::default();
            for &v in cell {
                let signature: Vec<usize> = cells
                    .iter()
                    .map(|other| other.iter().filter(|&&u| g.has_edge(v, u)).count())
                    .collect();
                by_signature.entry(signature).or_default().push(v);
            }
            if by_signature.len() > 1 {
                changed = true;
            }
            next.extend(by_signature.into_values());
        }
        cells = next;
        if !changed {
            return cells;
        }
    }
}

fn label_string(g: &Graph, cells: &Partition) -> String {
    let mut perm = vec![0usize; g.n()];
    for (position, cell) in cells.iter().enumerate() {
        perm[cell[0]] = position;
    }
    to_graph6(&g.permuted(&perm))
}

fn search_minimum(g: &Graph, cells: Partition, best: &mut Option<String>) {
    let cells = refine(g, cells);
    match cells.iter().position(|cell| cell.len() > 1) {
        None => {
            let candidate = label_string(g, &cells);
            if best.as_ref().is_none_or(|b| candidate < *b) {
                *best = Some(candidate);
            }
        }
        Some(target) => {
            // individualize every vertex of the first non-singleton cell
            for &v in &cells[target] {
                let mut split = Vec::with_capacity(cells.len() + 1);
                for (i, cell) in cells.iter().enumerate() {
                    if i == target {
                        split.push(vec![v]);
                        split.push(cell.iter().copied().filter(|&u| u != v).collect());
                    } else {
                        split.push(cell.clone());
                    }
                }
                search_minimum(g, split, best);
            }
        }
    }
}

/// Canonical graph6 string: minimal over all labelings reachable by
/// refinement and individualization. Two graphs are isomorphic exactly when
/// their canonical forms are equal.
pub fn canonical_form(g: &Graph) -> String {
    let n = g.n();
    // complete and empty graphs read the same under every labeling, and
    // refinement cannot split them, so skip the factorial search
    if n <= 1 || g.edge_count() == 0 || g.edge_count() == n * (n - 1) / 2 {
        return to_graph6(g);
    }
    let mut best = None;
    search_minimum(g, degree_partition(g), &mut best);
    best.expect("at least one labeling is explored")
}
