//! Cycle structures of the tripartite 2-regular graph formed by the
//! cross-class bijection edges: multisets of cycle lengths, every length a
//! multiple of 3 because cycles alternate A -> B -> C.

use super::ProofError;
use serde::{Deserialize, Serialize};

/// Multiset of cycle lengths, stored ascending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CycleStructure(pub Vec<usize>);

impl CycleStructure {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable();
        CycleStructure(parts)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn contains_part(&self, part: usize) -> bool {
        self.0.contains(&part)
    }
}

impl std::fmt::Display for CycleStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, part) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{part}")?;
        }
        write!(f, ")")
    }
}

/// All multisets of multiples of 3 summing to 3 * class_size, ascending
/// lexicographically: for class_size 4 these are (3,3,3,3), (3,3,6), (3,9),
/// (6,6), (12).
pub fn raw_cycle_structures(class_size: usize) -> Vec<CycleStructure> {
    fn extend(
        remaining: usize,
        min_part: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<CycleStructure>,
    ) {
        if remaining == 0 {
            out.push(CycleStructure(prefix.clone()));
            return;
        }
        let mut part = min_part;
        while part <= remaining {
            prefix.push(part);
            extend(remaining - part, part, prefix, out);
            prefix.pop();
            part += 3;
        }
    }
    let mut out = Vec::new();
    extend(3 * class_size, 3, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Structures that can occur when the induced subgraph on the three classes
/// is triangle-free: a 3-cycle of bijection edges is itself a triangle, and a
/// 9-cycle is excluded because its complement inside the classes closes into
/// a 3-cycle. The 9-part filter is only sound while every raw structure with
/// a 9 also carries a 3; class sizes where that fails are out of scope.
pub fn admissible_cycle_structures(class_size: usize) -> Result<Vec<CycleStructure>, ProofError> {
    let raw = raw_cycle_structures(class_size);
    for structure in &raw {
        if structure.contains_part(9) && !structure.contains_part(3) {
            return Err(ProofError::UnsupportedClassSize { class_size });
        }
    }
    Ok(raw
        .into_iter()
        .filter(|s| !s.contains_part(3) && !s.contains_part(9))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn raw_list_for_class_size_4() {
        let raw = raw_cycle_structures(4);
        assert_eq!(raw.len(), 5);
        assert_eq!(
            raw,
            vec![
                CycleStructure(vec![3, 3, 3, 3]),
                CycleStructure(vec![3, 3, 6]),
                CycleStructure(vec![3, 9]),
                CycleStructure(vec![6, 6]),
                CycleStructure(vec![12]),
            ]
        );
    }

    #[test]
    fn admissible_for_class_size_4() {
        let admissible = admissible_cycle_structures(4).unwrap();
        assert_eq!(
            admissible,
            vec![CycleStructure(vec![6, 6]), CycleStructure(vec![12])]
        );
    }

    #[test]
    fn admissible_for_class_size_2() {
        // partitions of 6 into multiples of 3, minus those containing a 3
        assert_eq!(
            admissible_cycle_structures(2).unwrap(),
            vec![CycleStructure(vec![6])]
        );
    }

    #[test]
    fn class_sizes_where_the_nine_filter_is_unjustified() {
        // 9 alone (class size 3) and 9 + 6 (class size 5) contain a 9-cycle
        // without a 3-cycle, so the exclusion argument does not transfer
        assert!(matches!(
            admissible_cycle_structures(3),
            Err(ProofError::UnsupportedClassSize { class_size: 3 })
        ));
        assert!(matches!(
            admissible_cycle_structures(5),
            Err(ProofError::UnsupportedClassSize { class_size: 5 })
        ));
    }
}
