//! Workloads shared by the benchmarks.

use dimon_core::presentation::{build_relations, Presentation, RelationFamilyId};

/// The presentations timed by the enumeration benchmark, smallest first.
pub fn enumeration_cases(n: u32) -> Vec<Presentation> {
    RelationFamilyId::ALL
        .iter()
        .map(|&f| build_relations(f, n).expect("n >= 4"))
        .collect()
}
