//! Independent reference constructions used by the integration tests.
//!
//! Maps are plain `Vec<(u32, u32)>` pair lists built from explicit dihedral
//! formulas and filtered by direct checks on image sequences; nothing here
//! goes through the library's composition or closure code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use dimon_core::iperm::PartialPerm;
use dimon_core::monoid::{FiniteMonoid, MonoidFamily};

pub type Pairs = Vec<(u32, u32)>;

/// The `2n` permutations of the dihedral group as image vectors, tagged
/// with whether they are rotations.
pub fn dihedral(n: u32) -> Vec<(Vec<u32>, bool)> {
    let mut out = Vec::new();
    for k in 0..n {
        out.push(((1..=n).map(|i| (i - 1 + k) % n + 1).collect(), true));
        out.push(((1..=n).map(|i| (2 * n + k - i) % n + 1).collect(), false));
    }
    out
}

fn circular_descents(seq: &[u32]) -> usize {
    (0..seq.len())
        .filter(|&i| seq[i] > seq[(i + 1) % seq.len()])
        .count()
}

fn circular_ascents(seq: &[u32]) -> usize {
    (0..seq.len())
        .filter(|&i| seq[i] < seq[(i + 1) % seq.len()])
        .count()
}

pub fn increasing(seq: &[u32]) -> bool {
    seq.windows(2).all(|w| w[0] < w[1])
}

pub fn decreasing(seq: &[u32]) -> bool {
    seq.windows(2).all(|w| w[0] > w[1])
}

pub fn cyclic(seq: &[u32]) -> bool {
    seq.len() <= 1 || circular_descents(seq) <= 1
}

pub fn anti_cyclic(seq: &[u32]) -> bool {
    seq.len() <= 1 || circular_ascents(seq) <= 1
}

/// Every restriction of a dihedral permutation, tagged with whether some
/// rotation restricts to it.
fn restrictions(n: u32) -> Vec<(Pairs, bool)> {
    let mut seen: BTreeSet<Pairs> = BTreeSet::new();
    let mut rotations: BTreeSet<Pairs> = BTreeSet::new();
    for (perm, is_rotation) in dihedral(n) {
        for mask in 0u32..(1 << n) {
            let pairs: Pairs = (1..=n)
                .filter(|i| mask & (1 << (i - 1)) != 0)
                .map(|i| (i, perm[i as usize - 1]))
                .collect();
            if is_rotation {
                rotations.insert(pairs.clone());
            }
            seen.insert(pairs);
        }
    }
    seen.into_iter()
        .map(|p| {
            let r = rotations.contains(&p);
            (p, r)
        })
        .collect()
}

/// Reference element set of a family, by brute force.
pub fn family_elements(family: MonoidFamily, n: u32) -> BTreeSet<Pairs> {
    restrictions(n)
        .into_iter()
        .filter(|(pairs, rotation)| {
            let seq: Vec<u32> = pairs.iter().map(|&(_, b)| b).collect();
            match family {
                MonoidFamily::DI => true,
                MonoidFamily::ODI => increasing(&seq),
                MonoidFamily::MDI => increasing(&seq) || decreasing(&seq),
                MonoidFamily::OPDI => cyclic(&seq),
                MonoidFamily::CI => *rotation,
                MonoidFamily::OCI => *rotation && increasing(&seq),
                MonoidFamily::DihedralGroup => pairs.len() == n as usize,
                MonoidFamily::CyclicGroup => pairs.len() == n as usize && *rotation,
            }
        })
        .map(|(p, _)| p)
        .collect()
}

pub fn family_size(family: MonoidFamily, n: u32) -> usize {
    family_elements(family, n).len()
}

pub fn pairs_of(f: &PartialPerm) -> Pairs {
    f.pairs().collect()
}

pub fn element_pairs(m: &FiniteMonoid) -> BTreeSet<Pairs> {
    m.elements().iter().map(pairs_of).collect()
}

pub fn perm(n: u32, pairs: &[(u32, u32)]) -> PartialPerm {
    PartialPerm::from_pairs(n, pairs.iter().copied()).expect("valid pairs")
}

/// `(-1)^n`
pub fn sign(n: u32) -> i64 {
    if n.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Whether `pairs` is a restriction of the permutation `images`.
pub fn restricts(pairs: &[(u32, u32)], images: &[u32]) -> bool {
    pairs.iter().all(|&(a, b)| images[a as usize - 1] == b)
}
