//! Finite monoids of partial permutations built by generator closure.

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::Serialize;

use crate::error::MonoidError;
use crate::iperm::{half_index, named_generator, Generator, PartialPerm};

/// Default element cap for [`closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 10_000_000;

/// A finite monoid of partial permutations with both Cayley tables.
///
/// Element 0 is the identity. Elements are listed in breadth-first order
/// from the identity, trying generators in the given order.
#[derive(Clone, Debug)]
pub struct FiniteMonoid {
    degree: u32,
    elements: Vec<PartialPerm>,
    index: HashMap<PartialPerm, usize>,
    generators: Vec<usize>,
    right: Vec<u32>,
    left: Vec<u32>,
}

impl FiniteMonoid {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[PartialPerm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &PartialPerm {
        &self.elements[i]
    }

    /// Element indices of the generators, in the order they were given.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn index_of(&self, f: &PartialPerm) -> Option<usize> {
        self.index.get(f).copied()
    }

    pub fn contains(&self, f: &PartialPerm) -> bool {
        self.index.contains_key(f)
    }

    /// Index of `element * generator[gen]`.
    pub fn right(&self, element: usize, gen: usize) -> usize {
        self.right[element * self.generators.len() + gen] as usize
    }

    /// Index of `generator[gen] * element`.
    pub fn left(&self, element: usize, gen: usize) -> usize {
        self.left[element * self.generators.len() + gen] as usize
    }

    /// Whether `self` and `other` have the same element set.
    pub fn same_elements(&self, other: &FiniteMonoid) -> bool {
        self.degree == other.degree
            && self.size() == other.size()
            && other.elements.iter().all(|f| self.contains(f))
    }

    /// Whether every element of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &FiniteMonoid) -> bool {
        self.elements.iter().all(|f| other.contains(f))
    }

    /// All elements whose image has `rank` points.
    pub fn elements_of_rank(&self, rank: usize) -> Result<Vec<usize>, MonoidError> {
        if rank > self.degree as usize {
            return Err(MonoidError::RankOutOfRange {
                rank,
                degree: self.degree,
            });
        }
        Ok((0..self.size())
            .filter(|&i| self.elements[i].rank() == rank)
            .collect())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let k = self.generators.len();
        let rows = |table: &[u32]| -> Vec<Vec<u32>> {
            table.chunks(k.max(1)).map(|c| c.to_vec()).collect()
        };
        let (right, left) = if k == 0 {
            (vec![Vec::new(); self.size()], vec![Vec::new(); self.size()])
        } else {
            (rows(&self.right), rows(&self.left))
        };
        serde_json::to_value(MonoidJson {
            degree: self.degree,
            elements: &self.elements,
            generators: &self.generators,
            right_cayley: right,
            left_cayley: left,
        })
        .expect("monoid serializes")
    }

    /// Right Cayley graph in Graphviz DOT.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph right_cayley {\n");
        for (i, f) in self.elements.iter().enumerate() {
            let _ = writeln!(out, "  {i} [label=\"{f}\"];");
        }
        for i in 0..self.size() {
            for j in 0..self.generators.len() {
                let _ = writeln!(out, "  {i} -> {} [label=\"{j}\"];", self.right(i, j));
            }
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Serialize)]
struct MonoidJson<'a> {
    degree: u32,
    elements: &'a [PartialPerm],
    generators: &'a [usize],
    right_cayley: Vec<Vec<u32>>,
    left_cayley: Vec<Vec<u32>>,
}

/// [`closure_with_cap`] with the default cap.
pub fn closure(degree: u32, gens: &[PartialPerm]) -> Result<FiniteMonoid, MonoidError> {
    closure_with_cap(degree, gens, DEFAULT_CLOSURE_CAP)
}

/// The submonoid generated by `gens`, found breadth-first from the identity.
pub fn closure_with_cap(
    degree: u32,
    gens: &[PartialPerm],
    cap: usize,
) -> Result<FiniteMonoid, MonoidError> {
    for g in gens {
        if g.degree() != degree {
            return Err(crate::error::PermError::DegreeMismatch(degree, g.degree()).into());
        }
    }
    let k = gens.len();
    let id = PartialPerm::identity(degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0usize)]);
    let mut right: Vec<u32> = Vec::new();
    let mut next = 0;
    while next < elements.len() {
        for g in gens {
            let prod = elements[next].then(g);
            let j = match index.get(&prod) {
                Some(&j) => j,
                None => {
                    if elements.len() >= cap {
                        return Err(MonoidError::Capped { cap });
                    }
                    let j = elements.len();
                    index.insert(prod.clone(), j);
                    elements.push(prod);
                    j
                }
            };
            right.push(j as u32);
        }
        next += 1;
    }
    let mut left = Vec::with_capacity(elements.len() * k);
    for f in &elements {
        for g in gens {
            left.push(index[&g.then(f)] as u32);
        }
    }
    let generators = gens.iter().map(|g| index[g]).collect();
    Ok(FiniteMonoid {
        degree,
        elements,
        index,
        generators,
        right,
        left,
    })
}

/// Whether `gens` generate exactly the element set of `m`.
pub fn verify_generates(m: &FiniteMonoid, gens: &[PartialPerm]) -> Result<bool, MonoidError> {
    if gens.iter().any(|g| !m.contains(g)) {
        return Ok(false);
    }
    // Closure of a subset of m stays inside m, so the size decides.
    let c = closure_with_cap(m.degree(), gens, m.size() + 1)?;
    Ok(c.size() == m.size())
}

/// The monoid families handled by the workbench.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonoidFamily {
    DI,
    ODI,
    MDI,
    OPDI,
    CI,
    OCI,
    DihedralGroup,
    CyclicGroup,
}

impl MonoidFamily {
    pub const ALL: [MonoidFamily; 8] = [
        MonoidFamily::DI,
        MonoidFamily::ODI,
        MonoidFamily::MDI,
        MonoidFamily::OPDI,
        MonoidFamily::CI,
        MonoidFamily::OCI,
        MonoidFamily::DihedralGroup,
        MonoidFamily::CyclicGroup,
    ];

    pub fn min_degree(self) -> u32 {
        match self {
            MonoidFamily::ODI | MonoidFamily::MDI | MonoidFamily::OPDI => 4,
            MonoidFamily::DI | MonoidFamily::DihedralGroup => 3,
            MonoidFamily::CI | MonoidFamily::OCI | MonoidFamily::CyclicGroup => 1,
        }
    }

    /// The generating set used to build the family in degree `n`.
    pub fn generators(self, n: u32) -> Result<Vec<PartialPerm>, MonoidError> {
        if n < self.min_degree() {
            return Err(MonoidError::DegreeTooSmall {
                family: self.to_string(),
                n,
                min: self.min_degree(),
            });
        }
        let k = half_index(n);
        let p = n.div_ceil(2);
        let mut kinds = Vec::new();
        match self {
            MonoidFamily::ODI => {
                kinds.extend([Generator::X, Generator::Y]);
                kinds.extend((2..n).map(Generator::E));
                kinds.extend((1..=k).map(Generator::XI));
                kinds.extend((1..=k).map(Generator::YI));
            }
            MonoidFamily::MDI => {
                kinds.extend([Generator::H, Generator::X]);
                kinds.extend((2..=p).map(Generator::E));
                kinds.extend((1..=k).map(Generator::XI));
                kinds.extend((1..=k).map(Generator::YI));
            }
            MonoidFamily::OPDI => {
                kinds.extend([Generator::G, Generator::E(1)]);
                kinds.extend((1..=k).map(Generator::XI));
            }
            MonoidFamily::DI => kinds.extend([Generator::G, Generator::H, Generator::E(1)]),
            MonoidFamily::CI => kinds.extend([Generator::G, Generator::E(1)]),
            MonoidFamily::OCI => {
                kinds.extend([Generator::X, Generator::Y]);
                kinds.extend((1..=n).map(Generator::E));
            }
            MonoidFamily::DihedralGroup => kinds.extend([Generator::G, Generator::H]),
            MonoidFamily::CyclicGroup => kinds.push(Generator::G),
        }
        Ok(kinds
            .into_iter()
            .map(|kind| named_generator(kind, n))
            .collect::<Result<_, _>>()?)
    }

    /// The defining membership test of the family, independent of any
    /// generating set.
    pub fn defining_predicate(self, f: &PartialPerm) -> bool {
        let n = f.degree();
        let g = match named_generator(Generator::G, n) {
            Ok(g) => g,
            Err(_) => return false,
        };
        let rotations: Vec<PartialPerm> = (0..n as usize).map(|k| g.pow(k)).collect();
        let in_cyclic = || {
            rotations
                .iter()
                .any(|r| f.is_restriction_of(r).unwrap_or(false))
        };
        let in_dihedral = || {
            in_cyclic()
                || named_generator(Generator::H, n).is_ok_and(|h| {
                    rotations
                        .iter()
                        .any(|r| f.is_restriction_of(&h.then(r)).unwrap_or(false))
                })
        };
        match self {
            MonoidFamily::DI => in_dihedral(),
            MonoidFamily::ODI => f.is_order_preserving() && in_dihedral(),
            MonoidFamily::MDI => f.is_monotone() && in_dihedral(),
            MonoidFamily::OPDI => f.is_orientation_preserving() && in_dihedral(),
            MonoidFamily::CI => in_cyclic(),
            MonoidFamily::OCI => f.is_order_preserving() && in_cyclic(),
            MonoidFamily::DihedralGroup => f.is_total() && in_dihedral(),
            MonoidFamily::CyclicGroup => f.is_total() && in_cyclic(),
        }
    }
}

impl fmt::Display for MonoidFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MonoidFamily::DI => "DI",
            MonoidFamily::ODI => "ODI",
            MonoidFamily::MDI => "MDI",
            MonoidFamily::OPDI => "OPDI",
            MonoidFamily::CI => "CI",
            MonoidFamily::OCI => "OCI",
            MonoidFamily::DihedralGroup => "Dihedral",
            MonoidFamily::CyclicGroup => "Cyclic",
        };
        f.write_str(s)
    }
}

impl FromStr for MonoidFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "di" => Ok(MonoidFamily::DI),
            "odi" => Ok(MonoidFamily::ODI),
            "mdi" => Ok(MonoidFamily::MDI),
            "opdi" => Ok(MonoidFamily::OPDI),
            "ci" => Ok(MonoidFamily::CI),
            "oci" => Ok(MonoidFamily::OCI),
            "dihedral" | "dihedralgroup" => Ok(MonoidFamily::DihedralGroup),
            "cyclic" | "cyclicgroup" => Ok(MonoidFamily::CyclicGroup),
            _ => Err(format!("unknown monoid family {s:?}")),
        }
    }
}

/// Closure of the family's generating set in degree `n`.
pub fn build_named(family: MonoidFamily, n: u32) -> Result<FiniteMonoid, MonoidError> {
    closure(n, &family.generators(n)?)
}

/// Closed-form size of ODI, MDI or OCI.
pub fn cardinality_formula(family: MonoidFamily, n: u32) -> Result<u64, MonoidError> {
    let min = match family {
        MonoidFamily::ODI | MonoidFamily::MDI => 4,
        MonoidFamily::OCI => 1,
        _ => {
            return Err(MonoidError::NoFormula {
                family: family.to_string(),
                what: "cardinality",
            })
        }
    };
    if n < min {
        return Err(MonoidError::DegreeTooSmall {
            family: family.to_string(),
            n,
            min,
        });
    }
    let n = n as i128;
    let sign: i128 = if n % 2 == 0 { 1 } else { -1 };
    let pow2 = 1i128 << n;
    // Scaled by 24 so every fractional term is integral.
    let scaled = match family {
        MonoidFamily::ODI => {
            24 * 3 * pow2 + 4 * (n + 1) * n * (n - 1) - 3 * (1 + sign) * n * n - 24 * (2 * n + 2)
        }
        MonoidFamily::MDI => {
            24 * 3 * 2 * pow2 + 8 * (n + 1) * n * (n - 1)
                - 6 * (5 + sign) * n * n
                - 24 * (4 * n + 5)
        }
        _ => 24 * (3 * pow2 - 2 * n - 2),
    };
    debug_assert_eq!(scaled % 24, 0);
    Ok((scaled / 24) as u64)
}

/// Rank (minimum generating-set size) of ODI, MDI or OPDI.
pub fn rank_formula(family: MonoidFamily, n: u32) -> Result<u32, MonoidError> {
    if !matches!(
        family,
        MonoidFamily::ODI | MonoidFamily::MDI | MonoidFamily::OPDI
    ) {
        return Err(MonoidError::NoFormula {
            family: family.to_string(),
            what: "rank",
        });
    }
    if n < 4 {
        return Err(MonoidError::DegreeTooSmall {
            family: family.to_string(),
            n,
            min: 4,
        });
    }
    let k = half_index(n);
    Ok(match family {
        MonoidFamily::ODI => n + 2 * k,
        MonoidFamily::MDI => 2 + 3 * k,
        _ => 2 + k,
    })
}

/// A partition of element indices into classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    /// Classes sorted by least member; members ascending.
    pub classes: Vec<Vec<usize>>,
    /// Class index of each element.
    pub class_of: Vec<usize>,
}

impl Partition {
    fn from_sccs(size: usize, sccs: Vec<Vec<usize>>) -> Self {
        let mut classes: Vec<Vec<usize>> = sccs
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        classes.sort_unstable_by_key(|c| c[0]);
        let mut class_of = vec![0; size];
        for (k, c) in classes.iter().enumerate() {
            for &e in c {
                class_of[e] = k;
            }
        }
        Partition { classes, class_of }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn class_containing(&self, element: usize) -> &[usize] {
        &self.classes[self.class_of[element]]
    }
}

/// Green's relations of a finite monoid. `d` is also the J-relation.
#[derive(Clone, Debug)]
pub struct GreenClasses {
    pub r: Partition,
    pub l: Partition,
    pub h: Partition,
    pub d: Partition,
}

impl GreenClasses {
    /// The H-class of the identity.
    pub fn group_of_units(&self) -> &[usize] {
        self.h.class_containing(0)
    }
}

pub fn green_classes(m: &FiniteMonoid) -> GreenClasses {
    let size = m.size();
    let k = m.generators().len();
    let scc = |right: bool, left: bool| {
        let mut graph = DiGraph::<(), ()>::with_capacity(size, size * k * 2);
        for _ in 0..size {
            graph.add_node(());
        }
        for e in 0..size {
            for j in 0..k {
                if right {
                    graph.add_edge(NodeIndex::new(e), NodeIndex::new(m.right(e, j)), ());
                }
                if left {
                    graph.add_edge(NodeIndex::new(e), NodeIndex::new(m.left(e, j)), ());
                }
            }
        }
        let sccs = tarjan_scc(&graph)
            .into_iter()
            .map(|c| c.into_iter().map(|v| v.index()).collect())
            .collect();
        Partition::from_sccs(size, sccs)
    };
    let r = scc(true, false);
    let l = scc(false, true);
    let d = scc(true, true);
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for e in 0..size {
        by_pair
            .entry((r.class_of[e], l.class_of[e]))
            .or_default()
            .push(e);
    }
    let h = Partition::from_sccs(size, by_pair.into_values().collect());
    GreenClasses { r, l, h, d }
}
