mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use dimon_core::congruence::{enumerate, EnumerationCaps, EnumerationResult};
use dimon_core::iperm::PartialPerm;
use dimon_core::monoid::{build_named, closure, verify_generates, MonoidFamily};
use dimon_core::presentation::{
    build_assignment, build_relations, evaluate, odi_rank_two_forms, Presentation,
    RelationFamilyId, Word,
};

fn partial_perm(degree: u32) -> impl Strategy<Value = PartialPerm> {
    (
        Just(degree),
        Just((1..=degree).collect::<Vec<_>>()).prop_shuffle(),
        proptest::collection::vec(any::<bool>(), degree as usize),
    )
        .prop_map(|(n, images, keep)| {
            let pairs = (1..=n)
                .filter(|p| keep[*p as usize - 1])
                .map(|p| (p, images[p as usize - 1]));
            PartialPerm::from_pairs(n, pairs).unwrap()
        })
}

fn triple() -> impl Strategy<Value = (PartialPerm, PartialPerm, PartialPerm)> {
    (1u32..=7).prop_flat_map(|n| (partial_perm(n), partial_perm(n), partial_perm(n)))
}

proptest! {
    #[test]
    fn composition_is_associative((a, b, c) in triple()) {
        prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        prop_assert_eq!(a.compose(&b).unwrap(), a.then(&b));
    }

    #[test]
    fn inverse_laws((a, b, _) in triple()) {
        let inv = a.inverse();
        prop_assert_eq!(a.then(&inv).then(&a), a.clone());
        prop_assert_eq!(inv.then(&a).then(&inv), inv.clone());
        prop_assert_eq!(
            a.then(&inv),
            PartialPerm::partial_identity(a.degree(), a.domain()).unwrap()
        );
        prop_assert_eq!(a.then(&b).inverse(), b.inverse().then(&inv));
    }

    #[test]
    fn evaluation_is_a_homomorphism(
        u in proptest::collection::vec(0usize..11, 0..12),
        v in proptest::collection::vec(0usize..11, 0..12),
    ) {
        let phi = build_assignment(RelationFamilyId::R, 5).unwrap();
        let uv: Vec<usize> = u.iter().chain(&v).copied().collect();
        prop_assert_eq!(evaluate(&uv, &phi), evaluate(&u, &phi).then(&evaluate(&v, &phi)));
    }
}

fn complete(p: &Presentation) -> EnumerationResult {
    let r = enumerate(p, EnumerationCaps::default());
    assert!(r.is_complete(), "{} capped", p.label);
    r
}

#[test]
fn built_families_match_brute_force() {
    for n in 4..=6 {
        for fam in MonoidFamily::ALL {
            let built = common::element_pairs(&build_named(fam, n).unwrap());
            assert_eq!(built, common::family_elements(fam, n), "{fam}_{n}");
        }
    }
    assert_eq!(common::family_size(MonoidFamily::OPDI, 4), 77);
    assert_eq!(common::family_size(MonoidFamily::OPDI, 5), 206);
    assert_eq!(common::family_size(MonoidFamily::CI, 4), 61);
}

#[test]
fn every_element_satisfies_its_predicate() {
    for n in 4..=6 {
        for fam in MonoidFamily::ALL {
            let m = build_named(fam, n).unwrap();
            assert!(
                m.elements().iter().all(|f| fam.defining_predicate(f)),
                "{fam}_{n}"
            );
        }
    }
}

#[test]
fn opdi_splits_into_ci_and_rank_two_words() {
    for n in 4..=7u32 {
        let k = ((n - 1) / 2) as usize;
        let opdi = build_named(MonoidFamily::OPDI, n).unwrap().size();
        let ci = build_named(MonoidFamily::CI, n).unwrap().size();
        assert_eq!(opdi, ci + (n * n) as usize * k, "n={n}");
    }
}

#[test]
fn closure_is_idempotent() {
    for fam in [MonoidFamily::ODI, MonoidFamily::MDI, MonoidFamily::OPDI] {
        let m = build_named(fam, 5).unwrap();
        let again = closure(5, m.elements()).unwrap();
        assert!(again.same_elements(&m));
        assert!(verify_generates(&m, m.elements()).unwrap());
    }
}

#[test]
fn rank_two_forms_hit_the_off_rotation_elements() {
    for n in 4..=6 {
        let phi = build_assignment(RelationFamilyId::R, n).unwrap();
        let words = odi_rank_two_forms(n).unwrap();
        let images: BTreeSet<common::Pairs> = words
            .iter()
            .map(|w| common::pairs_of(&evaluate(w, &phi)))
            .collect();
        assert_eq!(images.len(), words.len(), "injective at n={n}");
        let dihedral = common::dihedral(n);
        let expected: BTreeSet<common::Pairs> = common::family_elements(MonoidFamily::ODI, n)
            .into_iter()
            .filter(|p| p.len() == 2)
            .filter(|p| {
                let under = |rot: bool| {
                    dihedral
                        .iter()
                        .any(|(perm, r)| *r == rot && common::restricts(p, perm))
                };
                under(false) && !under(true)
            })
            .collect();
        assert_eq!(images, expected, "n={n}");
    }
}

#[test]
fn soundness_and_lower_bound() {
    for n in 4..=5 {
        for fam in RelationFamilyId::ALL {
            let p = build_relations(fam, n).unwrap();
            let r = complete(&p);
            for rel in &p.relations {
                assert_eq!(
                    r.word_class(&rel.lhs).unwrap(),
                    r.word_class(&rel.rhs).unwrap(),
                    "{} {}",
                    p.label,
                    rel.tag
                );
            }
            let m = build_named(fam.target(), n).unwrap();
            assert!(r.class_count().unwrap() >= m.size(), "{}", p.label);
        }
    }
}

#[test]
fn classes_determine_images() {
    let mut rng = StdRng::seed_from_u64(7);
    for fam in RelationFamilyId::ALL {
        let p = build_relations(fam, 5).unwrap();
        let a = build_assignment(fam, 5).unwrap();
        let r = complete(&p);
        let k = p.alphabet.len();
        for _ in 0..300 {
            let len = rng.gen_range(0..16);
            let w: Vec<usize> = (0..len).map(|_| rng.gen_range(0..k)).collect();
            let nf = r.normal_form(r.word_class(&w).unwrap()).unwrap();
            assert_eq!(evaluate(&w, &a), evaluate(&nf, &a), "{}", p.label);
        }
    }
}

#[test]
fn enumeration_is_deterministic() {
    for fam in [RelationFamilyId::VbarPrime, RelationFamilyId::QPrime] {
        let p = build_relations(fam, 5).unwrap();
        let (a, b) = (complete(&p), complete(&p));
        assert_eq!(a.table_json(), b.table_json());
        let forms = |r: &EnumerationResult| -> Vec<Word> {
            (0..r.class_count().unwrap())
                .map(|c| r.normal_form(c).unwrap())
                .collect()
        };
        assert_eq!(forms(&a), forms(&b));
    }
}

#[test]
fn deleting_a_relation_never_undercounts() {
    let p = build_relations(RelationFamilyId::QPrime, 4).unwrap();
    let full = complete(&p).class_count().unwrap();
    assert_eq!(full, 77);
    let caps = EnumerationCaps {
        max_classes: 50_000,
        max_steps: 20_000_000,
    };
    for i in 0..p.relations.len() {
        let mut q = p.clone();
        let removed = q.relations.remove(i);
        let r = enumerate(&q, caps);
        if let Some(c) = r.class_count() {
            assert!(c >= full, "dropping {} gave {c}", removed.tag);
        }
    }
}
