use dimon_core::congruence::{enumerate, is_consequence, EnumerationCaps};
use dimon_core::error::PresentationError;
use dimon_core::presentation::{
    add_relation, build_alphabet, build_extension_presentation, build_forms, build_relations,
    vbar_extension_parts, vbar_fixed_forms, Check, Presentation, Relation, RelationFamilyId,
};

use RelationFamilyId::*;

fn caps() -> EnumerationCaps {
    EnumerationCaps::default()
}

fn relation(p: &Presentation, lhs: &str, rhs: &str) -> Relation {
    Relation::new(
        p.alphabet.parse_word(lhs).unwrap(),
        p.alphabet.parse_word(rhs).unwrap(),
        "",
    )
}

#[test]
fn powers_and_shift_consequences() {
    let u = build_relations(U, 5).unwrap();
    assert!(is_consequence(&u, &relation(&u, "x x x e_2", "x x x"), caps()).unwrap());
    assert!(!is_consequence(&u, &relation(&u, "x e_2", "x"), caps()).unwrap());
    let q = build_relations(Q, 5).unwrap();
    assert!(is_consequence(&q, &relation(&q, "e_2 g g g", "g g g e_5"), caps()).unwrap());
    assert!(!is_consequence(&q, &relation(&q, "e_2 g g g", "g g g e_4"), caps()).unwrap());
}

#[test]
fn reflection_swaps_x_and_y_in_vbar() {
    let vbar = build_relations(Vbar, 4).unwrap();
    let extended =
        add_relation(&vbar, relation(&vbar, "h y", "x h"), Check::Checked(caps())).unwrap();
    assert_eq!(extended.relations.len(), 39);
    let bogus = relation(&vbar, "h y", "y h");
    assert!(matches!(
        add_relation(&vbar, bogus, Check::Checked(caps())),
        Err(PresentationError::NotAConsequence(_))
    ));
}

#[test]
fn extension_count_is_base_plus_parts() {
    for n in 4..=6 {
        let base = build_relations(V, n).unwrap();
        let (conj, u0) = vbar_extension_parts(n).unwrap();
        let p = build_extension_presentation(&base, "h", &conj, &u0).unwrap();
        assert_eq!(p.relations.len(), base.relations.len() + 1 + conj.len() + 1);
        assert_eq!(p.alphabet, build_alphabet(Vbar, n).unwrap());
    }
    assert_eq!(build_relations(Vbar, 4).unwrap().relations.len(), 38);
}

#[test]
fn forms_sizes_at_four() {
    let u = enumerate(&build_relations(U, 4).unwrap(), caps());
    assert_eq!(build_forms(R, 4, &u).unwrap().len(), 44);
    let v = enumerate(&build_relations(V, 4).unwrap(), caps());
    let b = build_alphabet(V, 4).unwrap();
    assert_eq!(vbar_fixed_forms(&b, 4).unwrap().len(), 17);
    let forms = build_forms(Vbar, 4, &v).unwrap();
    assert_eq!(forms.len(), 71);
    assert!(forms.words.iter().any(|w| w.is_empty()));
    let q0 = enumerate(&build_relations(Q0, 4).unwrap(), caps());
    assert_eq!(build_forms(Q, 4, &q0).unwrap().len(), 61 + 16);
}

#[test]
fn forms_need_the_matching_enumeration() {
    let v = enumerate(&build_relations(V, 4).unwrap(), caps());
    assert!(matches!(
        build_forms(R, 4, &v),
        Err(PresentationError::AlphabetMismatch(_))
    ));
    assert!(matches!(
        build_forms(QPrime, 4, &v),
        Err(PresentationError::NoForms(_))
    ));
    let tight = EnumerationCaps {
        max_classes: 5,
        max_steps: 1_000,
    };
    let capped = enumerate(&build_relations(U, 4).unwrap(), tight);
    assert!(matches!(
        build_forms(R, 4, &capped),
        Err(PresentationError::Forms(_))
    ));
}

#[test]
fn json_interchange_preserves_the_monoid() {
    let p = build_relations(VbarPrime, 5).unwrap();
    let q = Presentation::from_json(&p.to_json()).unwrap();
    assert_eq!(q, p);
    assert_eq!(enumerate(&q, caps()).class_count(), Some(182));
}

#[test]
fn small_degrees_are_rejected() {
    for f in RelationFamilyId::ALL {
        assert!(matches!(
            build_relations(f, 3),
            Err(PresentationError::DegreeTooSmall(3))
        ));
    }
}
