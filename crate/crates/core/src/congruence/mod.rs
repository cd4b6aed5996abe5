//! Enumeration of the congruence `ρ_R` on `A*` generated by a presentation's
//! relations, and the checks built on it: word problem, consequences,
//! presentation verification and forms-set validation.

mod engine;

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::error::CongruenceError;
use crate::monoid::{closure, FiniteMonoid};
use crate::presentation::{
    check_relations_hold, evaluate, Alphabet, Assignment, FormsSet, Presentation, Relation,
    RelationReport, Word,
};

/// Limits on an enumeration. Exceeding either yields a capped result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationCaps {
    /// Bound on simultaneously live table rows.
    pub max_classes: usize,
    /// Bound on relation scans plus row definitions.
    pub max_steps: u64,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        EnumerationCaps {
            max_classes: 1_000_000,
            max_steps: 100_000_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Complete,
    Capped,
}

/// What stopped a capped enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CapReport {
    pub max_classes: usize,
    pub max_steps: u64,
    pub live_rows: usize,
    pub steps: u64,
    pub steps_exhausted: bool,
}

#[derive(Clone, Debug)]
enum Outcome {
    Complete {
        class_count: usize,
        table: Vec<u32>,
        tree: Vec<Option<(u32, u32)>>,
    },
    Capped(CapReport),
}

/// Result of [`enumerate`]. When complete, classes are numbered densely in
/// breadth-first order from the class of the empty word, which is class 0.
#[derive(Clone, Debug)]
pub struct EnumerationResult {
    alphabet: Alphabet,
    outcome: Outcome,
    steps: u64,
    rows_defined: u64,
}

impl EnumerationResult {
    pub fn status(&self) -> Status {
        match self.outcome {
            Outcome::Complete { .. } => Status::Complete,
            Outcome::Capped(_) => Status::Capped,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.status() == Status::Complete
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn class_count(&self) -> Option<usize> {
        match self.outcome {
            Outcome::Complete { class_count, .. } => Some(class_count),
            Outcome::Capped(_) => None,
        }
    }

    pub fn cap_report(&self) -> Option<&CapReport> {
        match &self.outcome {
            Outcome::Capped(r) => Some(r),
            Outcome::Complete { .. } => None,
        }
    }

    /// Relation scans plus row definitions performed.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// Table rows ever created, including those later merged away.
    pub fn rows_defined(&self) -> u64 {
        self.rows_defined
    }

    /// Class reached from `class` by appending `letter`.
    pub fn act(&self, class: usize, letter: usize) -> Result<usize, CongruenceError> {
        match &self.outcome {
            Outcome::Complete { table, .. } => {
                let k = self.alphabet.len();
                if letter >= k {
                    return Err(CongruenceError::BadLetter(letter));
                }
                Ok(table[class * k + letter] as usize)
            }
            Outcome::Capped(_) => Err(CongruenceError::Indeterminate),
        }
    }

    /// Class of `w`, replaying its letters from class 0.
    pub fn word_class(&self, w: &[usize]) -> Result<usize, CongruenceError> {
        w.iter().try_fold(0, |c, &a| self.act(c, a))
    }

    /// Shortlex-least word of `class` under the alphabet order.
    pub fn normal_form(&self, class: usize) -> Result<Word, CongruenceError> {
        let Outcome::Complete { tree, .. } = &self.outcome else {
            return Err(CongruenceError::Indeterminate);
        };
        let mut letters = Vec::new();
        let mut c = class;
        while let Some((parent, letter)) = tree[c] {
            letters.push(letter as usize);
            c = parent as usize;
        }
        letters.reverse();
        Ok(Word(letters))
    }

    /// `{"status":"complete","classes":44}` or
    /// `{"status":"capped","max_classes":...,...}`.
    pub fn status_json(&self) -> serde_json::Value {
        match &self.outcome {
            Outcome::Complete { class_count, .. } => serde_json::json!({
                "status": "complete",
                "classes": class_count,
            }),
            Outcome::Capped(r) => serde_json::json!({
                "status": "capped",
                "max_classes": r.max_classes,
                "max_steps": r.max_steps,
                "live_rows": r.live_rows,
                "steps": r.steps,
            }),
        }
    }

    /// Full class table, one row of targets per class, for debugging.
    pub fn table_json(&self) -> Option<serde_json::Value> {
        let Outcome::Complete { table, .. } = &self.outcome else {
            return None;
        };
        let k = self.alphabet.len().max(1);
        let rows: Vec<&[u32]> = if self.alphabet.is_empty() {
            vec![&[]]
        } else {
            table.chunks(k).collect()
        };
        Some(serde_json::json!({
            "letters": self.alphabet.names(),
            "rows": rows,
        }))
    }
}

/// Enumerates the classes of `A*/ρ_R` for the presentation `p`.
pub fn enumerate(p: &Presentation, caps: EnumerationCaps) -> EnumerationResult {
    let relations: Vec<(Vec<usize>, Vec<usize>)> = p
        .relations
        .iter()
        .map(|r| (r.lhs.0.clone(), r.rhs.0.clone()))
        .collect();
    let limits = engine::Limits {
        max_classes: caps.max_classes,
        max_steps: caps.max_steps,
    };
    let (outcome, steps, rows_defined) = match engine::run(p.alphabet.len(), &relations, limits) {
        engine::Outcome::Complete(c) => (
            Outcome::Complete {
                class_count: c.class_count,
                table: c.table,
                tree: c.tree,
            },
            c.steps,
            c.nodes_defined,
        ),
        engine::Outcome::Capped {
            live,
            steps,
            steps_exhausted,
        } => (
            Outcome::Capped(CapReport {
                max_classes: caps.max_classes,
                max_steps: caps.max_steps,
                live_rows: live,
                steps,
                steps_exhausted,
            }),
            steps,
            0,
        ),
    };
    EnumerationResult {
        alphabet: p.alphabet.clone(),
        outcome,
        steps,
        rows_defined,
    }
}

pub fn word_class(r: &EnumerationResult, w: &[usize]) -> Result<usize, CongruenceError> {
    r.word_class(w)
}

/// Whether `rel` lies in `ρ_R`.
pub fn is_consequence(
    p: &Presentation,
    rel: &Relation,
    caps: EnumerationCaps,
) -> Result<bool, CongruenceError> {
    let r = enumerate(p, caps);
    Ok(r.word_class(&rel.lhs)? == r.word_class(&rel.rhs)?)
}

/// One shortlex-least word per class.
pub fn normal_forms(r: &EnumerationResult) -> Result<FormsSet, CongruenceError> {
    let count = r.class_count().ok_or(CongruenceError::Indeterminate)?;
    let words = (0..count)
        .map(|c| r.normal_form(c))
        .collect::<Result<_, _>>()?;
    Ok(FormsSet {
        alphabet: r.alphabet.clone(),
        words,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Indeterminate => "INDETERMINATE",
        })
    }
}

/// Outcome of [`verify_presentation`].
#[derive(Clone, Debug)]
pub struct PresentationReport {
    pub verdict: Verdict,
    pub relations: RelationReport,
    pub enumeration: EnumerationResult,
    pub monoid_size: usize,
}

impl PresentationReport {
    pub fn class_count(&self) -> Option<usize> {
        self.enumeration.class_count()
    }
}

fn check_alphabets(p: &Alphabet, other: &Alphabet, what: &str) -> Result<(), CongruenceError> {
    if p == other {
        Ok(())
    } else {
        Err(CongruenceError::AlphabetMismatch(format!(
            "presentation {:?} vs {what} {:?}",
            p.names(),
            other.names()
        )))
    }
}

fn check_generates(a: &Assignment, m: &FiniteMonoid) -> Result<(), CongruenceError> {
    let c = closure(a.degree, a.images())?;
    if c.same_elements(m) {
        Ok(())
    } else {
        Err(CongruenceError::NotGenerating {
            closure: c.size(),
            monoid: m.size(),
        })
    }
}

/// PASS iff the relations hold under `a` and the number of classes equals
/// `|m|`. The images of `a` must generate `m`.
pub fn verify_presentation(
    p: &Presentation,
    a: &Assignment,
    m: &FiniteMonoid,
    caps: EnumerationCaps,
) -> Result<PresentationReport, CongruenceError> {
    check_alphabets(&p.alphabet, &a.alphabet, "assignment")?;
    check_generates(a, m)?;
    let relations =
        check_relations_hold(p, a).map_err(|e| CongruenceError::AlphabetMismatch(e.to_string()))?;
    let enumeration = enumerate(p, caps);
    let verdict = match enumeration.class_count() {
        _ if !relations.all_hold() => Verdict::Fail,
        None => Verdict::Indeterminate,
        Some(c) if c == m.size() => Verdict::Pass,
        Some(_) => Verdict::Fail,
    };
    Ok(PresentationReport {
        verdict,
        relations,
        enumeration,
        monoid_size: m.size(),
    })
}

/// Outcome of [`verify_forms_set`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormsReport {
    pub verdict: Verdict,
    pub forms: usize,
    pub distinct_classes: usize,
    pub class_count: Option<usize>,
    pub distinct_images: usize,
    pub images_in_monoid: bool,
    pub monoid_size: usize,
}

/// PASS iff the forms lie in pairwise distinct classes, there are as many
/// forms as classes and as elements of `m`, and evaluation maps the forms
/// bijectively onto `m`.
pub fn verify_forms_set(
    p: &Presentation,
    forms: &FormsSet,
    a: &Assignment,
    m: &FiniteMonoid,
    caps: EnumerationCaps,
) -> Result<FormsReport, CongruenceError> {
    check_alphabets(&p.alphabet, &forms.alphabet, "forms")?;
    check_alphabets(&p.alphabet, &a.alphabet, "assignment")?;
    let r = enumerate(p, caps);
    let mut report = FormsReport {
        verdict: Verdict::Indeterminate,
        forms: forms.words.len(),
        distinct_classes: 0,
        class_count: r.class_count(),
        distinct_images: 0,
        images_in_monoid: true,
        monoid_size: m.size(),
    };
    let mut images = HashSet::new();
    for w in &forms.words {
        let f = evaluate(w, a);
        report.images_in_monoid &= m.contains(&f);
        images.insert(f);
    }
    report.distinct_images = images.len();
    let Some(count) = r.class_count() else {
        return Ok(report);
    };
    let classes: HashSet<usize> = forms
        .words
        .iter()
        .map(|w| r.word_class(w))
        .collect::<Result<_, _>>()?;
    report.distinct_classes = classes.len();
    let n = forms.words.len();
    report.verdict = if report.distinct_classes == n
        && count == n
        && m.size() == n
        && report.distinct_images == n
        && report.images_in_monoid
    {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iperm::{named_generator, Generator};
    use crate::monoid::{build_named, MonoidFamily};
    use crate::presentation::{build_assignment, build_relations, RelationFamilyId};

    fn idempotent() -> Presentation {
        let alphabet = Alphabet::new(["a"]).unwrap();
        Presentation::new(
            "a2=a",
            alphabet,
            vec![Relation::new(Word(vec![0, 0]), Word(vec![0]), "idem")],
        )
        .unwrap()
    }

    #[test]
    fn idempotent_has_two_classes() {
        let r = enumerate(&idempotent(), EnumerationCaps::default());
        assert_eq!(r.class_count(), Some(2));
        assert_eq!(r.word_class(&[]).unwrap(), 0);
        assert_eq!(r.word_class(&[0, 0, 0]).unwrap(), 1);
        let nf = normal_forms(&r).unwrap();
        assert_eq!(nf.words, vec![Word(vec![]), Word(vec![0])]);
    }

    #[test]
    fn idempotent_is_not_trivial() {
        let rel = Relation::new(Word(vec![0]), Word(vec![]), "a=1");
        assert!(!is_consequence(&idempotent(), &rel, EnumerationCaps::default()).unwrap());
    }

    #[test]
    fn free_monoid_on_one_letter_caps() {
        let p = Presentation::new("free", Alphabet::new(["a"]).unwrap(), vec![]).unwrap();
        let caps = EnumerationCaps {
            max_classes: 1000,
            max_steps: 1_000_000,
        };
        let r = enumerate(&p, caps);
        assert_eq!(r.status(), Status::Capped);
        assert!(r.word_class(&[0]).is_err());
        assert_eq!(r.status_json()["status"], "capped");
    }

    #[test]
    fn empty_alphabet_is_trivial() {
        let p = Presentation::new("trivial", Alphabet::default(), vec![]).unwrap();
        let r = enumerate(&p, EnumerationCaps::default());
        assert_eq!(r.class_count(), Some(1));
    }

    #[test]
    fn cyclic_group_of_order_five() {
        let alphabet = Alphabet::new(["g"]).unwrap();
        let p = Presentation::new(
            "C5",
            alphabet,
            vec![Relation::new(Word(vec![0; 5]), Word(vec![]), "g^5")],
        )
        .unwrap();
        let r = enumerate(&p, EnumerationCaps::default());
        assert_eq!(r.class_count(), Some(5));
        assert_eq!(r.word_class(&[0; 7]).unwrap(), 2);
    }

    #[test]
    fn r4_word_problem() {
        let p = build_relations(RelationFamilyId::R, 4).unwrap();
        let r = enumerate(&p, EnumerationCaps::default());
        assert_eq!(r.class_count(), Some(44));
        let w = |s: &str| p.alphabet.parse_word(s).unwrap();
        assert_eq!(
            r.word_class(&w("x y")).unwrap(),
            r.word_class(&w("e_4")).unwrap()
        );
        assert_eq!(
            r.word_class(&w("y x")).unwrap(),
            r.word_class(&w("e_1")).unwrap()
        );
        assert_eq!(
            r.status_json(),
            serde_json::json!({"status": "complete", "classes": 44})
        );
    }

    #[test]
    fn verify_r4_passes_and_mutant_fails() {
        let p = build_relations(RelationFamilyId::R, 4).unwrap();
        let a = build_assignment(RelationFamilyId::R, 4).unwrap();
        let m = build_named(MonoidFamily::ODI, 4).unwrap();
        let report = verify_presentation(&p, &a, &m, EnumerationCaps::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        assert_eq!(report.class_count(), Some(44));

        let mut mutant = p.clone();
        mutant.relations.retain(|r| r.tag != "R_11");
        let caps = EnumerationCaps {
            max_classes: 20_000,
            max_steps: 5_000_000,
        };
        let report = verify_presentation(&mutant, &a, &m, caps).unwrap();
        assert_ne!(report.verdict, Verdict::Pass);
        if let Some(c) = report.class_count() {
            assert!(c > 44);
        }
    }

    #[test]
    fn verify_needs_generation() {
        let p = build_relations(RelationFamilyId::Q0, 4).unwrap();
        let a = build_assignment(RelationFamilyId::Q0, 4).unwrap();
        let opdi = build_named(MonoidFamily::OPDI, 4).unwrap();
        assert!(matches!(
            verify_presentation(&p, &a, &opdi, EnumerationCaps::default()),
            Err(CongruenceError::NotGenerating {
                closure: 61,
                monoid: 77
            })
        ));
    }

    #[test]
    fn forms_for_idempotent() {
        let p = idempotent();
        let e1 = named_generator(Generator::E(1), 4).unwrap();
        let a = Assignment::new(p.alphabet.clone(), 4, vec![e1.clone()]).unwrap();
        let m = closure(4, &[e1]).unwrap();
        let forms = FormsSet {
            alphabet: p.alphabet.clone(),
            words: vec![Word(vec![]), Word(vec![0])],
        };
        let report = verify_forms_set(&p, &forms, &a, &m, EnumerationCaps::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Pass);
        let dup = FormsSet {
            alphabet: p.alphabet.clone(),
            words: vec![Word(vec![0]), Word(vec![0, 0])],
        };
        let report = verify_forms_set(&p, &dup, &a, &m, EnumerationCaps::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Fail);
    }

    #[test]
    fn resolver_is_deterministic() {
        let p = build_relations(RelationFamilyId::Q, 4).unwrap();
        let a = enumerate(&p, EnumerationCaps::default());
        let b = enumerate(&p, EnumerationCaps::default());
        assert_eq!(a.class_count(), Some(77));
        assert_eq!(a.table_json(), b.table_json());
        for c in 0..77 {
            assert_eq!(a.normal_form(c).unwrap(), b.normal_form(c).unwrap());
        }
    }

    #[test]
    fn normal_forms_resolve_to_their_classes() {
        let p = build_relations(RelationFamilyId::U, 4).unwrap();
        let r = enumerate(&p, EnumerationCaps::default());
        let nf = normal_forms(&r).unwrap();
        assert_eq!(nf.words.len(), 38);
        for (c, w) in nf.words.iter().enumerate() {
            assert_eq!(r.word_class(w).unwrap(), c);
        }
    }
}
